#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/stability.hpp"

namespace sgmm {

/// Stable set found by exhaustive enumeration, ordered by firm preference.
struct StableSetLattice {
  std::vector<GVector> elements;
  std::vector<std::vector<char>> less;  // less[i][j]: elements[i] below elements[j]
  std::vector<std::vector<std::size_t>> successors;  // covering relation
  std::size_t bottom = 0;
  std::size_t top = 0;

  std::size_t size() const { return elements.size(); }
  bool leq(std::size_t i, std::size_t j) const { return i == j || less[i][j]; }
  std::optional<std::size_t> index_of(const GVector& x) const;
};

/// Walks the whole capacity box. Throws CapExceeded above `cap` points.
StableSetLattice enumerate_stable(const Instance& inst, std::uint64_t cap = 10'000'000);

std::vector<GVector> immediate_successors(const StableSetLattice& lat, const GVector& x);

/// Least upper / greatest lower bounds from the order relation.
struct LatticeTables {
  std::vector<std::vector<std::size_t>> join;
  std::vector<std::vector<std::size_t>> meet;
};
LatticeTables lattice_tables(const StableSetLattice& lat);

struct LatticeAudit {
  bool lattice = true;          // bounds exist
  bool firm_join = true;        // join equals firm-wise C_f(x_f v y_f)
  bool firm_meet = true;        // meet equals firm-wise C_f(closure ^ closure)
  bool worker_join_is_meet = true;
  bool distributive = true;
  bool polarity = true;
  bool unisize = true;
  std::vector<std::string> failures;

  bool passes() const {
    return lattice && firm_join && firm_meet && worker_join_is_meet && distributive && polarity &&
           unisize;
  }
};
LatticeAudit lattice_audit(const Instance& inst, const StableSetLattice& lat);

/// Elements reachable from the bottom by maximal-weight steps.
StableSetLattice principal_sublattice(const StableSetLattice& lat);

struct Girdle {
  std::vector<std::size_t> ideal;  // prime ideal: elements below the link
  std::size_t ideal_max;
  std::size_t filter_min;
  std::vector<int> direction;  // sign pattern of the link
  int label;                   // how often this direction occurred along the chain
};

struct BirkhoffStructure {
  std::vector<std::size_t> chain;
  std::vector<Girdle> girdles;
  std::vector<std::vector<char>> precedes;  // by ideal maxima
  bool filter_order_agrees = true;          // same order by filter minima
};
BirkhoffStructure birkhoff_extract(const StableSetLattice& lat);

}  // namespace sgmm
