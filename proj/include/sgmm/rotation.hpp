#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgmm/instance.hpp"

namespace sgmm {

enum class TandemKind { legal_f, essential_w, quasi_essential_w };

/// A pair of edges sharing the pivot vertex. For legal_f: (add, drop) at a
/// firm. For the worker kinds: (drop, add) at a worker.
struct Tandem {
  TandemKind kind;
  EdgeId first;
  EdgeId second;
  VertexId pivot;
  friend bool operator==(const Tandem&, const Tandem&) = default;
};

/// Firm-side view of an acceptable x.
struct FirmScan {
  std::vector<char> plus;                      // interesting for its firm
  std::vector<char> minus;                     // x(e) > 0 and not interesting for its firm
  std::vector<std::optional<EdgeId>> drop_of;  // legal-pair partner of a plus edge
  std::vector<Tandem> legal_pairs;
};

/// Requires x stable.
FirmScan legal_f_pairs(const Instance& inst, const GVector& x);
/// Same scan without the stability precondition; x must be acceptable.
FirmScan scan_firms(const Instance& inst, const GVector& x);

/// The essential worker pair (c, a) for c in the minus set, or nullopt when
/// no legal pair starts at c. With `quasi`, candidates must also be
/// uninteresting for the worker at x.
std::optional<Tandem> essential_w_pair(const Instance& inst, const GVector& x, EdgeId c,
                                       const FirmScan& scan, bool quasi = false);

/// Cyclic sequence (a1, c1, a2, c2, ...) of alternating positive and
/// negative edges, rotated so the smallest positive edge comes first.
class Rotation {
 public:
  explicit Rotation(std::vector<EdgeId> cycle);

  std::span<const EdgeId> cycle() const { return cycle_; }
  std::size_t length() const { return cycle_.size(); }
  std::vector<EdgeId> positive() const;
  std::vector<EdgeId> negative() const;
  /// +1 on positive edges, -1 on negative ones.
  std::vector<int> incidence(std::size_t num_edges) const;
  std::string to_string() const;

  friend bool operator==(const Rotation&, const Rotation&) = default;
  friend auto operator<=>(const Rotation&, const Rotation&) = default;

 private:
  std::vector<EdgeId> cycle_;
};

/// Functional digraph: next[v] is the unique out-neighbour of v, or -1.
struct Digraph {
  std::vector<std::int64_t> next;
  std::vector<char> alive;
};

/// Repeatedly deletes vertices without entering arcs; what survives is a
/// union of disjoint cycles.
void clean(Digraph& d);

/// Vertex 2e is the worker copy of edge e, vertex 2e+1 its firm copy.
struct ActiveGraph {
  std::vector<int> sign;  // +1 / -1 / 0 per edge of the underlying graph
  std::vector<Tandem> tandems;
  Digraph raw;
  Digraph cleaned;
  std::vector<Rotation> rotations;  // sorted
  bool empty() const { return rotations.empty(); }
};

/// Requires x stable.
ActiveGraph build_active_graph(const Instance& inst, const GVector& x);
std::vector<Rotation> rotations_at(const Instance& inst, const GVector& x);

GVector apply_rotation(const Instance& inst, const GVector& x, const Rotation& r, int weight);

/// All tandems of r are present at x. Assumes x stable.
bool is_rotation_applicable(const Instance& inst, const GVector& x, const Rotation& r);

/// Largest feasible weight, one unit step at a time. Each step cross-checks
/// tandem persistence against stability of the next shift.
int max_weight_linear(const Instance& inst, const GVector& x, const Rotation& r);

struct WeightSearch {
  int weight;
  int probes;
};
/// Divide-and-conquer weight search, valid under the gapless condition.
WeightSearch max_weight_binary(const Instance& inst, const GVector& x, const Rotation& r);

/// Binary search on gapless instances, linear otherwise.
int max_weight(const Instance& inst, const GVector& x, const Rotation& r);

std::string active_graph_dot(const Instance& inst, const ActiveGraph& g);

}  // namespace sgmm
