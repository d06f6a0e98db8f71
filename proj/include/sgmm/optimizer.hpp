#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/poset.hpp"
#include "sgmm/rotation.hpp"

namespace sgmm {

using CostVector = std::vector<std::int64_t>;

std::int64_t cost_of(const CostVector& c, const GVector& x);
/// Cost change of a unit shift: c(R+) - c(R-).
std::int64_t rotation_cost(const Rotation& r, const CostVector& c);

struct Arc {
  std::size_t from;
  std::size_t to;
  std::int64_t capacity;
};

/// Nodes 0..elements-1 are poset elements, then source and sink.
struct ClosureNetwork {
  std::size_t elements = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::int64_t infinity = 0;
  std::vector<std::int64_t> element_cost;  // c_R * tau per element
  std::vector<Arc> arcs;
};

ClosureNetwork build_closure_network(const WeightedPoset& p, const CostVector& c);

struct CutResult {
  std::vector<std::size_t> ideal;  // elements on the sink side
  std::int64_t flow_value = 0;
  std::int64_t cut_value = 0;
};

/// Minimum cut whose sink side is the smallest optimal ideal.
CutResult min_cut_closure(const ClosureNetwork& net);

struct MinCostResult {
  GVector x;
  std::int64_t cost = 0;
  ClosedFunction lambda;
  std::vector<std::size_t> ideal;
};

MinCostResult min_cost_stable(const Instance& inst, const CostVector& c, const WeightedPoset& p);
MinCostResult min_cost_stable(const Instance& inst, const CostVector& c);

std::string to_dimacs(const ClosureNetwork& net);

}  // namespace sgmm
