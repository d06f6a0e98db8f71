#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/oracle.hpp"
#include "sgmm/poset.hpp"
#include "sgmm/route.hpp"

namespace sgmm {

/// Engine-versus-oracle cross checks on one instance.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

CheckResult check_lattice_laws(const Instance& inst, const StableSetLattice& lat);
CheckResult check_extremes(const Instance& inst, const StableSetLattice& lat);
/// Rotations at x reproduce the covers of x, for every stable x.
CheckResult check_successors(const Instance& inst, const StableSetLattice& lat);
/// Closed functions and stable vectors correspond one to one.
CheckResult check_bijection(const Instance& inst, const StableSetLattice& lat, const WeightedPoset& p);
/// Prime-ideal order of the principal sublattice matches the poset.
CheckResult check_birkhoff(const StableSetLattice& lat, const WeightedPoset& p);
CheckResult check_pi_invariance(const Instance& inst, int randomized_routes);
CheckResult check_route_bounds(const Instance& inst, const Route& full);
/// Every (x, R) along the route: binary and linear weights agree.
CheckResult check_weight_search(const Instance& inst, const Route& full, int probe_limit);
CheckResult check_min_cost(const Instance& inst, const StableSetLattice& lat, const WeightedPoset& p,
                           int samples, std::uint64_t seed);

struct ValidationOptions {
  int randomized_routes = 5;
  int cost_samples = 20;
  std::uint64_t seed = 1;
  std::uint64_t box_cap = 1'000'000;
};
std::vector<CheckResult> cross_validate(const Instance& inst, const ValidationOptions& opt = {});

}  // namespace sgmm
