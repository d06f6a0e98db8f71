#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/rotation.hpp"

namespace sgmm {

/// Alternating worker/firm choice iteration started from the capacities.
struct AgTrace {
  GVector x;
  std::vector<GVector> bounds;  // b^0, b^1, ...
};
AgTrace find_xmin_ag_traced(const Instance& inst);
GVector find_xmin_ag(const Instance& inst);
GVector find_xmax(const Instance& inst);

struct TwoStageTrace {
  GVector stage1;  // stable vector reached by augmenting from zero
  GVector xmin;
  int stage1_shifts = 0;
  int stage1_cycles = 0;  // shifts along a closed augmenting cycle
  int stage2_steps = 0;
  int backtracks = 0;  // visited vectors off the final augmenting sequence
};
TwoStageTrace find_xmin_twostage_traced(const Instance& inst);
GVector find_xmin_twostage(const Instance& inst);

struct RouteStep {
  Rotation rotation;
  int weight;
  int max_weight;  // maximal feasible weight at the step's start point
};

struct Route {
  GVector start;
  std::vector<RouteStep> steps;

  std::size_t size() const { return steps.size(); }
  std::vector<GVector> points(const Instance& inst) const;
  GVector end(const Instance& inst) const;
  /// A repeated rotation was used with its full weight every earlier time.
  bool non_excessive() const;
  bool principal() const;
  /// 1-based chronological occurrence index of each step's rotation.
  std::vector<int> occurrence_labels() const;
};

struct FullRouteOptions {
  std::optional<std::uint64_t> seed;  // shuffles each batch of rotations
};

/// Principal route from `start` to the top of the lattice.
Route principal_route_from(const Instance& inst, const GVector& start,
                           const FullRouteOptions& opt = {});
Route full_route(const Instance& inst, const FullRouteOptions& opt = {});

enum class WeightPolicy { maximal, randomized };
struct RouteBetweenOptions {
  WeightPolicy policy = WeightPolicy::maximal;
  std::uint64_t seed = 0;
};
/// Non-excessive route from x up to y; requires x strictly below y.
Route route_between(const Instance& inst, const GVector& x, const GVector& y,
                    const RouteBetweenOptions& opt = {});

using PiMultiset = std::map<std::pair<Rotation, int>, int>;
PiMultiset pi_multiset(const Route& route);

}  // namespace sgmm
