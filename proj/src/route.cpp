#include "sgmm/route.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "sgmm/error.hpp"
#include "sgmm/stability.hpp"

namespace sgmm {

AgTrace find_xmin_ag_traced(const Instance& inst) {
  AgTrace t;
  GVector bound = inst.capacities();
  const std::size_t m = inst.num_edges();
  while (true) {
    t.bounds.push_back(bound);
    GVector x = GVector::zeros(m);
    for (VertexId w : inst.workers()) {
      LocalVector c = inst.cf(w)(restrict_to(inst, bound, w));
      auto inc = inst.incident(w);
      for (std::size_t i = 0; i < inc.size(); ++i) x[inc[i]] = c[i];
    }
    GVector y = GVector::zeros(m);
    for (VertexId f : inst.firms()) {
      LocalVector c = inst.cf(f)(restrict_to(inst, x, f));
      auto inc = inst.incident(f);
      for (std::size_t i = 0; i < inc.size(); ++i) y[inc[i]] = c[i];
    }
    if (y == x) {
      t.x = std::move(x);
      return t;
    }
    GVector next = bound;
    for (EdgeId e = 0; e < m; ++e)
      if (y[e] != x[e]) next[e] = y[e];
    if (next == bound) throw InvariantViolation("alternating iteration made no progress");
    bound = std::move(next);
  }
}

GVector find_xmin_ag(const Instance& inst) { return find_xmin_ag_traced(inst).x; }

GVector find_xmax(const Instance& inst) { return find_xmin_ag(inst.swapped()); }

namespace {

struct Augment {
  std::vector<EdgeId> edges;
  std::vector<int> signs;
  bool cycle = false;
  friend bool operator==(const Augment&, const Augment&) = default;
};

bool grows_at_worker(const Instance& inst, const GVector& x, EdgeId e) {
  if (x[e] >= inst.edge(e).capacity) return false;
  return is_interesting(inst, x, e, inst.edge(e).worker).kind == InterestKind::grow;
}

// Maximal edge-simple walk of alternating legal firm pairs and
// quasi-essential worker pairs started at `start`, or its closing cycle.
Augment augment_at(const Instance& inst, const GVector& x, const FirmScan& scan, EdgeId start) {
  std::vector<EdgeId> path{start};
  std::vector<std::ptrdiff_t> pos(inst.num_edges(), -1);
  pos[start] = 0;
  std::ptrdiff_t cycle_from = -1;
  while (true) {
    EdgeId last = path.back();
    std::optional<EdgeId> next;
    if (path.size() % 2 == 1) {
      next = scan.drop_of[last];
    } else if (auto t = essential_w_pair(inst, x, last, scan, true)) {
      next = t->second;
    }
    if (!next) break;
    if (pos[*next] >= 0) {
      cycle_from = pos[*next];
      break;
    }
    pos[*next] = static_cast<std::ptrdiff_t>(path.size());
    path.push_back(*next);
  }
  Augment a;
  std::size_t from = cycle_from >= 0 ? static_cast<std::size_t>(cycle_from) : 0;
  a.cycle = cycle_from >= 0;
  for (std::size_t i = from; i < path.size(); ++i) {
    a.edges.push_back(path[i]);
    a.signs.push_back(i % 2 == 0 ? 1 : -1);
  }
  return a;
}

std::vector<EdgeId> case_two_edges(const Instance& inst, const GVector& x, const FirmScan& scan) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    if (scan.plus[e] && grows_at_worker(inst, x, e)) out.push_back(e);
  return out;
}

// Interesting-for-both edges may only be pure growth at the worker.
bool worker_growth_only(const Instance& inst, const GVector& y) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (y[e] >= inst.edge(e).capacity) continue;
    Interest wf = is_interesting(inst, y, e, inst.edge(e).worker);
    if (wf.kind != InterestKind::exchange) continue;
    if (is_interesting(inst, y, e, inst.edge(e).firm).interesting()) return false;
  }
  return true;
}

bool firms_not_worse(const Instance& inst, const GVector& x, const GVector& y) {
  for (VertexId f : inst.firms()) {
    Order o = local_order(inst.cf(f), restrict_to(inst, x, f), restrict_to(inst, y, f));
    if (o != Order::less && o != Order::equal) return false;
  }
  return true;
}

GVector shifted(const GVector& x, const Augment& a, int weight) {
  GVector y = x;
  for (std::size_t i = 0; i < a.edges.size(); ++i) y[a.edges[i]] += weight * a.signs[i];
  return y;
}

bool valid_successor(const Instance& inst, const GVector& x, const GVector& y) {
  return in_box(inst, y) && is_acceptable(inst, y) && worker_growth_only(inst, y) &&
         firms_not_worse(inst, x, y);
}

int fast_weight(const Instance& inst, const GVector& x, const Augment& a, EdgeId start) {
  int nu = inst.max_capacity();
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    EdgeId e = a.edges[i];
    nu = std::min(nu, a.signs[i] > 0 ? inst.edge(e).capacity - x[e] : x[e]);
  }
  auto valid = [&](int mu) {
    GVector z = shifted(x, a, mu - 1);
    if (!in_box(inst, z) || !is_acceptable(inst, z)) return false;
    FirmScan sz = scan_firms(inst, z);
    if (!sz.plus[start] || !grows_at_worker(inst, z, start)) return false;
    if (!(augment_at(inst, z, sz, start) == a)) return false;
    return valid_successor(inst, z, shifted(x, a, mu));
  };
  int lo = 1, hi = std::max(1, nu);
  while (lo < hi) {
    int mid = lo + (hi - lo + 1) / 2;
    if (valid(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

TwoStageTrace find_xmin_twostage_traced(const Instance& inst) {
  TwoStageTrace t;
  constexpr std::size_t kGuard = 10'000'000;
  // Some start edges lead to vectors from which every shift makes a firm want an
  // edge its worker would drop, so choices are explored depth first with backtracking.
  struct Frame {
    GVector x;
    std::vector<std::pair<GVector, bool>> next;
    std::size_t pos = 0;
    bool case_one = false;
  };
  auto expand = [&](const GVector& x) {
    Frame fr{x, {}, 0, false};
    FirmScan scan = scan_firms(inst, x);
    std::vector<EdgeId> starts = case_two_edges(inst, x, scan);
    fr.case_one = starts.empty();
    for (EdgeId s : starts) {
      Augment a = augment_at(inst, x, scan, s);
      GVector y = shifted(x, a, inst.gapless() ? fast_weight(inst, x, a, s) : 1);
      if (valid_successor(inst, x, y)) fr.next.emplace_back(std::move(y), a.cycle);
    }
    return fr;
  };
  std::set<GVector> visited;
  std::vector<Frame> stack;
  GVector x = GVector::zeros(inst.num_edges());
  visited.insert(x);
  stack.push_back(expand(x));
  while (true) {
    Frame& top = stack.back();
    if (top.case_one) break;
    if (top.pos == top.next.size()) {
      stack.pop_back();
      if (stack.empty()) throw InvariantViolation("no sequence of augmenting shifts reaches a stable vector");
      continue;
    }
    GVector y = top.next[top.pos++].first;
    if (!visited.insert(y).second) continue;
    if (visited.size() > kGuard) throw InvariantViolation("augmenting stage does not terminate");
    stack.push_back(expand(y));
  }
  for (std::size_t i = 1; i < stack.size(); ++i)
    if (stack[i - 1].next[stack[i - 1].pos - 1].second) ++t.stage1_cycles;
  t.stage1_shifts = static_cast<int>(stack.size()) - 1;
  t.backtracks = static_cast<int>(visited.size()) - static_cast<int>(stack.size());
  x = stack.back().x;
  if (!is_stable(inst, x)) throw InvariantViolation("augmenting stage ended at an unstable vector");
  t.stage1 = x;
  Instance rev = inst.swapped();
  Route r = principal_route_from(rev, x);
  t.stage2_steps = static_cast<int>(r.size());
  t.xmin = r.end(rev);
  return t;
}

GVector find_xmin_twostage(const Instance& inst) { return find_xmin_twostage_traced(inst).xmin; }

std::vector<GVector> Route::points(const Instance& inst) const {
  std::vector<GVector> pts{start};
  for (const RouteStep& s : steps) pts.push_back(apply_rotation(inst, pts.back(), s.rotation, s.weight));
  return pts;
}

GVector Route::end(const Instance& inst) const { return points(inst).back(); }

bool Route::non_excessive() const {
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (std::size_t j = i + 1; j < steps.size(); ++j)
      if (steps[i].rotation == steps[j].rotation && steps[i].weight != steps[i].max_weight)
        return false;
  return true;
}

bool Route::principal() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const RouteStep& s) { return s.weight == s.max_weight; });
}

std::vector<int> Route::occurrence_labels() const {
  std::map<Rotation, int> count;
  std::vector<int> labels;
  for (const RouteStep& s : steps) labels.push_back(++count[s.rotation]);
  return labels;
}

Route principal_route_from(const Instance& inst, const GVector& start, const FullRouteOptions& opt) {
  if (!is_stable(inst, start)) throw PreconditionError("route must start at a stable vector");
  Route route{start, {}};
  GVector x = start;
  std::mt19937_64 rng(opt.seed.value_or(0));
  const std::size_t bound = static_cast<std::size_t>(inst.max_capacity()) * inst.num_edges() / 2;
  while (true) {
    std::vector<Rotation> batch = rotations_at(inst, x);
    if (batch.empty()) break;
    if (opt.seed)
      for (std::size_t i = batch.size(); i > 1; --i) std::swap(batch[i - 1], batch[rng() % i]);
    // Rotations found together stay applicable with unchanged weights.
    for (const Rotation& r : batch) {
      int tau = max_weight(inst, x, r);
      x = apply_rotation(inst, x, r, tau);
      route.steps.push_back({r, tau, tau});
      if (route.steps.size() > bound) throw InvariantViolation("route longer than b_max |E| / 2");
    }
  }
  return route;
}

Route full_route(const Instance& inst, const FullRouteOptions& opt) {
  return principal_route_from(inst, find_xmin_ag(inst), opt);
}

Route route_between(const Instance& inst, const GVector& x, const GVector& y,
                    const RouteBetweenOptions& opt) {
  if (!is_stable(inst, x) || !is_stable(inst, y)) throw PreconditionError("route endpoints must be stable");
  if (compare_F(inst, x, y) != Order::less) throw PreconditionError("route start must lie strictly below its end");
  Route route{x, {}};
  GVector cur = x;
  std::mt19937_64 rng(opt.seed);
  auto below_target = [&](const GVector& z) {
    Order o = compare_F(inst, z, y);
    return o == Order::less || o == Order::equal;
  };
  const std::size_t bound = static_cast<std::size_t>(inst.max_capacity()) * inst.num_edges() / 2;
  while (cur != y) {
    std::vector<Rotation> cands;
    for (const Rotation& r : rotations_at(inst, cur))
      if (below_target(apply_rotation(inst, cur, r, 1))) cands.push_back(r);
    if (cands.empty()) throw InvariantViolation("no rotation leads towards the route target");
    const Rotation& r = opt.policy == WeightPolicy::randomized ? cands[rng() % cands.size()] : cands.front();
    int tau = max_weight(inst, cur, r);
    int lambda = 1;
    while (lambda < tau && below_target(apply_rotation(inst, cur, r, lambda + 1))) ++lambda;
    cur = apply_rotation(inst, cur, r, lambda);
    route.steps.push_back({r, lambda, tau});
    if (route.steps.size() > bound) throw InvariantViolation("route longer than b_max |E| / 2");
  }
  if (!route.non_excessive()) throw InvariantViolation("constructed route is excessive");
  return route;
}

PiMultiset pi_multiset(const Route& route) {
  if (!route.non_excessive()) throw PreconditionError("multiset of an excessive route");
  PiMultiset pi;
  for (const RouteStep& s : route.steps) ++pi[{s.rotation, s.weight}];
  return pi;
}

}  // namespace sgmm
