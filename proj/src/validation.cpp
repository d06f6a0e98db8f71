#include "sgmm/validation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "sgmm/error.hpp"
#include "sgmm/io.hpp"
#include "sgmm/optimizer.hpp"
#include "sgmm/rotation.hpp"

namespace sgmm {

namespace {

CheckResult fail(CheckResult r, const std::string& why) {
  r.passed = false;
  r.detail = why;
  return r;
}

}  // namespace

CheckResult check_lattice_laws(const Instance& inst, const StableSetLattice& lat) {
  CheckResult r{"lattice laws", true, std::to_string(lat.size()) + " stable vectors"};
  LatticeAudit a = lattice_audit(inst, lat);
  if (!a.passes()) return fail(r, a.failures.front());
  return r;
}

CheckResult check_extremes(const Instance& inst, const StableSetLattice& lat) {
  CheckResult r{"extremes", true, ""};
  GVector ag = find_xmin_ag(inst);
  TwoStageTrace two = find_xmin_twostage_traced(inst);
  GVector top = find_xmax(inst);
  if (ag != lat.elements[lat.bottom]) return fail(r, "alternating iteration misses the oracle minimum");
  if (two.xmin != ag) return fail(r, "two-stage minimum differs from the alternating iteration");
  if (top != lat.elements[lat.top]) return fail(r, "maximum differs from the oracle maximum");
  r.detail = "xmin " + format_vector(ag) + "; " + std::to_string(two.stage1_shifts) + " augmentations";
  return r;
}

CheckResult check_successors(const Instance& inst, const StableSetLattice& lat) {
  CheckResult r{"rotation successors", true, ""};
  std::size_t covers = 0;
  for (const GVector& x : lat.elements) {
    std::vector<GVector> via;
    for (const Rotation& rot : rotations_at(inst, x)) via.push_back(apply_rotation(inst, x, rot, 1));
    std::sort(via.begin(), via.end());
    auto expect = immediate_successors(lat, x);
    covers += expect.size();
    if (via != expect) return fail(r, "rotations at " + format_vector(x) + " disagree with its covers");
  }
  r.detail = std::to_string(covers) + " covers";
  return r;
}

CheckResult check_bijection(const Instance& inst, const StableSetLattice& lat, const WeightedPoset& p) {
  CheckResult r{"closed functions", true, ""};
  if (p.shortcuts_removed() != 0) return fail(r, "poset construction produced redundant edges");
  std::set<GVector> images;
  std::size_t count = 0;
  bool ok = true;
  std::string why;
  for_each_closed_function(p, 10'000'000, [&](const ClosedFunction& l) {
    ++count;
    if (!ok) return;
    GVector x = phi_inverse(inst, p, l);
    if (!lat.index_of(x)) {
      ok = false;
      why = "closed function maps outside the stable set";
    } else if (!images.insert(x).second) {
      ok = false;
      why = "two closed functions map to the same vector";
    } else if (phi(inst, p, x) != l) {
      ok = false;
      why = "phi does not invert phi_inverse at " + format_vector(x);
    }
  });
  if (!ok) return fail(r, why);
  if (count != lat.size())
    return fail(r, std::to_string(count) + " closed functions for " + std::to_string(lat.size()) + " stable vectors");
  r.detail = std::to_string(count) + " closed functions, " + std::to_string(p.size()) + " elements";
  return r;
}

CheckResult check_birkhoff(const StableSetLattice& lat, const WeightedPoset& p) {
  CheckResult r{"prime ideals", true, ""};
  StableSetLattice sub = principal_sublattice(lat);
  BirkhoffStructure b = birkhoff_extract(sub);
  if (!b.filter_order_agrees) return fail(r, "ideal maxima and filter minima order girdles differently");
  if (b.girdles.size() != p.size())
    return fail(r, std::to_string(b.girdles.size()) + " girdles for " + std::to_string(p.size()) + " elements");
  // All maximal chains of the principal sublattice have the same length.
  const std::size_t n = sub.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sub.less[j][i]) ++below[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return below[a] < below[c]; });
  std::vector<std::size_t> lo(n, 0), hi(n, 0);
  std::vector<char> seen(n, 0);
  seen[sub.bottom] = 1;
  for (std::size_t i : order) {
    if (!seen[i]) continue;
    for (std::size_t j : sub.successors[i]) {
      if (!seen[j]) {
        lo[j] = lo[i] + 1;
        hi[j] = hi[i] + 1;
        seen[j] = 1;
      } else {
        lo[j] = std::min(lo[j], lo[i] + 1);
        hi[j] = std::max(hi[j], hi[i] + 1);
      }
    }
  }
  if (lo[sub.top] != p.size() || hi[sub.top] != p.size())
    return fail(r, "maximal chains of the principal sublattice differ in length");

  std::vector<std::size_t> map;
  const std::size_t m = lat.elements.empty() ? 0 : lat.elements.front().size();
  for (const Girdle& g : b.girdles) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.rotation_of(i).incidence(m) == g.direction && p.element(i).occurrence == g.label) hit = i;
    if (!hit) return fail(r, "girdle without a matching labeled rotation");
    map.push_back(*hit);
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      if (static_cast<bool>(b.precedes[i][j]) != p.below(map[i], map[j]))
        return fail(r, "girdle order differs from the rotation poset");
  r.detail = std::to_string(p.size()) + " girdles";
  return r;
}

CheckResult check_pi_invariance(const Instance& inst, int randomized_routes) {
  CheckResult r{"route multiset", true, ""};
  Route base = full_route(inst);
  PiMultiset pi = pi_multiset(base);
  GVector lo = base.start, hi = base.end(inst);
  if (lo == hi) {
    r.detail = "single stable vector";
    return r;
  }
  for (int s = 1; s <= randomized_routes; ++s) {
    Route shuffled = full_route(inst, {static_cast<std::uint64_t>(s)});
    if (pi_multiset(shuffled) != pi) return fail(r, "shuffled full route changes the multiset");
    Route between = route_between(inst, lo, hi, {WeightPolicy::randomized, static_cast<std::uint64_t>(s)});
    if (pi_multiset(between) != pi) return fail(r, "randomized route changes the multiset");
  }
  r.detail = std::to_string(2 * randomized_routes + 1) + " routes of length " + std::to_string(base.size());
  return r;
}

CheckResult check_route_bounds(const Instance& inst, const Route& full) {
  CheckResult r{"route length", true, ""};
  std::size_t n = full.size();
  std::size_t m = inst.num_edges();
  if (2 * n > static_cast<std::size_t>(inst.max_capacity()) * m) return fail(r, "route longer than b_max |E| / 2");
  if (inst.gapless()) {
    std::set<Rotation> distinct;
    for (const auto& s : full.steps) distinct.insert(s.rotation);
    if (distinct.size() != n) return fail(r, "a rotation repeats on a gapless instance");
    if (n >= 4 * m * m * inst.firms().size() * inst.workers().size())
      return fail(r, "route reaches the gapless length bound");
  }
  r.detail = "N=" + std::to_string(n);
  return r;
}

CheckResult check_weight_search(const Instance& inst, const Route& full, int probe_limit) {
  CheckResult r{"weight search", true, ""};
  int worst = 0, pairs = 0;
  for (const GVector& x : full.points(inst))
    for (const Rotation& rot : rotations_at(inst, x)) {
      WeightSearch b = max_weight_binary(inst, x, rot);
      int lin = max_weight_linear(inst, x, rot);
      ++pairs;
      worst = std::max(worst, b.probes);
      if (b.weight != lin) return fail(r, "binary weight " + std::to_string(b.weight) + " vs linear " + std::to_string(lin));
      if (b.probes > probe_limit) return fail(r, std::to_string(b.probes) + " probes");
    }
  r.detail = std::to_string(pairs) + " pairs, at most " + std::to_string(worst) + " probes";
  return r;
}

CheckResult check_min_cost(const Instance& inst, const StableSetLattice& lat, const WeightedPoset& p,
                           int samples, std::uint64_t seed) {
  CheckResult r{"minimum cost", true, ""};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    CostVector c(inst.num_edges());
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % 21) - 10;
    std::int64_t best = cost_of(c, lat.elements.front());
    for (const GVector& x : lat.elements) best = std::min(best, cost_of(c, x));
    MinCostResult got = min_cost_stable(inst, c, p);
    if (got.cost != best) return fail(r, "cost " + std::to_string(got.cost) + " vs brute force " + std::to_string(best));
    if (!lat.index_of(got.x)) return fail(r, "optimizer returned an unstable vector");
  }
  r.detail = std::to_string(samples) + " cost vectors";
  return r;
}

std::vector<CheckResult> cross_validate(const Instance& inst, const ValidationOptions& opt) {
  std::vector<CheckResult> out;
  auto guard = [&](const std::string& name, const std::function<CheckResult()>& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  std::optional<StableSetLattice> lat;
  std::optional<WeightedPoset> p;
  std::optional<Route> full;
  guard("enumeration", [&] {
    lat = enumerate_stable(inst, opt.box_cap);
    return CheckResult{"enumeration", true, std::to_string(lat->size()) + " stable vectors"};
  });
  guard("poset", [&] {
    p = build_poset(inst);
    full = full_route(inst);
    return CheckResult{"poset", true, std::to_string(p->size()) + " elements"};
  });
  if (lat) {
    guard("lattice laws", [&] { return check_lattice_laws(inst, *lat); });
    guard("extremes", [&] { return check_extremes(inst, *lat); });
    guard("rotation successors", [&] { return check_successors(inst, *lat); });
  }
  if (lat && p) {
    guard("closed functions", [&] { return check_bijection(inst, *lat, *p); });
    guard("prime ideals", [&] { return check_birkhoff(*lat, *p); });
    guard("minimum cost", [&] { return check_min_cost(inst, *lat, *p, opt.cost_samples, opt.seed); });
  }
  if (full) {
    guard("route length", [&] { return check_route_bounds(inst, *full); });
    if (inst.gapless()) {
      int limit = 1;
      while ((1 << (limit - 1)) < inst.max_capacity()) ++limit;
      guard("weight search", [&] { return check_weight_search(inst, *full, limit); });
    }
  }
  guard("route multiset", [&] { return check_pi_invariance(inst, opt.randomized_routes); });
  return out;
}

}  // namespace sgmm
