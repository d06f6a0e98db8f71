#include "sgmm/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "sgmm/error.hpp"

namespace sgmm {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void fill_covers(StableSetLattice& lat) {
  const std::size_t n = lat.size();
  lat.successors.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!lat.less[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (lat.less[i][k] && lat.less[k][j]) cover = false;
      if (cover) lat.successors[i].push_back(j);
    }
  lat.bottom = lat.top = kNone;
  for (std::size_t i = 0; i < n; ++i) {
    bool lowest = true, highest = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!lat.less[i][j]) lowest = false;
      if (!lat.less[j][i]) highest = false;
    }
    if (lowest) lat.bottom = i;
    if (highest) lat.top = i;
  }
  if (n > 0 && (lat.bottom == kNone || lat.top == kNone))
    throw InvariantViolation("stable set has no least or greatest element");
}

GVector assemble(const Instance& inst, const std::vector<VertexId>& side,
                 const std::function<LocalVector(VertexId)>& local) {
  GVector z = GVector::zeros(inst.num_edges());
  for (VertexId v : side) {
    LocalVector c = local(v);
    auto inc = inst.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i) z[inc[i]] = c[i];
  }
  return z;
}

LocalVector vmax(const LocalVector& a, const LocalVector& b) {
  LocalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

}  // namespace

std::optional<std::size_t> StableSetLattice::index_of(const GVector& x) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  if (it == elements.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

StableSetLattice enumerate_stable(const Instance& inst, std::uint64_t cap) {
  GVector b = inst.capacities();
  if (box_volume(b.values) > cap)
    throw CapExceeded("box has more than " + std::to_string(cap) + " points");
  StableSetLattice lat;
  LocalVector zero(inst.num_edges(), 0);
  for_each_in_range(zero, b.values, [&](const LocalVector& v) {
    GVector x(v);
    if (is_stable(inst, x)) lat.elements.push_back(std::move(x));
  });
  const std::size_t n = lat.size();
  lat.less.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && compare_F(inst, lat.elements[i], lat.elements[j]) == Order::less) lat.less[i][j] = 1;
  fill_covers(lat);
  return lat;
}

std::vector<GVector> immediate_successors(const StableSetLattice& lat, const GVector& x) {
  auto i = lat.index_of(x);
  if (!i) throw PreconditionError("vector is not in the enumerated stable set");
  std::vector<GVector> out;
  for (std::size_t j : lat.successors[*i]) out.push_back(lat.elements[j]);
  std::sort(out.begin(), out.end());
  return out;
}

LatticeTables lattice_tables(const StableSetLattice& lat) {
  const std::size_t n = lat.size();
  std::vector<std::size_t> down(n, 0), up(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (lat.leq(j, i)) ++down[i];
      if (lat.leq(i, j)) ++up[i];
    }
  LatticeTables t;
  t.join.assign(n, std::vector<std::size_t>(n, kNone));
  t.meet.assign(n, std::vector<std::size_t>(n, kNone));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::size_t best_up = kNone, best_lo = kNone;
      for (std::size_t k = 0; k < n; ++k) {
        if (lat.leq(i, k) && lat.leq(j, k) && (best_up == kNone || down[k] < down[best_up])) best_up = k;
        if (lat.leq(k, i) && lat.leq(k, j) && (best_lo == kNone || up[k] < up[best_lo])) best_lo = k;
      }
      bool ok_up = best_up != kNone, ok_lo = best_lo != kNone;
      for (std::size_t k = 0; k < n; ++k) {
        if (ok_up && lat.leq(i, k) && lat.leq(j, k) && !lat.leq(best_up, k)) ok_up = false;
        if (ok_lo && lat.leq(k, i) && lat.leq(k, j) && !lat.leq(k, best_lo)) ok_lo = false;
      }
      t.join[i][j] = t.join[j][i] = ok_up ? best_up : kNone;
      t.meet[i][j] = t.meet[j][i] = ok_lo ? best_lo : kNone;
    }
  return t;
}

LatticeAudit lattice_audit(const Instance& inst, const StableSetLattice& lat) {
  LatticeAudit a;
  const std::size_t n = lat.size();
  auto note = [&](bool& flag, const std::string& msg) {
    if (flag) a.failures.push_back(msg);
    flag = false;
  };
  LatticeTables t = lattice_tables(lat);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t.join[i][j] == kNone || t.meet[i][j] == kNone)
        note(a.lattice, "no bound for elements " + std::to_string(i) + " and " + std::to_string(j));
  if (!a.lattice) return a;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GVector& x = lat.elements[i];
      const GVector& y = lat.elements[j];
      GVector fj = assemble(inst, inst.firms(), [&](VertexId f) {
        return inst.cf(f)(vmax(restrict_to(inst, x, f), restrict_to(inst, y, f)));
      });
      if (fj != lat.elements[t.join[i][j]]) note(a.firm_join, "firm-wise join differs from the lattice join");
      GVector fm = assemble(inst, inst.firms(), [&](VertexId f) {
        return local_join_meet(inst.cf(f), restrict_to(inst, x, f), restrict_to(inst, y, f)).meet;
      });
      if (fm != lat.elements[t.meet[i][j]]) note(a.firm_meet, "firm-wise meet differs from the lattice meet");
      GVector wj = assemble(inst, inst.workers(), [&](VertexId w) {
        return inst.cf(w)(vmax(restrict_to(inst, x, w), restrict_to(inst, y, w)));
      });
      if (wj != lat.elements[t.meet[i][j]])
        note(a.worker_join_is_meet, "worker-wise join differs from the lattice meet");
      if (i != j) {
        bool f_less = lat.less[i][j];
        bool w_greater = compare_W(inst, x, y) == Order::greater;
        if (f_less != w_greater) note(a.polarity, "firm order and reversed worker order disagree");
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t lhs = t.meet[i][t.join[j][k]];
        std::size_t rhs = t.join[t.meet[i][j]][t.meet[i][k]];
        if (lhs != rhs) note(a.distributive, "meet does not distribute over join");
      }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    std::set<int> sizes;
    for (const GVector& x : lat.elements) {
      int s = 0;
      for (EdgeId e : inst.incident(v)) s += x[e];
      sizes.insert(s);
    }
    if (sizes.size() > 1) note(a.unisize, "vertex " + inst.vertex(v).name + " changes its load");
  }
  return a;
}

StableSetLattice principal_sublattice(const StableSetLattice& lat) {
  const std::size_t n = lat.size();
  std::vector<char> keep(n, 0);
  if (n == 0) return lat;
  std::deque<std::size_t> queue{lat.bottom};
  keep[lat.bottom] = 1;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    const GVector& x = lat.elements[i];
    for (std::size_t j : lat.successors[i]) {
      GVector step = lat.elements[j];
      std::size_t last = j;
      while (true) {
        GVector next = step;
        for (EdgeId e = 0; e < x.size(); ++e) next[e] += lat.elements[j][e] - x[e];
        auto k = lat.index_of(next);
        if (!k) break;
        step = std::move(next);
        last = *k;
      }
      if (!keep[last]) {
        keep[last] = 1;
        queue.push_back(last);
      }
    }
  }
  StableSetLattice sub;
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) {
      map.push_back(i);
      sub.elements.push_back(lat.elements[i]);
    }
  const std::size_t m = map.size();
  sub.less.assign(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sub.less[i][j] = lat.less[map[i]][map[j]];
  fill_covers(sub);
  return sub;
}

BirkhoffStructure birkhoff_extract(const StableSetLattice& lat) {
  BirkhoffStructure b;
  const std::size_t n = lat.size();
  if (n == 0) return b;
  LatticeTables t = lattice_tables(lat);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t.join[i][j] == kNone || t.meet[i][j] == kNone)
        throw PreconditionError("Birkhoff extraction needs a lattice");
  b.chain.push_back(lat.bottom);
  while (b.chain.back() != lat.top) {
    const auto& s = lat.successors[b.chain.back()];
    if (s.empty()) throw InvariantViolation("maximal chain stops below the top");
    b.chain.push_back(*std::min_element(s.begin(), s.end()));
  }
  const std::size_t m = b.chain.size() - 1;
  for (std::size_t l = 1; l <= m; ++l) {
    std::size_t lo = b.chain[l - 1], hi = b.chain[l];
    Girdle g;
    std::vector<std::size_t> filter;
    for (std::size_t y = 0; y < n; ++y) {
      if (t.meet[t.join[lo][y]][hi] == lo)
        g.ideal.push_back(y);
      else
        filter.push_back(y);
    }
    g.ideal_max = g.ideal.front();
    for (std::size_t y : g.ideal) g.ideal_max = t.join[g.ideal_max][y];
    g.filter_min = filter.front();
    for (std::size_t y : filter) g.filter_min = t.meet[g.filter_min][y];
    if (std::find(g.ideal.begin(), g.ideal.end(), g.ideal_max) == g.ideal.end() ||
        std::find(filter.begin(), filter.end(), g.filter_min) == filter.end())
      throw InvariantViolation("prime ideal split is not a complementary ideal/filter pair");
    for (EdgeId e = 0; e < lat.elements[hi].size(); ++e) {
      int d = lat.elements[hi][e] - lat.elements[lo][e];
      g.direction.push_back(d > 0 ? 1 : d < 0 ? -1 : 0);
    }
    g.label = 1;
    for (const Girdle& prev : b.girdles)
      if (prev.direction == g.direction) ++g.label;
    b.girdles.push_back(std::move(g));
  }
  b.precedes.assign(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool by_max = lat.less[b.girdles[i].ideal_max][b.girdles[j].ideal_max];
      bool by_min = lat.less[b.girdles[i].filter_min][b.girdles[j].filter_min];
      b.precedes[i][j] = by_max;
      if (by_max != by_min) b.filter_order_agrees = false;
    }
  return b;
}

}  // namespace sgmm
