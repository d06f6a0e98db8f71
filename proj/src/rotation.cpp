#include "sgmm/rotation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "sgmm/error.hpp"
#include "sgmm/stability.hpp"

namespace sgmm {

FirmScan scan_firms(const Instance& inst, const GVector& x) {
  const std::size_t m = inst.num_edges();
  FirmScan s;
  s.plus.assign(m, 0);
  s.minus.assign(m, 0);
  s.drop_of.assign(m, std::nullopt);
  for (EdgeId e = 0; e < m; ++e) {
    VertexId f = inst.edge(e).firm;
    Interest in = is_interesting(inst, x, e, f);
    if (in.interesting()) {
      s.plus[e] = 1;
      if (in.kind == InterestKind::exchange) {
        s.drop_of[e] = in.dropped;
        s.legal_pairs.push_back({TandemKind::legal_f, e, *in.dropped, f});
      }
    } else if (x[e] > 0) {
      s.minus[e] = 1;
    }
  }
  return s;
}

FirmScan legal_f_pairs(const Instance& inst, const GVector& x) {
  if (!is_stable(inst, x)) throw PreconditionError("legal pairs need a stable vector");
  return scan_firms(inst, x);
}

namespace {

std::optional<Tandem> essential_impl(const Instance& inst, const GVector& x, EdgeId c,
                                     const std::vector<char>& plus, bool quasi) {
  VertexId w = inst.edge(c).worker;
  const ChoiceFunction& cf = inst.cf(w);
  LocalVector xw = restrict_to(inst, x, w);
  std::size_t lc = inst.local_index(w, c);
  if (xw[lc] == 0) throw PreconditionError("negative tandem edge carries no value");

  struct Candidate {
    EdgeId a;
    LocalVector z;
  };
  std::vector<Candidate> cands;
  auto incident = inst.incident(w);
  for (std::size_t la = 0; la < incident.size(); ++la) {
    EdgeId a = incident[la];
    if (a == c || !plus[a]) continue;
    if (quasi) {
      LocalVector probe = xw;
      ++probe[la];
      if (cf(probe) != xw) continue;
    }
    LocalVector z = xw;
    --z[lc];
    ++z[la];
    if (cf(z) == z) cands.push_back({a, std::move(z)});
  }
  if (cands.empty()) return std::nullopt;

  std::optional<EdgeId> chosen;
  int count = 0;
  for (const Candidate& ca : cands) {
    bool ok = true;
    for (const Candidate& d : cands) {
      if (d.a == ca.a) continue;
      LocalVector probe = ca.z;
      ++probe[inst.local_index(w, d.a)];
      if (cf(probe) != ca.z) {
        ok = false;
        break;
      }
    }
    if (ok) {
      chosen = ca.a;
      ++count;
    }
  }
  if (count != 1)
    throw InvariantViolation("worker " + inst.vertex(w).name + " has " + std::to_string(count) +
                             " essential partners for edge " + std::to_string(c));
  return Tandem{quasi ? TandemKind::quasi_essential_w : TandemKind::essential_w, c, *chosen, w};
}

}  // namespace

std::optional<Tandem> essential_w_pair(const Instance& inst, const GVector& x, EdgeId c,
                                       const FirmScan& scan, bool quasi) {
  if (c >= inst.num_edges() || !scan.minus[c])
    throw PreconditionError("essential pair needs an edge of the negative set");
  return essential_impl(inst, x, c, scan.plus, quasi);
}

Rotation::Rotation(std::vector<EdgeId> cycle) {
  if (cycle.size() < 4 || cycle.size() % 2 != 0)
    throw PreconditionError("rotation needs an even number of at least four edges");
  std::set<EdgeId> seen(cycle.begin(), cycle.end());
  if (seen.size() != cycle.size()) throw PreconditionError("rotation edges must be distinct");
  std::size_t best = 0;
  for (std::size_t i = 0; i < cycle.size(); i += 2)
    if (cycle[i] < cycle[best]) best = i;
  std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(best), cycle.end());
  cycle_ = std::move(cycle);
}

std::vector<EdgeId> Rotation::positive() const {
  std::vector<EdgeId> r;
  for (std::size_t i = 0; i < cycle_.size(); i += 2) r.push_back(cycle_[i]);
  return r;
}

std::vector<EdgeId> Rotation::negative() const {
  std::vector<EdgeId> r;
  for (std::size_t i = 1; i < cycle_.size(); i += 2) r.push_back(cycle_[i]);
  return r;
}

std::vector<int> Rotation::incidence(std::size_t num_edges) const {
  std::vector<int> chi(num_edges, 0);
  for (std::size_t i = 0; i < cycle_.size(); ++i) {
    if (cycle_[i] >= num_edges) throw PreconditionError("rotation edge out of range");
    chi[cycle_[i]] = i % 2 == 0 ? 1 : -1;
  }
  return chi;
}

std::string Rotation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < cycle_.size(); ++i) {
    if (i) s += ' ';
    s += (i % 2 == 0 ? '+' : '-');
    s += std::to_string(cycle_[i]);
  }
  return s;
}

void clean(Digraph& d) {
  const std::size_t n = d.next.size();
  std::vector<int> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (d.alive[v] && d.next[v] >= 0 && d.alive[static_cast<std::size_t>(d.next[v])])
      ++indeg[static_cast<std::size_t>(d.next[v])];
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (d.alive[v] && indeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    d.alive[v] = 0;
    if (d.next[v] >= 0) {
      auto u = static_cast<std::size_t>(d.next[v]);
      if (d.alive[u] && --indeg[u] == 0) queue.push_back(u);
    }
    d.next[v] = -1;
  }
}

ActiveGraph build_active_graph(const Instance& inst, const GVector& x) {
  const std::size_t m = inst.num_edges();
  FirmScan scan = legal_f_pairs(inst, x);
  ActiveGraph g;
  g.sign.assign(m, 0);
  g.raw.next.assign(2 * m, -1);
  g.raw.alive.assign(2 * m, 0);
  auto wv = [](EdgeId e) { return static_cast<std::int64_t>(2 * e); };
  auto fv = [](EdgeId e) { return static_cast<std::int64_t>(2 * e + 1); };
  for (EdgeId e = 0; e < m; ++e) {
    if (scan.plus[e]) {
      g.sign[e] = 1;
      g.raw.alive[2 * e] = g.raw.alive[2 * e + 1] = 1;
      g.raw.next[2 * e] = fv(e);
    } else if (scan.minus[e]) {
      g.sign[e] = -1;
      g.raw.alive[2 * e] = g.raw.alive[2 * e + 1] = 1;
      g.raw.next[2 * e + 1] = wv(e);
    }
  }
  for (const Tandem& t : scan.legal_pairs) {
    if (!scan.minus[t.second]) throw InvariantViolation("legal pair drops an edge outside the negative set");
    g.tandems.push_back(t);
    g.raw.next[2 * t.first + 1] = fv(t.second);
  }
  for (EdgeId c = 0; c < m; ++c) {
    if (!scan.minus[c]) continue;
    if (auto t = essential_impl(inst, x, c, scan.plus, false)) {
      g.tandems.push_back(*t);
      g.raw.next[2 * c] = wv(t->second);
    }
  }
  g.cleaned = g.raw;
  clean(g.cleaned);

  std::vector<char> visited(2 * m, 0);
  for (std::size_t v = 0; v < 2 * m; ++v) {
    if (!g.cleaned.alive[v] || visited[v]) continue;
    std::vector<std::size_t> cyc;
    std::size_t u = v;
    do {
      if (visited[u] || !g.cleaned.alive[u] || g.cleaned.next[u] < 0)
        throw InvariantViolation("cleaned active graph is not a union of cycles");
      visited[u] = 1;
      cyc.push_back(u);
      u = static_cast<std::size_t>(g.cleaned.next[u]);
    } while (u != v);
    // Start at the worker copy of a positive edge; copies then come in pairs.
    std::size_t start = cyc.size();
    for (std::size_t i = 0; i < cyc.size(); ++i)
      if (cyc[i] % 2 == 0 && g.sign[cyc[i] / 2] == 1) {
        start = i;
        break;
      }
    if (start == cyc.size() || cyc.size() % 2 != 0)
      throw InvariantViolation("active cycle without a positive edge");
    std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(start), cyc.end());
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; i < cyc.size(); i += 2) {
      if (cyc[i] / 2 != cyc[i + 1] / 2) throw InvariantViolation("active cycle copies out of step");
      edges.push_back(cyc[i] / 2);
    }
    g.rotations.emplace_back(std::move(edges));
  }
  std::sort(g.rotations.begin(), g.rotations.end());
  return g;
}

std::vector<Rotation> rotations_at(const Instance& inst, const GVector& x) {
  return build_active_graph(inst, x).rotations;
}

GVector apply_rotation(const Instance& inst, const GVector& x, const Rotation& r, int weight) {
  if (weight < 1) throw PreconditionError("rotation weight must be positive");
  require_in_box(inst, x);
  GVector y = x;
  auto cyc = r.cycle();
  for (std::size_t i = 0; i < cyc.size(); ++i) y[cyc[i]] += i % 2 == 0 ? weight : -weight;
  if (!in_box(inst, y)) throw PreconditionError("rotation shift leaves the capacity box");
  return y;
}

bool is_rotation_applicable(const Instance& inst, const GVector& x, const Rotation& r) {
  auto cyc = r.cycle();
  const std::size_t k = cyc.size();
  for (EdgeId e : cyc)
    if (e >= inst.num_edges()) return false;
  // Firm side: (a_i, c_i) legal.
  for (std::size_t i = 0; i < k; i += 2) {
    EdgeId a = cyc[i], c = cyc[i + 1];
    if (inst.edge(a).firm != inst.edge(c).firm) return false;
    Interest in = is_interesting(inst, x, a, inst.edge(a).firm);
    if (in.kind != InterestKind::exchange || *in.dropped != c) return false;
  }
  // Worker side: (c_i, a_{i+1}) essential.
  std::vector<char> plus(inst.num_edges(), 0);
  std::vector<char> known(inst.num_edges(), 0);
  for (std::size_t i = 1; i < k; i += 2) {
    EdgeId c = cyc[i], a = cyc[(i + 1) % k];
    VertexId w = inst.edge(c).worker;
    if (inst.edge(a).worker != w) return false;
    for (EdgeId d : inst.incident(w)) {
      if (known[d]) continue;
      known[d] = 1;
      plus[d] = is_interesting(inst, x, d, inst.edge(d).firm).interesting();
    }
    auto t = essential_impl(inst, x, c, plus, false);
    if (!t || t->second != a) return false;
  }
  return true;
}

int max_weight_linear(const Instance& inst, const GVector& x, const Rotation& r) {
  if (!is_rotation_applicable(inst, x, r)) throw PreconditionError("rotation not applicable");
  std::vector<int> chi = r.incidence(inst.num_edges());
  auto shift = [&](const GVector& y) {
    GVector z = y;
    for (EdgeId e = 0; e < z.size(); ++e) z[e] += chi[e];
    return z;
  };
  GVector y = shift(x);
  if (!in_box(inst, y) || !is_stable(inst, y))
    throw InvariantViolation("unit shift along an applicable rotation is not stable");
  int lambda = 1;
  while (true) {
    bool applicable = is_rotation_applicable(inst, y, r);
    GVector next = shift(y);
    bool next_stable = in_box(inst, next) && is_stable(inst, next);
    if (applicable != next_stable)
      throw InvariantViolation("tandem persistence disagrees with stability of the next shift");
    if (!applicable) return lambda;
    y = std::move(next);
    ++lambda;
  }
}

WeightSearch max_weight_binary(const Instance& inst, const GVector& x, const Rotation& r) {
  if (!is_rotation_applicable(inst, x, r)) throw PreconditionError("rotation not applicable");
  int nu = inst.max_capacity();
  for (EdgeId a : r.positive()) nu = std::min(nu, inst.edge(a).capacity - x[a]);
  for (EdgeId c : r.negative()) nu = std::min(nu, x[c]);
  std::vector<int> chi = r.incidence(inst.num_edges());
  int probes = 0;
  auto probe = [&](int mu) {
    ++probes;
    GVector y = x;
    for (EdgeId e = 0; e < y.size(); ++e) y[e] += mu * chi[e];
    return in_box(inst, y) && is_stable(inst, y) && is_rotation_applicable(inst, y, r);
  };
  int lambda = 1;
  bool lambda_extends = false;  // known: r still applicable at x + lambda * chi
  while (nu - lambda > 1) {
    int mu = (lambda + nu) / 2;
    if (probe(mu)) {
      lambda = mu;
      lambda_extends = true;
    } else {
      nu = mu;
    }
  }
  if (nu > lambda && (lambda_extends || probe(lambda))) return {nu, probes};
  return {lambda, probes};
}

int max_weight(const Instance& inst, const GVector& x, const Rotation& r) {
  return inst.gapless() ? max_weight_binary(inst, x, r).weight : max_weight_linear(inst, x, r);
}

std::string active_graph_dot(const Instance& inst, const ActiveGraph& g) {
  std::ostringstream os;
  os << "digraph active {\n";
  for (std::size_t v = 0; v < g.raw.next.size(); ++v) {
    if (!g.raw.alive[v]) continue;
    EdgeId e = v / 2;
    const Edge& ed = inst.edge(e);
    std::string owner = inst.vertex(v % 2 == 0 ? ed.worker : ed.firm).name;
    os << "  n" << v << " [label=\"" << owner << "^" << e << (g.sign[e] > 0 ? "+" : "-") << "\""
       << (g.cleaned.alive[v] ? ", style=bold" : "") << "];\n";
  }
  for (std::size_t v = 0; v < g.raw.next.size(); ++v)
    if (g.raw.alive[v] && g.raw.next[v] >= 0) os << "  n" << v << " -> n" << g.raw.next[v] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace sgmm
