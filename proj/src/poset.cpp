#include "sgmm/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sgmm/error.hpp"
#include "sgmm/route.hpp"
#include "sgmm/stability.hpp"

namespace sgmm {

WeightedPoset::WeightedPoset(std::vector<Rotation> rotations, std::vector<PosetElement> elements,
                             std::vector<std::pair<std::size_t, std::size_t>> edges, GVector xmin,
                             GVector xmax)
    : rotations_(std::move(rotations)),
      elements_(std::move(elements)),
      xmin_(std::move(xmin)),
      xmax_(std::move(xmax)) {
  const std::size_t n = elements_.size();
  for (const auto& el : elements_) {
    if (el.rotation_id >= rotations_.size()) throw PreconditionError("element names an unknown rotation");
    if (el.tau < 1 || el.occurrence < 1) throw PreconditionError("element weight and label must be positive");
  }
  std::set<std::pair<std::size_t, std::size_t>> unique(edges.begin(), edges.end());
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [u, v] : unique) {
    if (u >= v || v >= n) throw PreconditionError("poset edges must follow the element order");
    succ[u].push_back(v);
  }
  reach_.assign(n, std::vector<char>(n, 0));
  for (std::size_t u = n; u-- > 0;)
    for (std::size_t v : succ[u]) {
      reach_[u][v] = 1;
      for (std::size_t w = v + 1; w < n; ++w)
        if (reach_[v][w]) reach_[u][w] = 1;
    }
  for (auto [u, v] : unique) {
    bool shortcut = false;
    for (std::size_t w : succ[u])
      if (w != v && reach_[w][v]) shortcut = true;
    if (shortcut)
      ++removed_;
    else
      hasse_.emplace_back(u, v);
  }
}

std::optional<std::size_t> WeightedPoset::find(std::size_t rotation_id, int occurrence) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].rotation_id == rotation_id && elements_[i].occurrence == occurrence) return i;
  return std::nullopt;
}

std::optional<std::size_t> WeightedPoset::rotation_id(const Rotation& r) const {
  for (std::size_t i = 0; i < rotations_.size(); ++i)
    if (rotations_[i] == r) return i;
  return std::nullopt;
}

WeightedPoset build_poset(const Instance& inst) {
  GVector xmin = find_xmin_ag(inst);
  Route t0 = principal_route_from(inst, xmin);
  const std::size_t n = t0.size();
  std::vector<GVector> points = t0.points(inst);

  std::vector<Rotation> rotations;
  std::map<Rotation, std::size_t> ids;
  std::vector<PosetElement> elements;
  std::map<std::pair<std::size_t, int>, std::size_t> by_label;
  std::vector<int> labels = t0.occurrence_labels();
  for (std::size_t i = 0; i < n; ++i) {
    const Rotation& r = t0.steps[i].rotation;
    auto [it, fresh] = ids.emplace(r, rotations.size());
    if (fresh) rotations.push_back(r);
    elements.push_back({it->second, labels[i], t0.steps[i].weight, {}, {}});
    by_label[{it->second, labels[i]}] = i;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const Rotation& ri = t0.steps[i].rotation;
    std::map<Rotation, int> count;
    for (std::size_t k = 0; k < i; ++k) ++count[t0.steps[k].rotation];
    // Climb with every other rotation until only ri remains.
    GVector x = points[i];
    while (true) {
      std::vector<Rotation> rs = rotations_at(inst, x);
      if (std::find(rs.begin(), rs.end(), ri) == rs.end())
        throw InvariantViolation("rotation lost applicability while building its girdle");
      auto other = std::find_if(rs.begin(), rs.end(), [&](const Rotation& r) { return !(r == ri); });
      if (other == rs.end()) break;
      Rotation r = *other;
      x = apply_rotation(inst, x, r, max_weight(inst, x, r));
      ++count[r];
    }
    if (count[ri] + 1 != elements[i].occurrence)
      throw InvariantViolation("occurrence count of a rotation changed between routes");
    int tau = max_weight(inst, x, ri);
    if (tau != elements[i].tau) throw InvariantViolation("rotation weight differs within its girdle");
    GVector y = apply_rotation(inst, x, ri, tau);
    ++count[ri];
    for (const Rotation& r : rotations_at(inst, y)) {
      auto id = ids.find(r);
      if (id == ids.end()) throw InvariantViolation("successor rotation absent from the full route");
      auto el = by_label.find({id->second, count[r] + 1});
      if (el == by_label.end()) throw InvariantViolation("successor occurrence absent from the full route");
      edges.emplace_back(i, el->second);
    }
    elements[i].anchor = std::move(x);
    elements[i].successor = std::move(y);
  }
  return WeightedPoset(std::move(rotations), std::move(elements), std::move(edges), xmin,
                       points.back());
}

bool is_closed(const WeightedPoset& p, const ClosedFunction& lambda) {
  if (lambda.values.size() != p.size()) throw PreconditionError("weight vector has the wrong length");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (lambda.values[i] < 0 || lambda.values[i] > p.element(i).tau)
      throw PreconditionError("weight outside [0, tau]");
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (lambda.values[v] == 0) continue;
    for (std::size_t u = 0; u < v; ++u)
      if (p.below(u, v) && lambda.values[u] != p.element(u).tau) return false;
  }
  return true;
}

ClosedFunction phi(const Instance& inst, const WeightedPoset& p, const GVector& x) {
  if (!is_stable(inst, x)) throw PreconditionError("phi needs a stable vector");
  ClosedFunction lambda{std::vector<int>(p.size(), 0)};
  if (x == p.xmin()) return lambda;
  Route r = route_between(inst, p.xmin(), x);
  std::vector<int> labels = r.occurrence_labels();
  for (std::size_t k = 0; k < r.size(); ++k) {
    auto id = p.rotation_id(r.steps[k].rotation);
    if (!id) throw InvariantViolation("route uses a rotation unknown to the poset");
    auto el = p.find(*id, labels[k]);
    if (!el) throw InvariantViolation("route uses an occurrence unknown to the poset");
    lambda.values[*el] = r.steps[k].weight;
  }
  if (!is_closed(p, lambda)) throw InvariantViolation("weights read from a route are not closed");
  return lambda;
}

GVector phi_inverse(const Instance& inst, const WeightedPoset& p, const ClosedFunction& lambda) {
  if (!is_closed(p, lambda)) throw PreconditionError("weight function is not closed");
  GVector x = p.xmin();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (lambda.values[i] == 0) continue;
    auto cyc = p.rotation_of(i).cycle();
    for (std::size_t k = 0; k < cyc.size(); ++k)
      x[cyc[k]] += k % 2 == 0 ? lambda.values[i] : -lambda.values[i];
  }
  if (!in_box(inst, x) || !is_stable(inst, x))
    throw InvariantViolation("closed function maps to an unstable vector");
  return x;
}

void for_each_closed_function(const WeightedPoset& p, std::uint64_t cap,
                              const std::function<void(const ClosedFunction&)>& fn) {
  std::uint64_t product = 1;
  for (const auto& el : p.elements()) {
    product *= static_cast<std::uint64_t>(el.tau) + 1;
    if (product > cap) throw CapExceeded("closed-function enumeration exceeds its cap");
  }
  const std::size_t n = p.size();
  ClosedFunction lambda{std::vector<int>(n, 0)};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      fn(lambda);
      return;
    }
    bool free = true;
    for (std::size_t u = 0; u < i && free; ++u)
      if (p.below(u, i) && lambda.values[u] != p.element(u).tau) free = false;
    int top = free ? p.element(i).tau : 0;
    for (int v = 0; v <= top; ++v) {
      lambda.values[i] = v;
      rec(i + 1);
    }
    lambda.values[i] = 0;
  };
  rec(0);
}

std::vector<ClosedFunction> enumerate_closed_functions(const WeightedPoset& p, std::uint64_t cap) {
  std::vector<ClosedFunction> all;
  for_each_closed_function(p, cap, [&](const ClosedFunction& l) { all.push_back(l); });
  return all;
}

std::string poset_dot(const WeightedPoset& p) {
  std::ostringstream os;
  os << "digraph poset {\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& el = p.element(i);
    os << "  u" << i << " [label=\"R" << el.rotation_id << "#" << el.occurrence << ":" << el.tau
       << "\"];\n";
  }
  for (auto [u, v] : p.hasse()) os << "  u" << u << " -> u" << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string poset_text(const WeightedPoset& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& el = p.element(i);
    os << i << ' ' << el.rotation_id << ' ' << el.occurrence << ' ' << el.tau << '\n';
  }
  for (auto [u, v] : p.hasse()) os << "edge " << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace sgmm
