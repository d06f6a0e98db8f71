#include "sgmm/stability.hpp"

#include <algorithm>

#include "sgmm/error.hpp"

namespace sgmm {

LocalVector restrict_to(const Instance& inst, const GVector& x, VertexId v) {
  LocalVector z;
  for (EdgeId e : inst.incident(v)) z.push_back(x[e]);
  return z;
}

bool in_box(const Instance& inst, const GVector& x) {
  if (x.size() != inst.num_edges()) return false;
  for (EdgeId e = 0; e < x.size(); ++e)
    if (x[e] < 0 || x[e] > inst.edge(e).capacity) return false;
  return true;
}

void require_in_box(const Instance& inst, const GVector& x) {
  if (x.size() != inst.num_edges()) throw PreconditionError("vector length differs from edge count");
  if (!in_box(inst, x)) throw PreconditionError("vector outside the capacity box");
}

bool is_acceptable_at(const Instance& inst, const GVector& x, VertexId v) {
  LocalVector z = restrict_to(inst, x, v);
  return inst.cf(v)(z) == z;
}

bool is_acceptable(const Instance& inst, const GVector& x) {
  require_in_box(inst, x);
  for (VertexId v = 0; v < inst.num_vertices(); ++v)
    if (!is_acceptable_at(inst, x, v)) return false;
  return true;
}

Interest is_interesting(const Instance& inst, const GVector& x, EdgeId e, VertexId v) {
  std::size_t li = inst.local_index(v, e);
  if (x[e] >= inst.edge(e).capacity) return {};
  LocalVector base = restrict_to(inst, x, v);
  LocalVector z = base;
  ++z[li];
  LocalVector out = inst.cf(v)(z);
  if (out == base) return {};
  if (out == z) return {InterestKind::grow, std::nullopt};
  // Otherwise exactly one other coordinate lost one unit.
  std::optional<EdgeId> dropped;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (out[j] == z[j]) continue;
    if (j == li || out[j] != z[j] - 1 || dropped)
      throw InvariantViolation("choice at " + inst.vertex(v).name +
                               " is neither a growth nor a single exchange");
    dropped = inst.incident(v)[j];
  }
  return {InterestKind::exchange, dropped};
}

StabilityReport stability_report(const Instance& inst, const GVector& x) {
  require_in_box(inst, x);
  StabilityReport rep;
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    ++rep.oracle_calls;
    if (!is_acceptable_at(inst, x, v)) {
      rep.acceptable = false;
      rep.unacceptable_vertices.push_back(v);
    }
  }
  const std::size_t m = inst.num_edges();
  rep.interesting_for_worker.assign(m, 0);
  rep.interesting_for_firm.assign(m, 0);
  for (EdgeId e = 0; e < m; ++e) {
    if (x[e] >= inst.edge(e).capacity) continue;
    rep.oracle_calls += 2;
    rep.interesting_for_worker[e] = is_interesting(inst, x, e, inst.edge(e).worker).interesting();
    rep.interesting_for_firm[e] = is_interesting(inst, x, e, inst.edge(e).firm).interesting();
    if (rep.interesting_for_worker[e] && rep.interesting_for_firm[e]) rep.blocking.push_back(e);
  }
  return rep;
}

bool is_stable(const Instance& inst, const GVector& x) {
  require_in_box(inst, x);
  if (!is_acceptable(inst, x)) return false;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (x[e] >= inst.edge(e).capacity) continue;
    if (is_interesting(inst, x, e, inst.edge(e).firm).interesting() &&
        is_interesting(inst, x, e, inst.edge(e).worker).interesting())
      return false;
  }
  return true;
}

Order local_order(const ChoiceFunction& cf, const LocalVector& z, const LocalVector& z2) {
  if (z == z2) return Order::equal;
  LocalVector j(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) j[i] = std::max(z[i], z2[i]);
  LocalVector c = cf(j);
  if (c == z2) return Order::less;
  if (c == z) return Order::greater;
  return Order::incomparable;
}

Order compare(const Instance& inst, const GVector& x, const GVector& y, Side side) {
  if (!is_acceptable(inst, x) || !is_acceptable(inst, y))
    throw PreconditionError("comparison needs acceptable vectors");
  bool less = false, greater = false;
  const auto& vs = side == Side::worker ? inst.workers() : inst.firms();
  for (VertexId v : vs) {
    switch (local_order(inst.cf(v), restrict_to(inst, x, v), restrict_to(inst, y, v))) {
      case Order::equal:
        break;
      case Order::less:
        less = true;
        break;
      case Order::greater:
        greater = true;
        break;
      case Order::incomparable:
        return Order::incomparable;
    }
  }
  if (less && greater) return Order::incomparable;
  if (less) return Order::less;
  if (greater) return Order::greater;
  return x == y ? Order::equal : Order::incomparable;
}

}  // namespace sgmm
