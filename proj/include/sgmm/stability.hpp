#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sgmm/instance.hpp"

namespace sgmm {

LocalVector restrict_to(const Instance& inst, const GVector& x, VertexId v);
bool in_box(const Instance& inst, const GVector& x);
void require_in_box(const Instance& inst, const GVector& x);

bool is_acceptable_at(const Instance& inst, const GVector& x, VertexId v);
bool is_acceptable(const Instance& inst, const GVector& x);

enum class InterestKind { none, grow, exchange };

/// Effect of offering one more unit of e to v at x.
struct Interest {
  InterestKind kind = InterestKind::none;
  std::optional<EdgeId> dropped;  // set for exchange
  bool interesting() const { return kind != InterestKind::none; }
};

/// Saturated edges are never interesting. Assumes x is acceptable at v.
Interest is_interesting(const Instance& inst, const GVector& x, EdgeId e, VertexId v);

struct StabilityReport {
  bool acceptable = true;
  std::vector<VertexId> unacceptable_vertices;
  std::vector<char> interesting_for_worker;
  std::vector<char> interesting_for_firm;
  std::vector<EdgeId> blocking;
  std::size_t oracle_calls = 0;

  bool stable() const { return acceptable && blocking.empty(); }
};

StabilityReport stability_report(const Instance& inst, const GVector& x);
bool is_stable(const Instance& inst, const GVector& x);

enum class Order { less, equal, greater, incomparable };

/// Revealed-preference comparison of acceptable local vectors.
Order local_order(const ChoiceFunction& cf, const LocalVector& z, const LocalVector& z2);

/// Componentwise preference over all vertices of one side; `less` means x is
/// worse than y for every vertex of that side.
Order compare(const Instance& inst, const GVector& x, const GVector& y, Side side);
inline Order compare_F(const Instance& inst, const GVector& x, const GVector& y) {
  return compare(inst, x, y, Side::firm);
}
inline Order compare_W(const Instance& inst, const GVector& x, const GVector& y) {
  return compare(inst, x, y, Side::worker);
}

}  // namespace sgmm
