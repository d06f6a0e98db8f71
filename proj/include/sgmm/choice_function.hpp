#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sgmm {

/// Values on the edges incident to one vertex, in incidence order.
using LocalVector = std::vector<int>;

// Local boxes are enumerated row-major: the last coordinate varies fastest.
std::uint64_t box_volume(std::span<const int> capacities);
std::uint64_t box_rank(std::span<const int> capacities, std::span<const int> z);
LocalVector box_unrank(std::span<const int> capacities, std::uint64_t rank);
bool in_box(std::span<const int> capacities, std::span<const int> z);
void for_each_in_range(std::span<const int> lo, std::span<const int> hi,
                       const std::function<void(const LocalVector&)>& fn);

enum class CfKind { linear_order, balance, table };

/// A choice function on the local box {0 <= z <= capacities}.
class ChoiceFunction {
 public:
  /// Keeps z whole up to the quota, filling in `order` (best first).
  static ChoiceFunction linear_order(LocalVector capacities, std::vector<std::size_t> order,
                                     int quota);
  /// Keeps the anchor whole and splits the rest of the quota evenly between
  /// left and right; a split favouring right only when left is exhausted.
  static ChoiceFunction balance(LocalVector capacities, std::size_t anchor, std::size_t left,
                                std::size_t right, int quota);
  /// Explicit images indexed by box_rank.
  static ChoiceFunction table(LocalVector capacities, std::vector<LocalVector> images);

  LocalVector operator()(std::span<const int> z) const;

  CfKind kind() const;
  std::size_t arity() const { return caps_.size(); }
  const LocalVector& capacities() const { return caps_; }
  std::optional<int> quota() const;

  const std::vector<std::size_t>& order() const;
  std::size_t anchor() const;
  std::size_t left() const;
  std::size_t right() const;
  const std::vector<LocalVector>& images() const;

 private:
  struct Linear {
    std::vector<std::size_t> order;
    int quota;
  };
  struct Balance {
    std::size_t anchor, left, right;
    int quota;
  };
  struct Table {
    std::vector<LocalVector> images;
  };

  ChoiceFunction(LocalVector caps, std::variant<Linear, Balance, Table> rule)
      : caps_(std::move(caps)), rule_(std::move(rule)) {}

  LocalVector caps_;
  std::variant<Linear, Balance, Table> rule_;
};

struct AxiomCounterexample {
  std::string axiom;
  LocalVector z;
  LocalVector z2;
};

struct AxiomReport {
  bool shrinking = true;  // C(z) <= z
  bool a1 = true;
  bool a2 = true;
  bool a3 = true;
  std::optional<bool> a4;  // only for rules with a quota
  std::optional<bool> stationary;  // unset when the all-pairs scan is skipped
  std::uint64_t pairs_examined = 0;
  std::vector<AxiomCounterexample> counterexamples;  // first witness per failing axiom

  bool passes() const {
    return shrinking && a1 && a2 && a3 && a4.value_or(true) && stationary.value_or(true);
  }
  const AxiomCounterexample* counterexample(const std::string& axiom) const;
};

/// Exhaustive check of the axioms over the whole local box. Throws
/// CapExceeded when the number of pairs to examine exceeds pair_cap.
/// Stationarity needs all ordered pairs; without it only z' <= z pairs are visited.
AxiomReport check_axioms(const ChoiceFunction& cf, std::uint64_t pair_cap = 1'000'000,
                         bool with_stationarity = true);

/// True iff C(z v z2) == z, i.e. z2 is revealed worse than z.
bool revealed_prefers(const ChoiceFunction& cf, std::span<const int> z, std::span<const int> z2);

/// Largest y >= z with C(y) == z, computed one coordinate at a time.
LocalVector closure(const ChoiceFunction& cf, std::span<const int> z);

struct JoinMeet {
  LocalVector join;
  LocalVector meet;
};
/// join = C(z v z2), meet = C(closure(z) ^ closure(z2)).
JoinMeet local_join_meet(const ChoiceFunction& cf, std::span<const int> z,
                         std::span<const int> z2);

struct GaplessReport {
  bool holds = true;
  std::vector<LocalVector> witness;  // z1, z2, z3 when violated
  std::size_t edge = 0;
};
/// Checks the exchange-persistence condition on all revealed-preference
/// triples of acceptable vectors.
GaplessReport check_gapless(const ChoiceFunction& cf, std::uint64_t triple_cap = 50'000'000);

}  // namespace sgmm
