#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/rotation.hpp"

namespace sgmm {

/// One labeled rotation occurrence.
struct PosetElement {
  std::size_t rotation_id;
  int occurrence;  // 1-based
  int tau;
  GVector anchor;     // lowest point where only this rotation remains to apply
  GVector successor;  // anchor shifted by tau along the rotation
};

class WeightedPoset {
 public:
  /// Elements must be listed in a linear extension; edges (u, v) mean v
  /// covers u. Redundant edges are removed and counted.
  WeightedPoset(std::vector<Rotation> rotations, std::vector<PosetElement> elements,
                std::vector<std::pair<std::size_t, std::size_t>> edges, GVector xmin, GVector xmax);

  std::size_t size() const { return elements_.size(); }
  const PosetElement& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<PosetElement>& elements() const { return elements_; }
  const std::vector<Rotation>& rotations() const { return rotations_; }
  const Rotation& rotation_of(std::size_t i) const { return rotations_.at(elements_.at(i).rotation_id); }
  const std::vector<std::pair<std::size_t, std::size_t>>& hasse() const { return hasse_; }
  /// Strict order: u lies below v.
  bool below(std::size_t u, std::size_t v) const { return reach_.at(u).at(v); }
  std::optional<std::size_t> find(std::size_t rotation_id, int occurrence) const;
  std::optional<std::size_t> rotation_id(const Rotation& r) const;
  const GVector& xmin() const { return xmin_; }
  const GVector& xmax() const { return xmax_; }
  std::size_t shortcuts_removed() const { return removed_; }

 private:
  std::vector<Rotation> rotations_;
  std::vector<PosetElement> elements_;
  std::vector<std::pair<std::size_t, std::size_t>> hasse_;
  std::vector<std::vector<char>> reach_;
  GVector xmin_, xmax_;
  std::size_t removed_ = 0;
};

WeightedPoset build_poset(const Instance& inst);

/// Weights per element, indexed like the poset.
struct ClosedFunction {
  std::vector<int> values;
  friend bool operator==(const ClosedFunction&, const ClosedFunction&) = default;
  friend auto operator<=>(const ClosedFunction&, const ClosedFunction&) = default;
};

ClosedFunction phi(const Instance& inst, const WeightedPoset& p, const GVector& x);
GVector phi_inverse(const Instance& inst, const WeightedPoset& p, const ClosedFunction& lambda);
/// Throws PreconditionError when a value lies outside [0, tau].
bool is_closed(const WeightedPoset& p, const ClosedFunction& lambda);

/// Lexicographic order over the element index. Throws CapExceeded when the
/// product of (tau + 1) exceeds cap.
void for_each_closed_function(const WeightedPoset& p, std::uint64_t cap,
                              const std::function<void(const ClosedFunction&)>& fn);
std::vector<ClosedFunction> enumerate_closed_functions(const WeightedPoset& p,
                                                       std::uint64_t cap = 1'000'000);

/// Nodes labeled "R<rotation>#<occurrence>:<tau>".
std::string poset_dot(const WeightedPoset& p);
/// "id rotation-id occurrence tau" lines, then "edge id id" lines.
std::string poset_text(const WeightedPoset& p);

}  // namespace sgmm
