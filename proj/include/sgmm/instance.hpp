#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sgmm/choice_function.hpp"

namespace sgmm {

using VertexId = std::size_t;
using EdgeId = std::size_t;

enum class Side { worker, firm };

inline Side opposite(Side s) { return s == Side::worker ? Side::firm : Side::worker; }

struct Vertex {
  std::string name;
  Side side;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  VertexId worker;
  VertexId firm;
  int capacity;
  std::string label;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Choice-function declarations refer to global edge ids; Instance compiles
// them to positions in the incidence list of the vertex.
struct LinearOrderSpec {
  std::vector<EdgeId> order;  // best first
  int quota;
  friend bool operator==(const LinearOrderSpec&, const LinearOrderSpec&) = default;
};

struct BalanceSpec {
  EdgeId anchor;
  EdgeId left;
  EdgeId right;
  int quota;
  friend bool operator==(const BalanceSpec&, const BalanceSpec&) = default;
};

struct TableSpec {
  std::vector<LocalVector> images;  // indexed by box_rank over the incidence list
  friend bool operator==(const TableSpec&, const TableSpec&) = default;
};

using ChoiceFunctionSpec = std::variant<LinearOrderSpec, BalanceSpec, TableSpec>;

/// An integer vector on the edge set, indexed by EdgeId.
struct GVector {
  std::vector<int> values;

  GVector() = default;
  explicit GVector(std::vector<int> v) : values(std::move(v)) {}
  static GVector zeros(std::size_t n) { return GVector(std::vector<int>(n, 0)); }

  std::size_t size() const { return values.size(); }
  int operator[](EdgeId e) const { return values[e]; }
  int& operator[](EdgeId e) { return values[e]; }

  friend bool operator==(const GVector&, const GVector&) = default;
  friend auto operator<=>(const GVector&, const GVector&) = default;
};

class Instance {
 public:
  Instance(std::vector<Vertex> vertices, std::vector<Edge> edges,
           std::vector<std::optional<ChoiceFunctionSpec>> specs, bool gapless = false);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& workers() const { return workers_; }
  const std::vector<VertexId>& firms() const { return firms_; }

  std::span<const EdgeId> incident(VertexId v) const { return incident_.at(v); }
  std::size_t local_index(VertexId v, EdgeId e) const;
  VertexId endpoint(EdgeId e, Side s) const {
    return s == Side::worker ? edges_.at(e).worker : edges_.at(e).firm;
  }
  const ChoiceFunction& cf(VertexId v) const { return cfs_.at(v); }
  const std::optional<ChoiceFunctionSpec>& spec(VertexId v) const { return specs_.at(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view label) const;

  LocalVector local_capacities(VertexId v) const;
  GVector capacities() const;
  int max_capacity() const;
  bool gapless() const { return gapless_; }

  /// Same instance with the roles of workers and firms exchanged. Edge and
  /// vertex ids are preserved.
  Instance swapped() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::optional<ChoiceFunctionSpec>> specs_;
  bool gapless_;
  std::vector<VertexId> workers_, firms_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<std::size_t> local_at_worker_, local_at_firm_;
  std::vector<ChoiceFunction> cfs_;
};

}  // namespace sgmm
