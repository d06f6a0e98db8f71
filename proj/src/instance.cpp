#include "sgmm/instance.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sgmm/error.hpp"

namespace sgmm {

namespace {

std::size_t position(const std::vector<EdgeId>& inc, EdgeId e, const std::string& vertex) {
  auto it = std::find(inc.begin(), inc.end(), e);
  if (it == inc.end())
    throw PreconditionError("choice function of " + vertex + " names an edge not incident to it");
  return static_cast<std::size_t>(it - inc.begin());
}

}  // namespace

Instance::Instance(std::vector<Vertex> vertices, std::vector<Edge> edges,
                   std::vector<std::optional<ChoiceFunctionSpec>> specs, bool gapless)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      specs_(std::move(specs)),
      gapless_(gapless) {
  const std::size_t nv = vertices_.size();
  if (specs_.size() != nv) throw PreconditionError("one choice-function slot per vertex required");
  std::set<std::string> names;
  for (VertexId v = 0; v < nv; ++v) {
    if (!names.insert(vertices_[v].name).second)
      throw PreconditionError("duplicate vertex name " + vertices_[v].name);
    (vertices_[v].side == Side::worker ? workers_ : firms_).push_back(v);
  }
  incident_.assign(nv, {});
  local_at_worker_.resize(edges_.size());
  local_at_firm_.resize(edges_.size());
  std::set<std::pair<VertexId, VertexId>> pairs;
  std::set<std::string> labels;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.worker >= nv || ed.firm >= nv) throw PreconditionError("edge endpoint out of range");
    if (vertices_[ed.worker].side != Side::worker || vertices_[ed.firm].side != Side::firm)
      throw PreconditionError("edge must join a worker to a firm");
    if (ed.capacity < 0) throw PreconditionError("negative edge capacity");
    if (!pairs.insert({ed.worker, ed.firm}).second)
      throw PreconditionError("parallel edges between " + vertices_[ed.worker].name + " and " +
                              vertices_[ed.firm].name);
    if (!ed.label.empty() && !labels.insert(ed.label).second)
      throw PreconditionError("duplicate edge label " + ed.label);
    local_at_worker_[e] = incident_[ed.worker].size();
    incident_[ed.worker].push_back(e);
    local_at_firm_[e] = incident_[ed.firm].size();
    incident_[ed.firm].push_back(e);
  }
  cfs_.reserve(nv);
  for (VertexId v = 0; v < nv; ++v) {
    const auto& inc = incident_[v];
    LocalVector caps = local_capacities(v);
    const std::string& name = vertices_[v].name;
    if (!specs_[v]) {
      if (!inc.empty()) throw PreconditionError("vertex " + name + " has edges but no choice function");
      cfs_.push_back(ChoiceFunction::linear_order({}, {}, 0));
      continue;
    }
    const ChoiceFunctionSpec& s = *specs_[v];
    if (const auto* lin = std::get_if<LinearOrderSpec>(&s)) {
      std::vector<std::size_t> order;
      for (EdgeId e : lin->order) order.push_back(position(inc, e, name));
      cfs_.push_back(ChoiceFunction::linear_order(std::move(caps), std::move(order), lin->quota));
    } else if (const auto* bal = std::get_if<BalanceSpec>(&s)) {
      cfs_.push_back(ChoiceFunction::balance(std::move(caps), position(inc, bal->anchor, name),
                                             position(inc, bal->left, name),
                                             position(inc, bal->right, name), bal->quota));
    } else {
      cfs_.push_back(ChoiceFunction::table(std::move(caps), std::get<TableSpec>(s).images));
    }
  }
}

std::size_t Instance::local_index(VertexId v, EdgeId e) const {
  const Edge& ed = edges_.at(e);
  if (ed.worker == v) return local_at_worker_[e];
  if (ed.firm == v) return local_at_firm_[e];
  throw PreconditionError("vertex " + vertices_.at(v).name + " is not an endpoint of edge " +
                          std::to_string(e));
}

std::optional<VertexId> Instance::find_vertex(std::string_view name) const {
  for (VertexId v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].name == name) return v;
  return std::nullopt;
}

std::optional<EdgeId> Instance::find_edge(std::string_view label) const {
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].label == label) return e;
  return std::nullopt;
}

LocalVector Instance::local_capacities(VertexId v) const {
  LocalVector caps;
  for (EdgeId e : incident_.at(v)) caps.push_back(edges_[e].capacity);
  return caps;
}

GVector Instance::capacities() const {
  GVector b = GVector::zeros(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) b[e] = edges_[e].capacity;
  return b;
}

int Instance::max_capacity() const {
  int m = 0;
  for (const Edge& e : edges_) m = std::max(m, e.capacity);
  return m;
}

Instance Instance::swapped() const {
  Instance r = *this;
  for (Vertex& v : r.vertices_) v.side = opposite(v.side);
  for (Edge& e : r.edges_) std::swap(e.worker, e.firm);
  std::swap(r.workers_, r.firms_);
  std::swap(r.local_at_worker_, r.local_at_firm_);
  return r;
}

}  // namespace sgmm
