#include "sgmm/optimizer.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>
#include <deque>
#include <sstream>

#include "sgmm/error.hpp"

namespace sgmm {

std::int64_t cost_of(const CostVector& c, const GVector& x) {
  if (c.size() != x.size()) throw PreconditionError("cost vector length differs from edge count");
  std::int64_t s = 0;
  for (std::size_t e = 0; e < c.size(); ++e) s += c[e] * x[e];
  return s;
}

std::int64_t rotation_cost(const Rotation& r, const CostVector& c) {
  std::int64_t s = 0;
  auto cyc = r.cycle();
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (cyc[i] >= c.size()) throw PreconditionError("cost vector too short for rotation");
    s += i % 2 == 0 ? c[cyc[i]] : -c[cyc[i]];
  }
  return s;
}

ClosureNetwork build_closure_network(const WeightedPoset& p, const CostVector& c) {
  ClosureNetwork net;
  const std::size_t n = p.size();
  net.elements = n;
  net.source = n;
  net.sink = n + 1;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t w = rotation_cost(p.rotation_of(i), c) * p.element(i).tau;
    net.element_cost.push_back(w);
    total += w < 0 ? -w : w;
  }
  net.infinity = total + 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t w = net.element_cost[i];
    if (w > 0) net.arcs.push_back({net.source, i, w});
    if (w < 0) net.arcs.push_back({i, net.sink, -w});
  }
  // Lower to upper: a sink-side element drags everything below it along.
  for (auto [u, v] : p.hasse()) net.arcs.push_back({u, v, net.infinity});
  return net;
}

CutResult min_cut_closure(const ClosureNetwork& net) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, std::int64_t,
                      boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                      boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
  const std::size_t nodes = net.elements + 2;
  Graph g(nodes);
  auto cap = boost::get(boost::edge_capacity, g);
  auto res = boost::get(boost::edge_residual_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  for (const Arc& a : net.arcs) {
    auto fwd = boost::add_edge(a.from, a.to, g).first;
    auto bwd = boost::add_edge(a.to, a.from, g).first;
    cap[fwd] = a.capacity;
    cap[bwd] = 0;
    rev[fwd] = bwd;
    rev[bwd] = fwd;
  }
  CutResult r;
  r.flow_value = boost::push_relabel_max_flow(g, net.source, net.sink);

  // Nodes that still reach the sink in the residual graph.
  std::vector<std::vector<std::size_t>> into(nodes);
  for (auto [it, end] = boost::edges(g); it != end; ++it)
    if (res[*it] > 0) into[boost::target(*it, g)].push_back(boost::source(*it, g));
  std::vector<char> sink_side(nodes, 0);
  std::deque<std::size_t> queue{net.sink};
  sink_side[net.sink] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : into[v])
      if (!sink_side[u]) {
        sink_side[u] = 1;
        queue.push_back(u);
      }
  }
  if (sink_side[net.source]) throw InvariantViolation("max flow left an augmenting path");
  for (const Arc& a : net.arcs)
    if (!sink_side[a.from] && sink_side[a.to]) r.cut_value += a.capacity;
  if (r.cut_value != r.flow_value) throw InvariantViolation("cut value differs from flow value");
  for (std::size_t i = 0; i < net.elements; ++i)
    if (sink_side[i]) r.ideal.push_back(i);
  return r;
}

MinCostResult min_cost_stable(const Instance& inst, const CostVector& c, const WeightedPoset& p) {
  if (c.size() != inst.num_edges()) throw PreconditionError("cost vector length differs from edge count");
  ClosureNetwork net = build_closure_network(p, c);
  CutResult cut = min_cut_closure(net);
  MinCostResult out;
  out.ideal = cut.ideal;
  out.lambda.values.assign(p.size(), 0);
  std::int64_t predicted = cost_of(c, p.xmin());
  for (std::size_t i : cut.ideal) {
    out.lambda.values[i] = p.element(i).tau;
    predicted += net.element_cost[i];
  }
  out.x = phi_inverse(inst, p, out.lambda);
  out.cost = cost_of(c, out.x);
  if (out.cost != predicted) throw InvariantViolation("optimal cost differs from its certificate");
  return out;
}

MinCostResult min_cost_stable(const Instance& inst, const CostVector& c) {
  return min_cost_stable(inst, c, build_poset(inst));
}

std::string to_dimacs(const ClosureNetwork& net) {
  std::ostringstream os;
  os << "c closure network\n";
  os << "p max " << net.elements + 2 << ' ' << net.arcs.size() << '\n';
  os << "n " << net.source + 1 << " s\n";
  os << "n " << net.sink + 1 << " t\n";
  for (const Arc& a : net.arcs) os << "a " << a.from + 1 << ' ' << a.to + 1 << ' ' << a.capacity << '\n';
  return os.str();
}

}  // namespace sgmm
