#include "sgmm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "sgmm/choice_function.hpp"
#include "sgmm/error.hpp"

namespace sgmm {

namespace {

std::vector<std::string> split(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (seps.find(ch) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

int int_field(std::size_t line, std::string_view s, std::string_view what) {
  auto v = to_int(s);
  if (!v || *v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max())
    throw ParseError(line, "expected an integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  return static_cast<int>(*v);
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"worker", "firm", "edge", "cf", "gapless", "costs", "sgmm"};
  return k;
}

struct RawCf {
  std::size_t line;
  VertexId vertex;
  std::vector<std::string> tokens;
  std::vector<std::pair<std::size_t, std::string>> rows;
};

struct Builder {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, VertexId> names;
  std::vector<RawCf> cfs;
  bool gapless = false;
  std::vector<std::pair<std::size_t, std::string>> cost_lines;

  // Edge of v named by label or by the opposite endpoint.
  EdgeId ref(std::size_t line, VertexId v, const std::string& token) const {
    for (EdgeId e = 0; e < edges.size(); ++e) {
      const Edge& ed = edges[e];
      if (ed.worker != v && ed.firm != v) continue;
      VertexId other = ed.worker == v ? ed.firm : ed.worker;
      if (ed.label == token || vertices[other].name == token) return e;
    }
    throw ParseError(line, "cf " + vertices[v].name + ": no incident edge '" + token + "'");
  }
};

LocalVector parse_tuple(std::size_t line, std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError(line, "malformed tuple");
  LocalVector z;
  for (const auto& t : split(s.substr(1, s.size() - 2), ","))
    z.push_back(int_field(line, t, "tuple entry"));
  return z;
}

std::map<std::string, std::string> key_values(std::size_t line, const std::vector<std::string>& toks,
                                              std::size_t from) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + toks[i] + "'");
    kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return kv;
}

const std::string& need(std::size_t line, const std::map<std::string, std::string>& kv,
                        const std::string& key, const std::string& vertex) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(line, "cf " + vertex + ": missing " + key + "=");
  return it->second;
}

ChoiceFunctionSpec build_spec(const Builder& b, const RawCf& raw, const std::vector<EdgeId>& inc) {
  const std::string& vname = b.vertices[raw.vertex].name;
  const std::string& kind = raw.tokens.at(2);
  std::size_t line = raw.line;
  if (kind == "linear") {
    auto kv = key_values(line, raw.tokens, 3);
    LinearOrderSpec s;
    s.quota = int_field(line, need(line, kv, "quota", vname), "quota");
    for (const auto& t : split(need(line, kv, "order", vname), ",")) s.order.push_back(b.ref(line, raw.vertex, t));
    std::vector<EdgeId> sorted = s.order, expect = inc;
    std::sort(sorted.begin(), sorted.end());
    std::sort(expect.begin(), expect.end());
    if (sorted != expect)
      throw ParseError(line, "cf " + vname + ": order must list every incident edge exactly once");
    return s;
  }
  if (kind == "balance") {
    auto kv = key_values(line, raw.tokens, 3);
    BalanceSpec s;
    s.quota = int_field(line, need(line, kv, "quota", vname), "quota");
    s.anchor = b.ref(line, raw.vertex, need(line, kv, "anchor", vname));
    s.left = b.ref(line, raw.vertex, need(line, kv, "left", vname));
    s.right = b.ref(line, raw.vertex, need(line, kv, "right", vname));
    return s;
  }
  if (kind == "table") {
    if (raw.tokens.size() != 3) throw ParseError(line, "cf " + vname + ": table takes no options");
    LocalVector caps;
    for (EdgeId e : inc) caps.push_back(b.edges[e].capacity);
    std::uint64_t volume = box_volume(caps);
    if (volume > 10'000'000) throw ParseError(line, "cf " + vname + ": table box too large");
    std::vector<std::optional<LocalVector>> images(volume);
    for (const auto& [rline, text] : raw.rows) {
      auto arrow = text.find("->");
      if (arrow == std::string::npos) throw ParseError(rline, "table row needs '->'");
      std::string lhs, rhs;
      for (char ch : text.substr(0, arrow))
        if (!isspace(static_cast<unsigned char>(ch))) lhs += ch;
      for (char ch : text.substr(arrow + 2))
        if (!isspace(static_cast<unsigned char>(ch))) rhs += ch;
      LocalVector z = parse_tuple(rline, lhs), c = parse_tuple(rline, rhs);
      if (!in_box(caps, z) || c.size() != z.size())
        throw ParseError(rline, "cf " + vname + ": table row outside the local box");
      auto r = box_rank(caps, z);
      if (images[r]) throw ParseError(rline, "cf " + vname + ": duplicate table row");
      images[r] = c;
    }
    TableSpec s;
    for (auto& img : images) {
      if (!img) throw ParseError(line, "cf " + vname + ": table misses rows of the local box");
      s.images.push_back(*img);
    }
    return s;
  }
  throw ParseError(line, "cf " + vname + ": unknown rule '" + kind + "'");
}

std::string edge_ref(const Instance& inst, VertexId v, EdgeId e) {
  const Edge& ed = inst.edge(e);
  if (!ed.label.empty()) return ed.label;
  return inst.vertex(ed.worker == v ? ed.firm : ed.worker).name;
}

std::string tuple(const LocalVector& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z[i]);
  return s + ")";
}

std::optional<EdgeId> global_ref(const Instance& inst, const std::string& token) {
  if (auto e = inst.find_edge(token)) return e;
  if (auto v = to_int(token); v && *v >= 0 && static_cast<std::size_t>(*v) < inst.num_edges())
    return static_cast<EdgeId>(*v);
  return std::nullopt;
}

}  // namespace

InstanceFile parse_instance_file(std::string_view text, const ParseOptions& opt) {
  Builder b;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t lineno = 0;
  bool header = false;
  enum class Mode { normal, table, costs } mode = Mode::normal;
  while (std::getline(in, raw_line)) {
    ++lineno;
    std::string line = raw_line.substr(0, raw_line.find('#'));
    auto toks = split(line, " \t\r");
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "sgmm") throw ParseError(lineno, "missing 'sgmm <version>' header");
      if (toks[1] != "1") throw ParseError(lineno, "unsupported format version " + toks[1]);
      header = true;
      continue;
    }
    if (mode == Mode::table && toks[0].front() == '(') {
      b.cfs.back().rows.emplace_back(lineno, line);
      continue;
    }
    if (mode == Mode::costs && !keywords().count(toks[0])) {
      b.cost_lines.emplace_back(lineno, line);
      continue;
    }
    mode = Mode::normal;
    const std::string& kw = toks[0];
    if (kw == "worker" || kw == "firm") {
      if (toks.size() != 2) throw ParseError(lineno, kw + " takes one name");
      if (b.names.count(toks[1])) throw ParseError(lineno, "duplicate vertex " + toks[1]);
      b.names[toks[1]] = b.vertices.size();
      b.vertices.push_back({toks[1], kw == "worker" ? Side::worker : Side::firm});
    } else if (kw == "edge") {
      if (toks.size() != 4 && toks.size() != 5) throw ParseError(lineno, "edge <worker> <firm> <capacity> [label]");
      auto w = b.names.find(toks[1]);
      auto f = b.names.find(toks[2]);
      if (w == b.names.end() || f == b.names.end()) throw ParseError(lineno, "edge names an undeclared vertex");
      if (b.vertices[w->second].side != Side::worker || b.vertices[f->second].side != Side::firm)
        throw ParseError(lineno, "edge must run from a worker to a firm");
      int cap = int_field(lineno, toks[3], "capacity");
      if (cap < 0) throw ParseError(lineno, "negative capacity");
      std::string label = toks.size() == 5 ? toks[4] : "";
      if (!label.empty() && (keywords().count(label) || to_int(label)))
        throw ParseError(lineno, "edge label may be neither a keyword nor a number");
      b.edges.push_back({w->second, f->second, cap, label});
    } else if (kw == "cf") {
      if (toks.size() < 3) throw ParseError(lineno, "cf <vertex> <rule> ...");
      auto v = b.names.find(toks[1]);
      if (v == b.names.end()) throw ParseError(lineno, "cf for undeclared vertex " + toks[1]);
      for (const auto& c : b.cfs)
        if (c.vertex == v->second) throw ParseError(lineno, "second cf for vertex " + toks[1]);
      b.cfs.push_back({lineno, v->second, toks, {}});
      if (toks[2] == "table") mode = Mode::table;
    } else if (kw == "gapless") {
      if (toks.size() != 2 || (toks[1] != "true" && toks[1] != "false"))
        throw ParseError(lineno, "gapless true|false");
      b.gapless = toks[1] == "true";
    } else if (kw == "costs") {
      if (toks.size() != 1) throw ParseError(lineno, "costs takes its entries on the following lines");
      mode = Mode::costs;
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(lineno, "empty instance");

  std::vector<std::vector<EdgeId>> inc(b.vertices.size());
  for (EdgeId e = 0; e < b.edges.size(); ++e) {
    inc[b.edges[e].worker].push_back(e);
    inc[b.edges[e].firm].push_back(e);
  }
  std::vector<std::optional<ChoiceFunctionSpec>> specs(b.vertices.size());
  for (const RawCf& raw : b.cfs) specs[raw.vertex] = build_spec(b, raw, inc[raw.vertex]);
  for (VertexId v = 0; v < b.vertices.size(); ++v)
    if (!specs[v] && !inc[v].empty())
      throw ParseError(lineno, "vertex " + b.vertices[v].name + " has edges but no cf line");

  std::optional<Instance> inst;
  try {
    inst.emplace(b.vertices, b.edges, specs, b.gapless);
  } catch (const PreconditionError& e) {
    throw ParseError(lineno, e.what());
  }
  if (opt.check_table_axioms)
    for (VertexId v = 0; v < inst->num_vertices(); ++v) {
      if (inst->cf(v).kind() != CfKind::table) continue;
      AxiomReport rep = check_axioms(inst->cf(v), opt.axiom_pair_cap);
      if (!rep.passes()) {
        const auto& c = rep.counterexamples.front();
        throw AxiomViolation("cf " + inst->vertex(v).name + " violates " + c.axiom + " at z=" + tuple(c.z) +
                             " z'=" + tuple(c.z2));
      }
    }
  InstanceFile out{std::move(*inst), std::nullopt};
  if (!b.cost_lines.empty()) {
    CostVector c(out.instance.num_edges(), 0);
    for (const auto& [cl, text] : b.cost_lines) {
      auto toks = split(text, " \t\r");
      if (toks.size() != 2) throw ParseError(cl, "cost line: <edge> <value>");
      auto e = global_ref(out.instance, toks[0]);
      if (!e) throw ParseError(cl, "cost for unknown edge " + toks[0]);
      c[*e] = int_field(cl, toks[1], "cost");
    }
    out.costs = std::move(c);
  }
  return out;
}

Instance parse_instance(std::string_view text, const ParseOptions& opt) {
  return parse_instance_file(text, opt).instance;
}

std::string serialize_instance(const Instance& inst, const std::optional<CostVector>& costs) {
  std::ostringstream os;
  os << "sgmm 1\n";
  for (const Vertex& v : inst.vertices()) os << (v.side == Side::worker ? "worker " : "firm ") << v.name << '\n';
  for (const Edge& e : inst.edges()) {
    VertexId w = e.worker, f = e.firm;
    if (inst.vertex(w).side != Side::worker) std::swap(w, f);
    os << "edge " << inst.vertex(w).name << ' ' << inst.vertex(f).name << ' ' << e.capacity;
    if (!e.label.empty()) os << ' ' << e.label;
    os << '\n';
  }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    const auto& spec = inst.spec(v);
    if (!spec) continue;
    os << "cf " << inst.vertex(v).name;
    if (const auto* lin = std::get_if<LinearOrderSpec>(&*spec)) {
      os << " linear quota=" << lin->quota << " order=";
      for (std::size_t i = 0; i < lin->order.size(); ++i) os << (i ? "," : "") << edge_ref(inst, v, lin->order[i]);
      os << '\n';
    } else if (const auto* bal = std::get_if<BalanceSpec>(&*spec)) {
      os << " balance quota=" << bal->quota << " anchor=" << edge_ref(inst, v, bal->anchor)
         << " left=" << edge_ref(inst, v, bal->left) << " right=" << edge_ref(inst, v, bal->right) << '\n';
    } else {
      os << " table\n";
      LocalVector caps = inst.local_capacities(v);
      const auto& images = std::get<TableSpec>(*spec).images;
      for (std::uint64_t r = 0; r < images.size(); ++r)
        os << tuple(box_unrank(caps, r)) << " -> " << tuple(images[r]) << '\n';
    }
  }
  if (inst.gapless()) os << "gapless true\n";
  if (costs) {
    os << "costs\n";
    for (EdgeId e = 0; e < costs->size(); ++e)
      if ((*costs)[e] != 0) os << (inst.edge(e).label.empty() ? std::to_string(e) : inst.edge(e).label) << ' ' << (*costs)[e] << '\n';
  }
  return os.str();
}

std::string format_vector(const GVector& x) {
  std::string s;
  for (EdgeId e = 0; e < x.size(); ++e) s += (e ? " " : "") + std::to_string(e) + "=" + std::to_string(x[e]);
  return s;
}

namespace {

std::vector<long long> parse_pairs(const Instance& inst, std::string_view text) {
  std::vector<long long> v(inst.num_edges(), 0);
  std::vector<char> seen(inst.num_edges(), 0);
  for (const auto& tok : split(text, " ,\t\n\r")) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw PreconditionError("expected edge=value, got '" + tok + "'");
    auto e = global_ref(inst, tok.substr(0, eq));
    if (!e) throw PreconditionError("unknown edge '" + tok.substr(0, eq) + "'");
    auto val = to_int(tok.substr(eq + 1));
    if (!val) throw PreconditionError("bad value in '" + tok + "'");
    if (seen[*e]) throw PreconditionError("edge " + std::to_string(*e) + " given twice");
    seen[*e] = 1;
    v[*e] = *val;
  }
  return v;
}

}  // namespace

GVector parse_vector(const Instance& inst, std::string_view text) {
  GVector x = GVector::zeros(inst.num_edges());
  auto v = parse_pairs(inst, text);
  for (EdgeId e = 0; e < v.size(); ++e) x[e] = static_cast<int>(v[e]);
  return x;
}

CostVector parse_costs(const Instance& inst, std::string_view text) {
  auto v = parse_pairs(inst, text);
  return CostVector(v.begin(), v.end());
}

std::string generate_fixture(std::string_view name, const FixtureParams& prm) {
  std::ostringstream os;
  os << "sgmm 1\n";
  if (name == "single-edge") {
    int b = prm.capacity;
    int qw = prm.worker_quota ? prm.worker_quota : b;
    int qf = prm.firm_quota ? prm.firm_quota : b;
    os << "worker w\nfirm f\n"
       << "edge w f " << b << " e\n"
       << "cf w linear quota=" << qw << " order=e\n"
       << "cf f linear quota=" << qf << " order=e\n";
  } else if (name == "marriage") {
    int b = prm.capacity;
    os << "worker w1\nworker w2\nfirm f1\nfirm f2\n";
    os << "edge w1 f1 " << b << " e11\nedge w1 f2 " << b << " e12\n";
    os << "edge w2 f1 " << b << " e21\nedge w2 f2 " << b << " e22\n";
    os << "cf w1 linear quota=" << b << " order=e11,e12\n";
    os << "cf w2 linear quota=" << b << " order=e22,e21\n";
    os << "cf f1 linear quota=" << b << " order=e21,e11\n";
    os << "cf f2 linear quota=" << b << " order=e12,e22\n";
    os << "gapless true\n";
  } else if (name == "triangle") {
    int p = prm.p;
    if (p < 1) throw PreconditionError("triangle needs p >= 1");
    int q = 2 * p;
    for (int i = 1; i <= 3; ++i) os << "worker w" << i << '\n';
    for (int i = 1; i <= 3; ++i) os << "firm f" << i << '\n';
    auto nx = [](int i) { return i % 3 + 1; };
    auto pv = [](int i) { return (i + 1) % 3 + 1; };
    for (int i = 1; i <= 3; ++i) {
      os << "edge w" << i << " f" << i << ' ' << q << " a" << i << '\n';
      os << "edge w" << i << " f" << nx(i) << ' ' << p << " c" << i << '\n';
      os << "edge w" << i << " f" << pv(i) << ' ' << p << " d" << i << '\n';
    }
    for (int i = 1; i <= 3; ++i)
      os << "cf w" << i << " linear quota=" << q << " order=c" << i << ",d" << i << ",a" << i << '\n';
    for (int i = 1; i <= 3; ++i)
      os << "cf f" << i << " balance quota=" << q << " anchor=a" << i << " left=c" << pv(i) << " right=d"
         << nx(i) << '\n';
    if (p == 1) os << "gapless true\n";
  } else if (name == "random-linear") {
    if (prm.workers < 1 || prm.firms < 1 || prm.bmax < 1 || prm.qmin < 0 || prm.qmax < prm.qmin)
      throw PreconditionError("random-linear parameters out of range");
    std::mt19937_64 rng(prm.seed);
    for (int i = 1; i <= prm.workers; ++i) os << "worker w" << i << '\n';
    for (int j = 1; j <= prm.firms; ++j) os << "firm f" << j << '\n';
    std::vector<std::vector<int>> wn(prm.workers), fn(prm.firms);
    for (int i = 0; i < prm.workers; ++i)
      for (int j = 0; j < prm.firms; ++j) {
        bool take = static_cast<int>(rng() % 100) < prm.density;
        if (i == 0 && j == 0) take = true;
        if (!take) continue;
        int cap = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(prm.bmax));
        os << "edge w" << i + 1 << " f" << j + 1 << ' ' << cap << '\n';
        wn[i].push_back(j);
        fn[j].push_back(i);
      }
    auto emit = [&](const char* tag, int idx, const char* other, std::vector<int> nb) {
      if (nb.empty()) return;
      for (std::size_t k = nb.size(); k > 1; --k) std::swap(nb[k - 1], nb[rng() % k]);
      int q = prm.qmin + static_cast<int>(rng() % static_cast<std::uint64_t>(prm.qmax - prm.qmin + 1));
      os << "cf " << tag << idx + 1 << " linear quota=" << q << " order=";
      for (std::size_t k = 0; k < nb.size(); ++k) os << (k ? "," : "") << other << nb[k] + 1;
      os << '\n';
    };
    for (int i = 0; i < prm.workers; ++i) emit("w", i, "f", wn[i]);
    for (int j = 0; j < prm.firms; ++j) emit("f", j, "w", fn[j]);
    os << "gapless true\n";
  } else {
    throw PreconditionError("unknown fixture '" + std::string(name) + "'");
  }
  return os.str();
}

Instance make_fixture(std::string_view name, const FixtureParams& params) {
  return parse_instance(generate_fixture(name, params));
}

}  // namespace sgmm
