#include "sgmm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgmm/error.hpp"
#include "sgmm/io.hpp"
#include "sgmm/optimizer.hpp"
#include "sgmm/oracle.hpp"
#include "sgmm/poset.hpp"
#include "sgmm/route.hpp"
#include "sgmm/stability.hpp"
#include "sgmm/validation.hpp"

namespace sgmm {

namespace {

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void write_target(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write " + path);
  f << text;
}

std::string tuple(const LocalVector& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z[i]);
  return s + ")";
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

void print_route(const Instance& inst, const Route& r, std::ostream& out) {
  out << "start " << format_vector(r.start) << '\n';
  for (std::size_t i = 0; i < r.size(); ++i)
    out << "step " << i + 1 << " rotation " << r.steps[i].rotation.to_string() << " weight "
        << r.steps[i].weight << " tau " << r.steps[i].max_weight << '\n';
  out << "end " << format_vector(r.end(inst)) << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Stable g-matchings: rotations, weighted poset, minimum cost"};
  app.name("sgmm");
  app.require_subcommand(1);
  bool skip_axioms = false;
  app.add_flag("--skip-axiom-check", skip_axioms, "Do not verify table choice functions at load");

  std::string path;
  auto add_instance = [&](CLI::App* sub) { sub->add_option("instance", path, "Instance file, or - for stdin")->required(); };

  auto* gen = app.add_subcommand("generate", "Print a fixture instance");
  std::string fixture;
  FixtureParams prm;
  gen->add_option("name", fixture, "single-edge | marriage | triangle | random-linear")->required();
  gen->add_option("--p", prm.p);
  gen->add_option("--capacity", prm.capacity);
  gen->add_option("--worker-quota", prm.worker_quota);
  gen->add_option("--firm-quota", prm.firm_quota);
  gen->add_option("--seed", prm.seed);
  gen->add_option("--workers", prm.workers);
  gen->add_option("--firms", prm.firms);
  gen->add_option("--bmax", prm.bmax);
  gen->add_option("--qmin", prm.qmin);
  gen->add_option("--qmax", prm.qmax);
  gen->add_option("--density", prm.density);

  auto* axioms = app.add_subcommand("check-axioms", "Exhaustive axiom check of every choice function");
  add_instance(axioms);
  bool gapless_check = false;
  std::uint64_t pair_cap = 1'000'000;
  axioms->add_flag("--gapless", gapless_check, "Also test the gapless condition");
  axioms->add_option("--pair-cap", pair_cap);

  auto* stable = app.add_subcommand("stable-check", "Acceptability and blocking edges of a vector");
  add_instance(stable);
  std::string xtext;
  stable->add_option("x", xtext, "Vector as id=value pairs")->required();

  auto* xmin = app.add_subcommand("xmin", "Firm-worst stable vector");
  add_instance(xmin);
  std::string method = "ag";
  xmin->add_option("--method", method)->check(CLI::IsMember({"ag", "twostage"}));

  auto* xmax = app.add_subcommand("xmax", "Firm-best stable vector");
  add_instance(xmax);

  auto* route = app.add_subcommand("route", "Principal route or a route between two stable vectors");
  add_instance(route);
  bool full = false;
  std::vector<std::string> between;
  std::optional<std::uint64_t> seed;
  auto* full_opt = route->add_flag("--full", full);
  route->add_option("--between", between)->expected(2)->excludes(full_opt);
  route->add_option("--seed", seed);

  auto* poset = app.add_subcommand("poset", "Weighted rotation poset");
  add_instance(poset);
  std::string dot_path, text_path;
  bool list_rotations = false;
  poset->add_option("--dot", dot_path);
  poset->add_option("--text", text_path);
  poset->add_flag("--rotations", list_rotations);

  auto* enumerate = app.add_subcommand("enumerate", "All stable vectors by exhaustive search, with a lattice audit");
  add_instance(enumerate);
  std::uint64_t enum_cap = 1'000'000;
  bool via_closed = false;
  enumerate->add_option("--cap", enum_cap, "Largest box (or closed-function product) to walk");
  enumerate->add_flag("--closed", via_closed, "List images of closed functions of the poset instead");

  auto* mincost = app.add_subcommand("mincost", "Stable vector of minimum cost");
  add_instance(mincost);
  std::string cost_text, dimacs_path;
  mincost->add_option("--costs", cost_text, "Costs as id=value pairs; defaults to the instance costs");
  mincost->add_option("--dimacs", dimacs_path);

  auto* audit = app.add_subcommand("audit", "Cross-check the engine against exhaustive enumeration");
  add_instance(audit);
  ValidationOptions vopt;
  audit->add_option("--cost-samples", vopt.cost_samples);
  audit->add_option("--routes", vopt.randomized_routes);
  audit->add_option("--seed", vopt.seed);
  audit->add_option("--box-cap", vopt.box_cap);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      out << generate_fixture(fixture, prm);
      return 0;
    }
    ParseOptions popt;
    popt.check_table_axioms = !skip_axioms && !axioms->parsed();
    InstanceFile file = parse_instance_file(read_source(path, in), popt);
    const Instance& inst = file.instance;

    if (axioms->parsed()) {
      bool all = true;
      for (VertexId v = 0; v < inst.num_vertices(); ++v) {
        if (!inst.spec(v)) continue;
        const ChoiceFunction& cf = inst.cf(v);
        AxiomReport rep = check_axioms(cf, pair_cap);
        out << inst.vertex(v).name << " shrinking=" << verdict(rep.shrinking) << " A1=" << verdict(rep.a1)
            << " A2=" << verdict(rep.a2) << " A3=" << verdict(rep.a3)
            << " A4=" << (rep.a4 ? verdict(*rep.a4) : "n/a") << " stationarity=" << (rep.stationary ? verdict(*rep.stationary) : "n/a");
        bool ok = rep.passes();
        if (gapless_check) {
          GaplessReport g = check_gapless(cf);
          out << " gapless=" << verdict(g.holds);
          ok = ok && g.holds;
        }
        out << '\n';
        for (const auto& c : rep.counterexamples)
          out << "  counterexample " << c.axiom << " z=" << tuple(c.z) << " z'=" << tuple(c.z2) << '\n';
        all = all && ok;
      }
      return all ? 0 : 1;
    }
    if (stable->parsed()) {
      GVector x = parse_vector(inst, xtext);
      StabilityReport rep = stability_report(inst, x);
      out << "acceptable " << (rep.acceptable ? "yes" : "no") << '\n';
      out << "blocking";
      if (rep.blocking.empty()) out << " none";
      for (EdgeId e : rep.blocking) out << ' ' << e;
      out << "\nstable " << (rep.stable() ? "yes" : "no") << '\n';
      return 0;
    }
    if (xmin->parsed()) {
      out << format_vector(method == "ag" ? find_xmin_ag(inst) : find_xmin_twostage(inst)) << '\n';
      return 0;
    }
    if (xmax->parsed()) {
      out << format_vector(find_xmax(inst)) << '\n';
      return 0;
    }
    if (route->parsed()) {
      if (!between.empty()) {
        RouteBetweenOptions ro;
        if (seed) ro = {WeightPolicy::randomized, *seed};
        print_route(inst, route_between(inst, parse_vector(inst, between[0]), parse_vector(inst, between[1]), ro), out);
      } else {
        print_route(inst, full_route(inst, {seed}), out);
      }
      return 0;
    }
    if (poset->parsed()) {
      WeightedPoset p = build_poset(inst);
      if (list_rotations)
        for (std::size_t i = 0; i < p.rotations().size(); ++i)
          out << "rotation " << i << ' ' << p.rotations()[i].to_string() << '\n';
      if (!dot_path.empty()) write_target(dot_path, poset_dot(p), out);
      if (!text_path.empty()) write_target(text_path, poset_text(p), out);
      if (dot_path.empty() && text_path.empty() && !list_rotations) out << poset_text(p);
      return 0;
    }
    if (enumerate->parsed()) {
      std::size_t count = 0;
      if (via_closed) {
        WeightedPoset p = build_poset(inst);
        for_each_closed_function(p, enum_cap, [&](const ClosedFunction& l) {
          out << format_vector(phi_inverse(inst, p, l)) << '\n';
          ++count;
        });
        out << "count " << count << '\n';
        return 0;
      }
      StableSetLattice lat = enumerate_stable(inst, enum_cap);
      for (const GVector& x : lat.elements) out << format_vector(x) << '\n';
      out << "count " << lat.size() << '\n';
      LatticeAudit a = lattice_audit(inst, lat);
      out << "lattice " << verdict(a.lattice) << " distributive " << verdict(a.distributive) << " polarity "
          << verdict(a.polarity) << " unisize " << verdict(a.unisize) << '\n';
      for (const std::string& f : a.failures) out << "  " << f << '\n';
      return a.passes() ? 0 : 1;
    }
    if (mincost->parsed()) {
      CostVector c;
      if (!cost_text.empty())
        c = parse_costs(inst, cost_text);
      else if (file.costs)
        c = *file.costs;
      else
        throw PreconditionError("no costs given and the instance has no costs section");
      WeightedPoset p = build_poset(inst);
      if (!dimacs_path.empty()) write_target(dimacs_path, to_dimacs(build_closure_network(p, c)), out);
      MinCostResult r = min_cost_stable(inst, c, p);
      out << "x " << format_vector(r.x) << "\ncost " << r.cost << '\n';
      return 0;
    }
    if (audit->parsed()) {
      bool all = true;
      for (const CheckResult& c : cross_validate(inst, vopt)) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
        all = all && c.passed;
      }
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sgmm
