#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "sgmm/cli.hpp"
#include "sgmm/error.hpp"
#include "sgmm/io.hpp"

using namespace sgmm;

namespace {

const char* kBrokenTable =
    "sgmm 1\n"
    "worker w\n"
    "firm f\n"
    "edge w f 2 e\n"
    "cf w linear quota=2 order=e\n"
    "cf f table\n"
    "(0) -> (0)\n"
    "(1) -> (1)\n"
    "(2) -> (0)\n";

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& in = "") {
  std::istringstream is(in);
  std::ostringstream os, es;
  int code = run_command(args, is, os, es);
  return {code, os.str(), es.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("sgmm_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

void expect_same(const Instance& a, const Instance& b) {
  EXPECT_EQ(a.vertices(), b.vertices());
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.gapless(), b.gapless());
  for (VertexId v = 0; v < a.num_vertices(); ++v) EXPECT_EQ(a.spec(v), b.spec(v));
}

}  // namespace

TEST(Parse, SingleEdgeText) {
  Instance inst = parse_instance("sgmm 1\nworker w\nfirm f\nedge w f 2\ncf w linear quota=2 order=f\n"
                                 "cf f linear quota=2 order=w\n");
  EXPECT_EQ(inst.workers().size(), 1u);
  EXPECT_EQ(inst.firms().size(), 1u);
  ASSERT_EQ(inst.num_edges(), 1u);
  EXPECT_EQ(inst.edge(0).capacity, 2);
}

TEST(Parse, TriangleRules) {
  Instance tri = fx::triangle(1);
  const auto& w1 = std::get<LinearOrderSpec>(*tri.spec(*tri.find_vertex("w1")));
  EXPECT_EQ(w1.order, (std::vector<EdgeId>{fx::c1, fx::d1, fx::a1}));
  const auto& f1 = std::get<BalanceSpec>(*tri.spec(*tri.find_vertex("f1")));
  EXPECT_EQ(f1.anchor, fx::a1);
  EXPECT_EQ(f1.left, fx::c3);
  EXPECT_EQ(f1.right, fx::d2);
}

TEST(Parse, CommentsCostsAndGapless) {
  InstanceFile f = parse_instance_file(
      "# header next\nsgmm 1\nworker w\nfirm f\nedge w f 3 e  # inline\ncf w linear quota=1 order=e\n"
      "cf f linear quota=1 order=e\ngapless true\ncosts\ne -4\n");
  EXPECT_TRUE(f.instance.gapless());
  ASSERT_TRUE(f.costs);
  EXPECT_EQ(*f.costs, (CostVector{-4}));
}

TEST(Parse, ErrorsCarryLineNumbers) {
  try {
    parse_instance("sgmm 1\nworker w\nfirm f\nedge w g 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    parse_instance("sgmm 1\nworker w\nfirm f\nfirm g\nedge w f 1 e\nedge w g 1 h\ncf w linear quota=1 order=e\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("cf w"), std::string::npos);
  }
  EXPECT_THROW(parse_instance(""), ParseError);
  EXPECT_THROW(parse_instance("sgmm 2\n"), ParseError);
  EXPECT_THROW(parse_instance("sgmm 1\nworker w\nworker w\n"), ParseError);
  EXPECT_THROW(parse_instance("sgmm 1\nbogus\n"), ParseError);
  EXPECT_THROW(parse_instance("sgmm 1\nworker w\nfirm f\nedge w f x\n"), ParseError);
}

TEST(Parse, BrokenTableIsRejectedWithCounterexample) {
  try {
    parse_instance(kBrokenTable);
    FAIL();
  } catch (const AxiomViolation& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("violates A"), std::string::npos) << what;
    EXPECT_NE(what.find("z="), std::string::npos) << what;
  }
  ParseOptions skip;
  skip.check_table_axioms = false;
  Instance inst = parse_instance(kBrokenTable, skip);
  EXPECT_EQ(inst.cf(*inst.find_vertex("f")).kind(), CfKind::table);
}

TEST(Serialize, RoundTripFixtures) {
  for (const Instance& inst : {fx::single(2), fx::marriage(3), fx::triangle(2), fx::twin_marriage(), fx::random_linear(5)}) {
    InstanceFile back = parse_instance_file(serialize_instance(inst));
    expect_same(inst, back.instance);
    EXPECT_EQ(serialize_instance(back.instance), serialize_instance(inst));
  }
}

TEST(Serialize, RoundTripTableAndCosts) {
  ParseOptions skip;
  skip.check_table_axioms = false;
  Instance inst = parse_instance(kBrokenTable, skip);
  InstanceFile back = parse_instance_file(serialize_instance(inst, CostVector{7}), skip);
  expect_same(inst, back.instance);
  EXPECT_EQ(back.costs, std::optional<CostVector>(CostVector{7}));
}

TEST(Vectors, FormatAndParse) {
  Instance m = fx::marriage();
  EXPECT_EQ(format_vector(fx::kM1), "0=1 1=0 2=0 3=1");
  EXPECT_EQ(parse_vector(m, "0=1 3=1"), fx::kM1);
  EXPECT_EQ(parse_vector(m, "e12=1,e21=1"), fx::kM2);
  EXPECT_THROW(parse_vector(m, "9=1"), PreconditionError);
  EXPECT_THROW(parse_vector(m, "e11"), PreconditionError);
  EXPECT_EQ(parse_costs(m, "e11=-3"), (CostVector{-3, 0, 0, 0}));
}

TEST(Generate, Deterministic) {
  FixtureParams p;
  p.seed = 42;
  EXPECT_EQ(generate_fixture("random-linear", p), generate_fixture("random-linear", p));
  p.seed = 43;
  EXPECT_NE(generate_fixture("random-linear", p), generate_fixture("random-linear", {}));
  EXPECT_THROW(generate_fixture("nope"), PreconditionError);
}

TEST(Cli, XminOnTriangle) {
  std::string path = temp_file("tri1.txt", generate_fixture("triangle"));
  Outcome r = run({"xmin", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0=0 1=1 2=1 3=0 4=1 5=1 6=0 7=1 8=1\n");
  Outcome t = run({"xmin", "--method", "twostage", path});
  EXPECT_EQ(t.out, r.out);
  Outcome x = run({"xmax", path});
  EXPECT_EQ(x.out, "0=2 1=0 2=0 3=2 4=0 5=0 6=2 7=0 8=0\n");
}

TEST(Cli, ReadsStdin) {
  Outcome r = run({"xmax", "-"}, generate_fixture("marriage"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0=0 1=1 2=1 3=0\n");
}

TEST(Cli, PosetTextOnLargeTriangle) {
  FixtureParams p;
  p.p = 4;
  Outcome r = run({"poset", "-"}, generate_fixture("triangle", p));
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  int elements = 0, edges = 0;
  while (std::getline(in, line)) (line.rfind("edge ", 0) == 0 ? edges : elements)++;
  EXPECT_EQ(elements, 8);
  EXPECT_EQ(edges, 7);
}

TEST(Cli, PosetDotFile) {
  auto dot = std::filesystem::temp_directory_path() / "sgmm_test_poset.dot";
  Outcome r = run({"poset", "-", "--dot", dot.string()}, generate_fixture("triangle"));
  EXPECT_EQ(r.code, 0);
  std::ifstream f(dot);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("digraph"), std::string::npos);
}

TEST(Cli, MincostZeroCosts) {
  Outcome r = run({"mincost", "-", "--costs", "0=0"}, generate_fixture("marriage"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x 0=1 1=0 2=0 3=1\ncost 0\n");
}

TEST(Cli, MincostWithoutCostsIsDomainError) {
  Outcome r = run({"mincost", "-"}, generate_fixture("marriage"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, StableCheck) {
  std::string m = generate_fixture("marriage");
  Outcome ok = run({"stable-check", "-", "0=1 3=1"}, m);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("stable yes"), std::string::npos);
  Outcome bad = run({"stable-check", "-", "0=1"}, m);
  EXPECT_NE(bad.out.find("stable no"), std::string::npos);
}

TEST(Cli, RouteFullAndBetween) {
  std::string t = generate_fixture("triangle");
  Outcome full = run({"route", "-", "--full"}, t);
  EXPECT_EQ(full.code, 0);
  EXPECT_NE(full.out.find("step 2"), std::string::npos);
  Outcome between = run({"route", "-", "--between", "0=0 1=1 2=1 3=0 4=1 5=1 6=0 7=1 8=1",
                     "0=1 1=1 2=0 3=1 4=1 5=0 6=1 7=1 8=0"},
                    t);
  EXPECT_EQ(between.code, 0);
  EXPECT_NE(between.out.find("step 1 rotation +0 -5 +3 -8 +6 -2 weight 1"), std::string::npos);
}

TEST(Cli, EnumerateAndAudit) {
  std::string m = generate_fixture("marriage");
  Outcome e = run({"enumerate", "-"}, m);
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("count 2"), std::string::npos);
  Outcome c = run({"enumerate", "-", "--closed"}, m);
  EXPECT_NE(c.out.find("count 2"), std::string::npos);
  Outcome a = run({"audit", "-", "--cost-samples", "3", "--routes", "2"}, m);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CheckAxiomsOnBrokenTable) {
  Outcome r = run({"check-axioms", "-"}, kBrokenTable);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("A3=fail"), std::string::npos);
  EXPECT_NE(r.out.find("counterexample A3"), std::string::npos);
  Outcome ok = run({"check-axioms", "--gapless", "-"}, generate_fixture("marriage"));
  EXPECT_EQ(ok.code, 0);
}

TEST(Cli, LoadFailsOnBrokenTableUnlessSkipped) {
  EXPECT_EQ(run({"xmin", "-"}, kBrokenTable).code, 1);
  EXPECT_EQ(run({"--skip-axiom-check", "xmin", "-"}, kBrokenTable).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"xmin"}).code, 2);
  EXPECT_EQ(run({"xmin", "-", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MissingFileIsDomainError) {
  EXPECT_EQ(run({"xmin", "/nonexistent/instance.txt"}).code, 1);
}

TEST(Cli, GenerateIsByteStable) {
  Outcome a = run({"generate", "random-linear", "--seed", "9"});
  Outcome b = run({"generate", "random-linear", "--seed", "9"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
