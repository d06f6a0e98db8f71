#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "fixtures.hpp"
#include "sgmm/error.hpp"
#include "sgmm/rotation.hpp"
#include "sgmm/route.hpp"
#include "sgmm/stability.hpp"

using namespace sgmm;

namespace {

std::set<std::pair<EdgeId, EdgeId>> pairs_of(const FirmScan& s) {
  std::set<std::pair<EdgeId, EdgeId>> out;
  for (const Tandem& t : s.legal_pairs) out.insert({t.first, t.second});
  return out;
}

}  // namespace

TEST(RotationValue, CanonicalStartAtSmallestPositiveEdge) {
  Rotation r({6, 2, 0, 5, 3, 8});
  EXPECT_EQ(r, fx::kR);
  EXPECT_EQ(r.positive(), (std::vector<EdgeId>{0, 3, 6}));
  EXPECT_EQ(r.negative(), (std::vector<EdgeId>{5, 8, 2}));
  EXPECT_EQ(r.to_string(), "+0 -5 +3 -8 +6 -2");
  std::vector<int> inc = r.incidence(9);
  EXPECT_EQ(inc, (std::vector<int>{1, 0, -1, 1, 0, -1, 1, 0, -1}));
}

TEST(RotationValue, RejectsMalformedCycles) {
  EXPECT_THROW(Rotation({0, 1}), PreconditionError);
  EXPECT_THROW(Rotation({0, 1, 2}), PreconditionError);
  EXPECT_THROW(Rotation({0, 1, 0, 2}), PreconditionError);
}

TEST(LegalPairs, Marriage) {
  Instance m = fx::marriage();
  FirmScan s = legal_f_pairs(m, fx::kM1);
  EXPECT_EQ(pairs_of(s), (std::set<std::pair<EdgeId, EdgeId>>{{2, 0}, {1, 3}}));
  for (const Tandem& t : s.legal_pairs) {
    EXPECT_EQ(t.kind, TandemKind::legal_f);
    EXPECT_EQ(t.pivot, m.edge(t.first).firm);
  }
}

TEST(LegalPairs, SaturatedSingleEdgeHasNone) {
  EXPECT_TRUE(legal_f_pairs(fx::single(2), GVector(std::vector<int>{2})).legal_pairs.empty());
}

TEST(LegalPairs, TriangleInitialPoint) {
  FirmScan s = legal_f_pairs(fx::triangle(1), fx::tri_point(1, 0));
  EXPECT_EQ(pairs_of(s), (std::set<std::pair<EdgeId, EdgeId>>{{fx::a1, fx::d2}, {fx::a2, fx::d3}, {fx::a3, fx::d1}}));
}

TEST(LegalPairs, RequireStability) {
  EXPECT_THROW(legal_f_pairs(fx::single(2), GVector(std::vector<int>{1})), PreconditionError);
}

TEST(EssentialPairs, MarriageWorker) {
  Instance m = fx::marriage();
  FirmScan s = legal_f_pairs(m, fx::kM1);
  auto t = essential_w_pair(m, fx::kM1, 0, s);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->kind, TandemKind::essential_w);
  EXPECT_EQ(t->first, 0u);
  EXPECT_EQ(t->second, 1u);
  EXPECT_EQ(t->pivot, *m.find_vertex("w1"));
}

TEST(EssentialPairs, TriangleForcedSwap) {
  Instance tri = fx::triangle(1);
  FirmScan s = legal_f_pairs(tri, fx::tri_point(1, 0));
  auto t = essential_w_pair(tri, fx::tri_point(1, 0), fx::d2, s);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->second, fx::a2);
}

TEST(Rotations, MarriageSingleRotation) {
  auto rs = rotations_at(fx::marriage(), fx::kM1);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].positive(), (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(rs[0].negative(), (std::vector<EdgeId>{3, 0}));
}

TEST(Rotations, TriangleInitialCycle) {
  auto rs = rotations_at(fx::triangle(1), fx::tri_point(1, 0));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0], fx::kR);
}

TEST(Rotations, TopHasNone) {
  EXPECT_TRUE(rotations_at(fx::marriage(), fx::kM2).empty());
  EXPECT_TRUE(rotations_at(fx::triangle(1), fx::tri_point(1, 2)).empty());
}

TEST(Rotations, ActiveGraphShape) {
  ActiveGraph g = build_active_graph(fx::triangle(1), fx::tri_point(1, 0));
  EXPECT_EQ(g.raw.next.size(), 18u);
  EXPECT_EQ(g.sign[fx::a1], 1);
  EXPECT_EQ(g.sign[fx::d1], -1);
  std::string dot = active_graph_dot(fx::triangle(1), g);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
}

TEST(Apply, MarriageReachesFirmOptimum) {
  Instance m = fx::marriage();
  EXPECT_EQ(apply_rotation(m, fx::kM1, rotations_at(m, fx::kM1)[0], 1), fx::kM2);
}

TEST(Apply, TriangleFirstStep) {
  EXPECT_EQ(apply_rotation(fx::triangle(1), fx::tri_point(1, 0), fx::kR, 1), fx::tri_point(1, 1));
}

TEST(Apply, RejectsBadWeights) {
  Instance m = fx::marriage();
  Rotation r = rotations_at(m, fx::kM1)[0];
  EXPECT_THROW(apply_rotation(m, fx::kM1, r, 0), PreconditionError);
  EXPECT_THROW(apply_rotation(m, fx::kM1, r, 2), PreconditionError);
}

TEST(Weights, UnitExamples) {
  Instance m = fx::marriage();
  Rotation r = rotations_at(m, fx::kM1)[0];
  EXPECT_EQ(max_weight_linear(m, fx::kM1, r), 1);
  EXPECT_EQ(max_weight_binary(m, fx::kM1, r).weight, 1);
  EXPECT_EQ(max_weight_linear(fx::triangle(1), fx::tri_point(1, 0), fx::kR), 1);
}

TEST(Weights, CapacityThreeMarriage) {
  Instance m = fx::marriage(3);
  GVector lo = find_xmin_ag(m);
  auto rs = rotations_at(m, lo);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(max_weight_linear(m, lo, rs[0]), 3);
  // Reference: the largest λ keeping the shifted vector stable.
  int best = 0;
  for (int lam = 1; lam <= 3; ++lam) {
    GVector y = lo;
    for (EdgeId e : rs[0].positive()) y[e] += lam;
    for (EdgeId e : rs[0].negative()) y[e] -= lam;
    if (brute::stable(m, y)) best = lam;
  }
  EXPECT_EQ(best, 3);
}

TEST(Weights, BinarySearchProbeCount) {
  for (int k = 1; k <= 10; ++k) {
    int b = 1 << k;
    Instance m = fx::marriage(b);
    GVector lo = find_xmin_ag(m);
    Rotation r = rotations_at(m, lo)[0];
    WeightSearch w = max_weight_binary(m, lo, r);
    EXPECT_EQ(w.weight, b);
    EXPECT_LE(w.probes, k + 1) << "b=" << b;
  }
}

TEST(Applicable, MarriageTopAndTriangleAlternation) {
  Instance m = fx::marriage();
  Rotation r = rotations_at(m, fx::kM1)[0];
  EXPECT_FALSE(is_rotation_applicable(m, fx::kM2, r));
  Instance tri = fx::triangle(1);
  EXPECT_FALSE(is_rotation_applicable(tri, fx::tri_point(1, 1), fx::kR));
  EXPECT_TRUE(is_rotation_applicable(tri, fx::tri_point(1, 1), fx::kRp));
}

TEST(Cleaning, KeepsOnlyCycles) {
  // 3 -> 0 -> 1 -> 2 -> 1, 4 -> 4, 5 has no successor.
  Digraph d{{1, 2, 1, 0, 4, -1}, {1, 1, 1, 1, 1, 1}};
  clean(d);
  EXPECT_EQ(d.alive, (std::vector<char>{0, 1, 1, 0, 1, 0}));
}

TEST(Cleaning, Idempotent) {
  Digraph d{{1, 2, 1, 0, 4, -1}, {1, 1, 1, 1, 1, 1}};
  clean(d);
  Digraph again = d;
  clean(again);
  EXPECT_EQ(again.alive, d.alive);
  EXPECT_EQ(again.next, d.next);
}

TEST(Rotations, CommuteWhenDisjoint) {
  Instance tw = fx::twin_marriage(2);
  GVector lo = find_xmin_ag(tw);
  auto rs = rotations_at(tw, lo);
  ASSERT_EQ(rs.size(), 2u);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      GVector xy = apply_rotation(tw, apply_rotation(tw, lo, rs[0], a), rs[1], b);
      GVector yx = apply_rotation(tw, apply_rotation(tw, lo, rs[1], b), rs[0], a);
      EXPECT_EQ(xy, yx);
      EXPECT_TRUE(is_stable(tw, xy));
    }
}

TEST(Rotations, SuccessorsOfEveryStableVector) {
  for (const Instance& inst : {fx::marriage(2), fx::twin_marriage(), fx::triangle(1), fx::triangle(2),
                               fx::random_linear(2, 100, 1, 1), fx::random_linear(9, 100, 1, 1)}) {
    auto s = brute::stable_set(inst);
    for (const GVector& x : s) {
      std::vector<GVector> via;
      auto rs = rotations_at(inst, x);
      std::set<EdgeId> used;
      for (const Rotation& r : rs) {
        GVector y = apply_rotation(inst, x, r, 1);
        EXPECT_TRUE(is_stable(inst, y));
        EXPECT_EQ(compare_F(inst, x, y), Order::less);
        via.push_back(y);
        for (EdgeId e : r.cycle()) EXPECT_TRUE(used.insert(e).second) << "rotations share an edge";
      }
      std::sort(via.begin(), via.end());
      EXPECT_EQ(via, brute::covers(inst, s, x));
    }
  }
}
