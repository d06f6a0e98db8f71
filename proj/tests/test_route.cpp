#include <gtest/gtest.h>

#include "brute.hpp"
#include "fixtures.hpp"
#include "sgmm/error.hpp"
#include "sgmm/route.hpp"
#include "sgmm/stability.hpp"

using namespace sgmm;

namespace {

std::vector<Instance> small_fixtures() {
  return {fx::single(2), fx::marriage(), fx::marriage(3), fx::twin_marriage(2), fx::triangle(1), fx::triangle(2),
          fx::random_linear(4), fx::random_linear(17, 100, 1, 1), fx::random_linear(31, 100, 1, 2)};
}

}  // namespace

TEST(Alternating, SingleEdgeInOneIteration) {
  AgTrace t = find_xmin_ag_traced(fx::single(2));
  EXPECT_EQ(t.x, GVector(std::vector<int>{2}));
  EXPECT_EQ(t.bounds.size(), 1u);
}

TEST(Alternating, FixtureMinima) {
  EXPECT_EQ(find_xmin_ag(fx::marriage()), fx::kM1);
  EXPECT_EQ(find_xmin_ag(fx::triangle(1)), fx::tri_point(1, 0));
  EXPECT_EQ(find_xmin_ag(fx::triangle(4)), fx::tri_point(4, 0));
}

TEST(Alternating, BoundsStrictlyDecrease) {
  for (const Instance& inst : small_fixtures()) {
    AgTrace t = find_xmin_ag_traced(inst);
    for (std::size_t i = 1; i < t.bounds.size(); ++i) {
      EXPECT_NE(t.bounds[i], t.bounds[i - 1]);
      for (EdgeId e = 0; e < inst.num_edges(); ++e) EXPECT_LE(t.bounds[i][e], t.bounds[i - 1][e]);
    }
  }
}

TEST(TwoStage, SingleEdgeTakesTwoUnitShifts) {
  TwoStageTrace t = find_xmin_twostage_traced(fx::single(2));
  EXPECT_EQ(t.xmin, GVector(std::vector<int>{2}));
  EXPECT_EQ(t.stage1_shifts, 2);
  EXPECT_EQ(t.stage2_steps, 0);
}

TEST(TwoStage, FixtureMinima) {
  EXPECT_EQ(find_xmin_twostage(fx::marriage()), fx::kM1);
  EXPECT_EQ(find_xmin_twostage(fx::triangle(1)), fx::tri_point(1, 0));
  EXPECT_EQ(find_xmin_twostage(fx::triangle(2)), fx::tri_point(2, 0));
}

TEST(TwoStage, AgreesWithAlternatingAndReference) {
  for (const Instance& inst : small_fixtures()) {
    TwoStageTrace t = find_xmin_twostage_traced(inst);
    EXPECT_TRUE(is_stable(inst, t.stage1));
    EXPECT_EQ(t.xmin, find_xmin_ag(inst));
    EXPECT_EQ(t.xmin, brute::firm_min(inst, brute::stable_set(inst)));
  }
}

TEST(Maximum, FixtureMaxima) {
  EXPECT_EQ(find_xmax(fx::single(2)), GVector(std::vector<int>{2}));
  EXPECT_EQ(find_xmax(fx::marriage()), fx::kM2);
  EXPECT_EQ(find_xmax(fx::triangle(1)), fx::tri_point(1, 2));
  for (const Instance& inst : small_fixtures()) EXPECT_EQ(find_xmax(inst), brute::firm_max(inst, brute::stable_set(inst)));
}

TEST(FullRoute, Marriage) {
  Instance m = fx::marriage();
  Route r = full_route(m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.steps[0].weight, 1);
  EXPECT_EQ(r.end(m), fx::kM2);
}

TEST(FullRoute, TriangleAlternates) {
  for (int p : {1, 2, 4}) {
    Instance tri = fx::triangle(p);
    Route r = full_route(tri);
    ASSERT_EQ(r.size(), static_cast<std::size_t>(2 * p));
    auto pts = r.points(tri);
    for (std::size_t k = 0; k < r.size(); ++k) {
      EXPECT_EQ(r.steps[k].rotation, k % 2 == 0 ? fx::kR : fx::kRp);
      EXPECT_EQ(r.steps[k].weight, 1);
      EXPECT_EQ(pts[k], fx::tri_point(p, static_cast<int>(k)));
    }
    EXPECT_EQ(r.end(tri), fx::tri_point(p, 2 * p));
    EXPECT_TRUE(r.principal());
    EXPECT_TRUE(r.non_excessive());
  }
}

TEST(FullRoute, OccurrenceLabels) {
  Route r = full_route(fx::triangle(2));
  EXPECT_EQ(r.occurrence_labels(), (std::vector<int>{1, 1, 2, 2}));
}

TEST(FullRoute, LengthBound) {
  for (const Instance& inst : small_fixtures()) {
    Route r = full_route(inst);
    EXPECT_LE(2 * r.size(), static_cast<std::size_t>(inst.max_capacity()) * inst.num_edges());
    EXPECT_EQ(r.end(inst), find_xmax(inst));
  }
}

TEST(FullRoute, RequiresStableStart) {
  EXPECT_THROW(principal_route_from(fx::single(2), GVector(std::vector<int>{1})), PreconditionError);
}

TEST(RouteBetween, TriangleFirstTwoSteps) {
  Instance tri = fx::triangle(2);
  Route r = route_between(tri, fx::tri_point(2, 0), fx::tri_point(2, 2));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.steps[0].rotation, fx::kR);
  EXPECT_EQ(r.steps[1].rotation, fx::kRp);
  EXPECT_EQ(r.steps[0].weight, 1);
  EXPECT_EQ(r.steps[1].weight, 1);
}

TEST(RouteBetween, PartialWeightStopsAtTarget) {
  Instance m = fx::marriage(3);
  GVector lo = find_xmin_ag(m);
  Rotation rot = rotations_at(m, lo)[0];
  GVector mid = apply_rotation(m, lo, rot, 2);
  Route r = route_between(m, lo, mid);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.steps[0].weight, 2);
  EXPECT_EQ(r.steps[0].max_weight, 3);
  EXPECT_TRUE(r.non_excessive());
  EXPECT_FALSE(r.principal());
}

TEST(RouteBetween, RejectsBadEndpoints) {
  Instance m = fx::marriage();
  EXPECT_THROW(route_between(m, fx::kM2, fx::kM1), PreconditionError);
  EXPECT_THROW(route_between(m, fx::kM1, fx::kM1), PreconditionError);
  EXPECT_THROW(route_between(m, fx::kM1, GVector(std::vector<int>{1, 1, 0, 0})), PreconditionError);
}

TEST(Multiset, Fixtures) {
  Instance m = fx::marriage();
  Rotation r = rotations_at(m, fx::kM1)[0];
  EXPECT_EQ(pi_multiset(full_route(m)), (PiMultiset{{{r, 1}, 1}}));
  EXPECT_EQ(pi_multiset(full_route(fx::triangle(1))), (PiMultiset{{{fx::kR, 1}, 1}, {{fx::kRp, 1}, 1}}));
}

TEST(Multiset, RandomizedRoutesAgree) {
  for (const Instance& inst : small_fixtures()) {
    Route base = full_route(inst);
    if (base.size() == 0) continue;
    PiMultiset pi = pi_multiset(base);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      EXPECT_EQ(pi_multiset(full_route(inst, {s})), pi);
      Route rnd = route_between(inst, base.start, base.end(inst), {WeightPolicy::randomized, s});
      EXPECT_EQ(pi_multiset(rnd), pi);
    }
  }
}

TEST(Multiset, RejectsExcessiveRoute) {
  Instance m = fx::marriage(3);
  GVector lo = find_xmin_ag(m);
  Rotation rot = rotations_at(m, lo)[0];
  Route r{lo, {{rot, 1, 3}, {rot, 2, 2}}};
  EXPECT_FALSE(r.non_excessive());
  EXPECT_THROW(pi_multiset(r), PreconditionError);
}
