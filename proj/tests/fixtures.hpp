#pragma once

#include <string>
#include <vector>

#include "sgmm/instance.hpp"
#include "sgmm/io.hpp"
#include "sgmm/rotation.hpp"

namespace fx {

// Single edge w-f with capacity b.
inline sgmm::Instance single(int b, int qw = 0, int qf = 0) {
  sgmm::FixtureParams p;
  p.capacity = b;
  p.worker_quota = qw;
  p.firm_quota = qf;
  return sgmm::make_fixture("single-edge", p);
}

// 2x2 market; edge ids e11=0 e12=1 e21=2 e22=3.
inline sgmm::Instance marriage(int b = 1) {
  sgmm::FixtureParams p;
  p.capacity = b;
  return sgmm::make_fixture("marriage", p);
}
inline const sgmm::GVector kM1{std::vector<int>{1, 0, 0, 1}};
inline const sgmm::GVector kM2{std::vector<int>{0, 1, 1, 0}};

// Three workers and firms in a cycle; ids a1 c1 d1 a2 c2 d2 a3 c3 d3.
inline sgmm::Instance triangle(int p) {
  sgmm::FixtureParams prm;
  prm.p = p;
  return sgmm::make_fixture("triangle", prm);
}
enum : sgmm::EdgeId { a1, c1, d1, a2, c2, d2, a3, c3, d3 };

// Step k of the unique full route.
inline sgmm::GVector tri_point(int p, int k) {
  int c = k % 2 == 0 ? p - k / 2 : p - (k - 1) / 2;
  int d = k % 2 == 0 ? p - k / 2 : p - (k + 1) / 2;
  return sgmm::GVector(std::vector<int>{k, c, d, k, c, d, k, c, d});
}
inline const sgmm::Rotation kR{std::vector<sgmm::EdgeId>{a1, d2, a2, d3, a3, d1}};
inline const sgmm::Rotation kRp{std::vector<sgmm::EdgeId>{a1, c3, a3, c2, a2, c1}};

inline sgmm::Instance random_linear(std::uint64_t seed, int density = 70, int qmin = 1, int qmax = 3) {
  sgmm::FixtureParams p;
  p.seed = seed;
  p.density = density;
  p.qmin = qmin;
  p.qmax = qmax;
  return sgmm::make_fixture("random-linear", p);
}

// Two disjoint copies of the 2x2 market: two commuting rotations.
inline sgmm::Instance twin_marriage(int b = 1) {
  std::string s = "sgmm 1\n";
  for (int k = 0; k < 2; ++k) {
    std::string w1 = "w" + std::to_string(2 * k + 1), w2 = "w" + std::to_string(2 * k + 2);
    std::string f1 = "f" + std::to_string(2 * k + 1), f2 = "f" + std::to_string(2 * k + 2);
    std::string t = std::to_string(k), cap = " " + std::to_string(b);
    s += "worker " + w1 + "\nworker " + w2 + "\nfirm " + f1 + "\nfirm " + f2 + "\n";
    s += "edge " + w1 + " " + f1 + cap + " p" + t + "\nedge " + w1 + " " + f2 + cap + " q" + t + "\n";
    s += "edge " + w2 + " " + f1 + cap + " r" + t + "\nedge " + w2 + " " + f2 + cap + " s" + t + "\n";
    s += "cf " + w1 + " linear quota=" + std::to_string(b) + " order=p" + t + ",q" + t + "\n";
    s += "cf " + w2 + " linear quota=" + std::to_string(b) + " order=s" + t + ",r" + t + "\n";
    s += "cf " + f1 + " linear quota=" + std::to_string(b) + " order=r" + t + ",p" + t + "\n";
    s += "cf " + f2 + " linear quota=" + std::to_string(b) + " order=q" + t + ",s" + t + "\n";
  }
  return sgmm::parse_instance(s + "gapless true\n");
}

}  // namespace fx
