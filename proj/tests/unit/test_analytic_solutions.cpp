// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dcone/analytic_solutions.hpp"
#include "dcone/classifier.hpp"
#include "dcone/error.hpp"

namespace dcone {
namespace {

constexpr NormalizedPair kCase2{-1, -1, 2, 0};
constexpr NormalizedPair kCase3{-1, -1, 2, 2};

double sgn(double v) { return (v > 0) - (v < 0); }

Vec2 random_point(std::mt19937_64& rng, double radius = 2.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

std::vector<BlowupSolution> sample_solutions() {
  std::vector<BlowupSolution> out{build_mu(kPi / 3, kPi / 2), build_mu(0.4, 2.5, 3),
                                  john_solution(),
                                  build_halfspace_normal(kCanonicalPair, Obstacle::Lower, 0.7),
                                  build_halfspace_normal(kCanonicalPair, Obstacle::Upper, 2.1)};
  for (const auto& s : enumerate_double_cones(kCase2)) out.push_back(s);
  return out;
}

// Midpoint polar quadrature of the degree-two Weiss functional, using only
// the pointwise values and gradients of the solution.
double weiss_by_quadrature(const BlowupSolution& s, const NormalizedPair& pair) {
  const int nt = 8192, nr = 400;
  double bulk = 0.0, boundary = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double t = kTwoPi * (it + 0.5) / nt;
    const PieceKind kind = s.piece_at(t).kind;
    const double lap = kind == PieceKind::Lower   ? pair.lambda1()
                       : kind == PieceKind::Upper ? pair.lambda2()
                                                  : 0.0;
    for (int ir = 0; ir < nr; ++ir) {
      const double r = (ir + 0.5) / nr;
      const Vec2 x = unit(t) * r;
      const Vec2 g = s.gradient(x);
      bulk += (dot(g, g) + 2.0 * s.value(x) * lap) * r;
    }
    const double v = s.value(unit(t));
    boundary += v * v;
  }
  return bulk * (kTwoPi / nt) / nr - 2.0 * boundary * (kTwoPi / nt);
}

TEST(Eval, SignSquaresAtOneOne) {
  const Evaluation e = eval(john_solution(), {1.0, 1.0});
  EXPECT_DOUBLE_EQ(e.value, 2.0);
  EXPECT_DOUBLE_EQ(e.gradient.x, 2.0);
  EXPECT_DOUBLE_EQ(e.gradient.y, 2.0);
}

TEST(Eval, SignSquaresMatchesFormula) {
  std::mt19937_64 rng(3);
  const BlowupSolution u = john_solution();
  for (int i = 0; i < 200; ++i) {
    const Vec2 x = random_point(rng);
    EXPECT_NEAR(u.value(x), x.x * x.x * sgn(x.x) + x.y * x.y * sgn(x.y), 1e-12);
  }
}

TEST(Eval, MuIsRSquaredOnUpperSector) {
  std::mt19937_64 rng(4);
  const double phi1 = 1.1, phi2 = 0.6;
  const BlowupSolution mu = build_mu(phi1, phi2);
  std::uniform_real_distribution<double> angle(-phi2 / 2, phi1 / 2);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double r = radius(rng);
    EXPECT_NEAR(mu.value(unit(angle(rng)) * r), r * r, 1e-12 * r * r);
  }
}

TEST(Eval, OriginIsZero) {
  for (const auto& s : sample_solutions()) {
    const Evaluation e = eval(s, {0.0, 0.0});
    EXPECT_EQ(e.value, 0.0) << s.label;
    EXPECT_EQ(e.gradient.x, 0.0) << s.label;
    EXPECT_EQ(e.gradient.y, 0.0) << s.label;
  }
}

TEST(Eval, HomogeneousOfDegreeTwo) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.01, 10.0);
  const auto solutions = sample_solutions();
  for (int i = 0; i < 50; ++i) {
    const BlowupSolution& s = solutions[i % solutions.size()];
    const Vec2 x = random_point(rng);
    const double t = scale(rng);
    const Evaluation a = eval(s, x), b = eval(s, x * t);
    EXPECT_NEAR(b.value, t * t * a.value, 1e-11 * t * t * (1.0 + std::abs(a.value)));
    EXPECT_NEAR(b.gradient.x, t * a.gradient.x, 1e-11 * t * (1.0 + norm(a.gradient)));
    EXPECT_NEAR(b.gradient.y, t * a.gradient.y, 1e-11 * t * (1.0 + norm(a.gradient)));
  }
}

TEST(BuildMu, RightAnglesGiveSignSquaresUpToSymmetry) {
  const BlowupSolution mu = build_mu(kPi / 2, kPi / 2);
  const BlowupSolution turned = rotated(john_solution(), -kPi / 4);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x = random_point(rng);
    EXPECT_NEAR(mu.value(x), turned.value(x), 1e-12);
  }
}

TEST(BuildMu, C1AcrossEveryPieceBoundary) {
  const BlowupSolution mu = build_mu(0.9, 2.2, 1);
  for (const auto& p : mu.pieces) {
    const Vec2 lo = unit(p.lo - 1e-9), hi = unit(p.lo + 1e-9);
    EXPECT_NEAR(mu.value(lo), mu.value(hi), 1e-8);
    EXPECT_NEAR(mu.gradient(lo).x, mu.gradient(hi).x, 1e-8);
    EXPECT_NEAR(mu.gradient(lo).y, mu.gradient(hi).y, 1e-8);
  }
}

TEST(BuildMu, RejectsAnglesOutsideOpenInterval) {
  for (double phi : {0.0, kPi, -0.1, 4.0}) {
    try {
      build_mu(phi, 1.0);
      ADD_FAILURE() << phi;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AngleOutOfRange);
    }
  }
}

TEST(BuildHalfspace, CanonicalLowerAtAlphaMinusOne) {
  const BlowupSolution u =
      build_halfspace(kCanonicalPair, Obstacle::Lower, -1.0, Branch::Plus, HalfspaceSide::Above);
  EXPECT_EQ(u.family, Family::Halfspace);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x = random_point(rng);
    EXPECT_NEAR(u.value(x), -x.x * x.x + sgn(x.y) * x.y * x.y, 1e-12);
  }
}

TEST(BuildHalfspace, Case3LowerAtAlphaZero) {
  // beta = +-1: the + branch is 2 x1 x2 above x2 = -x1, the - branch is
  // -2 x1 x2 above x2 = x1.
  const BlowupSolution plus =
      build_halfspace(kCase3, Obstacle::Lower, 0.0, Branch::Plus, HalfspaceSide::Above);
  const BlowupSolution minus =
      build_halfspace(kCase3, Obstacle::Lower, 0.0, Branch::Minus, HalfspaceSide::Above);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x = random_point(rng);
    const double p1 = -x.x * x.x - x.y * x.y;
    EXPECT_NEAR(plus.value(x), x.y > -x.x ? 2.0 * x.x * x.y : p1, 1e-12);
    EXPECT_NEAR(minus.value(x), x.y > x.x ? -2.0 * x.x * x.y : p1, 1e-12);
  }
  EXPECT_TRUE(verify_solution(plus, kCase3).pass());
  EXPECT_TRUE(verify_solution(minus, kCase3).pass());
}

TEST(BuildHalfspace, DefinitionIdentityAtRandomPoints) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  int built = 0;
  for (const NormalizedPair& pair : {kCanonicalPair, kCase2, kCase3}) {
    for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
      for (int k = 0; k < 40; ++k) {
        const double a = angle(rng);
        if (!halfspace_normal_admissible(pair, which, a)) continue;
        const BlowupSolution u = build_halfspace_normal(pair, which, a);
        ++built;
        const Vec2 e = unit(a);
        for (int i = 0; i < 100; ++i) {
          const Vec2 x = random_point(rng);
          const double plus = std::max(dot(x, e), 0.0);
          if (which == Obstacle::Lower) {
            EXPECT_NEAR(u.value(x) - pair.lower()(x), -0.5 * pair.lambda1() * plus * plus, 1e-10);
          } else {
            EXPECT_NEAR(pair.upper()(x) - u.value(x), 0.5 * pair.lambda2() * plus * plus, 1e-10);
          }
        }
      }
    }
  }
  EXPECT_GT(built, 100);
}

TEST(BuildHalfspace, InadmissibleNormalThrows) {
  EXPECT_FALSE(halfspace_normal_admissible(kCase3, Obstacle::Upper, 0.3));
  try {
    build_halfspace_normal(kCase3, Obstacle::Upper, 0.3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Inadmissible);
  }
}

TEST(BuildHalfspace, Case1ContactRayIsNormalToTheLine) {
  for (double a : {0.0, 0.4, 1.9, 4.0}) {
    const BlowupSolution u = build_halfspace_normal(kCanonicalPair, Obstacle::Lower, a);
    ASSERT_EQ(u.contact_rays.size(), 1u);
    EXPECT_EQ(u.contact_rays[0].obstacle, Obstacle::Upper);
    EXPECT_NEAR(std::cos(u.contact_rays[0].angle - a), 1.0, 1e-12);
    const Vec2 d = unit(u.contact_rays[0].angle);
    EXPECT_NEAR(u.value(d), kCanonicalPair.upper()(d), 1e-12);
  }
}

TEST(BuildPolynomial, HarmonicBetweenObstacles) {
  const BlowupSolution u = build_polynomial(kCanonicalPair, {0.3, 0.2, -0.3});
  EXPECT_EQ(u.family, Family::Polynomial);
  const VerificationReport r = verify_solution(u, kCanonicalPair);
  EXPECT_TRUE(r.pass());
}

TEST(BuildPolynomial, ObstacleItself) {
  EXPECT_TRUE(verify_solution(build_polynomial(kCase2, kCase2.lower()), kCase2).pass());
  EXPECT_TRUE(verify_solution(build_polynomial(kCase2, kCase2.upper()), kCase2).pass());
}

TEST(BuildPolynomial, RejectsFormsLeavingTheStrip) {
  try {
    build_polynomial(kCanonicalPair, {2.0, 0.0, -2.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Inadmissible);
  }
}

TEST(Verify, EveryBuilderPasses) {
  for (const auto& s : sample_solutions()) {
    const NormalizedPair& pair = s.label.rfind("double-cone", 0) == 0 ? kCase2 : kCanonicalPair;
    const VerificationReport r = verify_solution(s, pair);
    EXPECT_TRUE(r.pass()) << s.label;
  }
}

TEST(Verify, EveryCase2DoubleConePasses) {
  const auto cones = enumerate_double_cones(kCase2);
  ASSERT_EQ(cones.size(), 4u);
  for (const auto& s : cones) EXPECT_TRUE(verify_solution(s, kCase2).pass()) << s.label;
}

TEST(Verify, OriginalCoordinatesOverload) {
  const ObstaclePair pair{-1, 0, -1, 1, 0, 1};
  EXPECT_TRUE(verify_solution(john_solution(), pair).pass());
}

TEST(Verify, CorruptedMuFlagsGradientJump) {
  const double phi1 = kPi / 3, phi2 = kPi / 2, eps = 1e-3;
  BlowupSolution mu = build_mu(phi1, phi2);
  const double p = phi1 + eps;
  mu.pieces[1].form = {std::cos(p), std::sin(p), -std::cos(p)};
  const VerificationReport r = verify_solution(mu, kCanonicalPair);
  EXPECT_FALSE(r.pass());
  // d/dtheta cos(2 theta - phi1 - eps) at 2 theta = phi1 jumps by 2 sin(eps).
  EXPECT_NEAR(r.metric("c1_matching"), 2.0 * std::sin(eps), 2e-4);
  EXPECT_TRUE(std::isnan(r.metric("no_such_check")));
}

TEST(Verify, WrongPairFails) { EXPECT_FALSE(verify_solution(build_mu(1.0, 1.0), kCase2).pass()); }

TEST(WeissOfBlowup, CanonicalLevels) {
  EXPECT_NEAR(
      weiss_of_blowup(build_polynomial(kCanonicalPair, kCanonicalPair.lower()), kCanonicalPair),
      kTwoPi, 1e-12);
  EXPECT_NEAR(
      weiss_of_blowup(build_polynomial(kCanonicalPair, kCanonicalPair.upper()), kCanonicalPair),
      kTwoPi, 1e-12);
  EXPECT_NEAR(weiss_of_blowup(build_polynomial(kCanonicalPair, {0.2, -0.5, -0.2}), kCanonicalPair),
              0.0, 1e-12);
  for (const auto& s : {build_mu(kPi / 3, kPi / 2), build_mu(2.0, 0.3, 2), john_solution(),
                        build_halfspace_normal(kCanonicalPair, Obstacle::Upper, 1.0)}) {
    EXPECT_NEAR(weiss_of_blowup(s, kCanonicalPair), kPi, 1e-12) << s.label;
  }
}

TEST(WeissOfBlowup, AgreesWithQuadrature) {
  for (const auto& s : sample_solutions()) {
    const NormalizedPair& pair = s.label.rfind("double-cone", 0) == 0 ? kCase2 : kCanonicalPair;
    EXPECT_NEAR(weiss_of_blowup(s, pair), weiss_by_quadrature(s, pair), 2e-3) << s.label;
  }
}

}  // namespace
}  // namespace dcone
