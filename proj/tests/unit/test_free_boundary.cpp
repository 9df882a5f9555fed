// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "dcone/analytic_solutions.hpp"
#include "dcone/error.hpp"
#include "dcone/free_boundary.hpp"

namespace dcone {
namespace {

const ObstaclePair kCanonical = kCanonicalPair.as_pair();
constexpr NormalizedPair kCase2{-1, -1, 2, 0};
constexpr NormalizedPair kCase3{-1, -1, 2, 2};

ScalarField solved(const NormalizedPair& pair, const BlowupSolution& data, int n = 257) {
  SolveConfig cfg;
  cfg.omega = optimal_omega(n);
  cfg.order = SweepOrder::RedBlack;
  cfg.max_iterations = 400 * n;
  return solve(pair.as_pair(), GridSpec{1.0, n}, [&](Vec2 x) { return data.value(x); }, cfg);
}

double degrees_between(Vec2 a, Vec2 b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0)) * 180.0 / kPi;
}

// Piece boundaries of an exact solution where a coincidence sector ends.
std::vector<Vec2> analytic_tangents(const BlowupSolution& s) {
  std::vector<Vec2> out;
  for (const auto& p : s.pieces) {
    if (p.kind != PieceKind::Harmonic) {
      out.push_back(unit(p.lo));
      out.push_back(unit(p.hi));
    }
  }
  return out;
}

TEST(ExtractFreeBoundary, RightAngleDoubleCone) {
  const BlowupSolution mu = build_mu(kPi / 2, kPi / 2);
  const FreeBoundaryCurves c = extract_free_boundary(solved(kCanonicalPair, mu));
  ASSERT_EQ(c.lower.size(), 2u);
  ASSERT_EQ(c.upper.size(), 2u);
  const auto expected = analytic_tangents(mu);
  for (const auto* set : {&c.lower, &c.upper}) {
    for (const CurveBranch& b : *set) {
      double best = 180.0;
      for (Vec2 e : expected) best = std::min(best, degrees_between(b.tangent, e));
      EXPECT_LT(best, 3.0);
      EXPECT_GT(b.fit_points, 5);
      for (std::size_t i = 1; i < b.points.size(); ++i) {
        EXPECT_GT(norm(b.points[i]), norm(b.points[i - 1]));
      }
    }
  }
  EXPECT_TRUE(c.lower_plus && c.lower_minus && c.upper_plus && c.upper_minus);
  const AngleReport r = measure_angles(c, kCanonicalPair);
  const AngleMeasurement* a = r.find("gamma1+_gamma2+");
  ASSERT_NE(a, nullptr);
  EXPECT_NEAR(a->measured, kPi / 2, 3.0 * kPi / 180);
  EXPECT_LT(r.max_deviation_deg, 3.0);
}

TEST(ExtractFreeBoundary, UnequalAnglesBreakCollinearity) {
  const double phi1 = kPi / 3, phi2 = kPi / 2;
  const BlowupSolution mu = build_mu(phi1, phi2);
  const FreeBoundaryCurves c = extract_free_boundary(solved(kCanonicalPair, mu));
  const CurveBranch* plus = c.gamma(Obstacle::Lower, Branch::Plus);
  const CurveBranch* minus = c.gamma(Obstacle::Lower, Branch::Minus);
  ASSERT_NE(plus, nullptr);
  ASSERT_NE(minus, nullptr);
  // The lower sector spans pi - (phi1 + phi2)/2 = 75 degrees.
  const double angle = degrees_between(plus->tangent, minus->tangent);
  EXPECT_NEAR(angle, 180.0 - (phi1 + phi2) * 90.0 / kPi, 3.0);
  EXPECT_LT(angle, 170.0);
  const AngleReport r = measure_angles(c, kCanonicalPair);
  const AngleMeasurement* m = r.find("gamma1+_gamma1-");
  ASSERT_NE(m, nullptr);
  EXPECT_TRUE(std::isnan(m->predicted));
}

TEST(ExtractFreeBoundary, Case2NarrowCone) {
  const auto cones = enumerate_double_cones(kCase2);
  const BlowupSolution* narrow = nullptr;
  for (const auto& s : cones) {
    for (const auto& p : s.pieces) {
      if (p.kind == PieceKind::Harmonic && std::abs(p.width() - kPi / 3) < 1e-9) narrow = &s;
    }
  }
  ASSERT_NE(narrow, nullptr);
  const FreeBoundaryCurves c = extract_free_boundary(solved(kCase2, *narrow));
  const AngleReport r = measure_angles(c, kCase2);
  bool sixty = false;
  for (const auto& a : r.angles) {
    if (!std::isnan(a.predicted) && std::abs(a.predicted - kPi / 3) < 1e-12) {
      sixty = true;
      EXPECT_LT(a.deviation_deg, 3.0) << a.name;
    }
  }
  EXPECT_TRUE(sixty);
}

TEST(ExtractFreeBoundary, Case3HalfspaceHasOnlyGamma1) {
  const BlowupSolution u =
      build_halfspace(kCase3, Obstacle::Lower, 0.0, Branch::Plus, HalfspaceSide::Above);
  const ScalarField f = solved(kCase3, u, 129);
  const FreeBoundaryCurves c = extract_free_boundary(f);
  EXPECT_TRUE(c.upper.empty());
  ASSERT_EQ(c.lower.size(), 2u);
  // Two opposite rays of the line x2 = -x1.
  EXPECT_NEAR(degrees_between(c.lower[0].tangent, c.lower[1].tangent), 180.0, 3.0);
  EXPECT_NEAR(std::abs(c.lower[0].tangent.x + c.lower[0].tangent.y), 0.0, 0.05);
  try {
    extract_branches(f, Obstacle::Upper);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCurve);
  }
  try {
    measure_angles(c, kCase3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientCurves);
  }
}

TEST(ExtractFreeBoundary, InactiveObstaclesHaveNoCurve) {
  const ObstaclePair inactive{-1e6, 0, -1e6, 1e6, 0, 1e6};
  const ScalarField f =
      sample_field(inactive, GridSpec{1.0, 65}, [](Vec2 x) { return x.x * x.x - x.y * x.y; });
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    try {
      extract_branches(f, which);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoCurve);
    }
  }
  try {
    extract_free_boundary(f);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCurve);
  }
}

TEST(ExtractBranches, SampledConeTangentsAreAccurate) {
  const BlowupSolution mu = build_mu(1.0, 2.0, 1);
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, mu);
  const auto expected = analytic_tangents(mu);
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    const auto branches = extract_branches(f, which);
    ASSERT_EQ(branches.size(), 2u);
    for (const auto& b : branches) {
      double best = 180.0;
      for (Vec2 e : expected) best = std::min(best, degrees_between(b.tangent, e));
      EXPECT_LT(best, 1.0);
      EXPECT_NEAR(norm(b.tangent), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace dcone
