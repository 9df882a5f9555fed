// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "dcone/analysis.hpp"
#include "dcone/error.hpp"

namespace dcone {
namespace {

const ObstaclePair kCanonical = kCanonicalPair.as_pair();
const ObstaclePair kInactive{-1e6, 0, -1e6, 1e6, 0, 1e6};
constexpr NormalizedPair kCase2{-1, -1, 2, 0};

// Zero on the edges of each harmonic sector of mu(phi1, phi2), orthogonal to
// the sector's test function sin(phi1 - 2 theta) or sin(2 theta + phi2).
double sector_perturbation(const BlowupSolution& mu, double phi1, double phi2, Vec2 x) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  const double t = angle_of(x);
  const AngularPiece& p = mu.piece_at(t);
  if (p.kind != PieceKind::Harmonic) return 0.0;
  const bool first = std::abs(std::cos(p.lo - 0.5 * phi1)) > 1.0 - 1e-12;
  const double r4 = r * r * r * r;
  return first ? r4 * std::sin(4.0 * t - 2.0 * phi1) : r4 * std::sin(4.0 * t + 2.0 * phi2);
}

TEST(Rescale, HomogeneousFieldIsAFixedPoint) {
  const BlowupSolution mu = build_mu(kPi / 3, kPi / 2);
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, mu);
  const DiskSamples a = rescale(f, 0.5), b = rescale(f, 0.25);
  EXPECT_LT(l2_distance(a, mu), 2e-3);
  EXPECT_LT(l2_distance(b, mu), 5e-3);
  const ScalarField p = sample_field(kCanonical, GridSpec{1.0, 129}, kCanonical.lower());
  EXPECT_LT(l2_distance(rescale(p, 0.5), sample_disk([](Vec2 x) { return -dot(x, x); })), 1e-3);
}

TEST(Rescale, RadiusTooLarge) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 65}, kCanonical.lower());
  try {
    rescale(f, 0.51);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RadiusTooLarge);
  }
}

TEST(Rescale, PerturbationDecaysUnderRescaling) {
  const double phi1 = kPi / 3, phi2 = kPi / 2;
  const BlowupSolution mu = build_mu(phi1, phi2);
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 513}, [&](Vec2 x) {
    return mu.value(x) + 0.1 * sector_perturbation(mu, phi1, phi2, x);
  });
  double last = kTwoPi;
  for (double r : {0.5, 0.25, 0.125}) {
    const double d = l2_distance(rescale(f, r), mu);
    EXPECT_LT(d, last) << r;
    last = d;
  }
}

TEST(L2, NormAndDistance) {
  const DiskSamples one = sample_disk([](Vec2) { return 1.0; });
  EXPECT_NEAR(l2_norm(one), std::sqrt(kPi), 1e-12);
  const DiskSamples r2 = sample_disk([](Vec2 x) { return dot(x, x); });
  // int_B1 r^4 = pi/3.
  EXPECT_NEAR(l2_norm(r2), std::sqrt(kPi / 3), 5e-4);
  EXPECT_NEAR(l2_distance(r2, one), std::sqrt(kPi / 3), 5e-4);
}

TEST(Weiss, CoincidenceLevel) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, kCanonical.lower());
  for (double r : {0.5, 0.3, 0.1}) EXPECT_NEAR(weiss_energy(f, r), kTwoPi, 1e-3) << r;
  const ScalarField g = sample_field(kCanonical, GridSpec{1.0, 257}, kCanonical.upper());
  EXPECT_NEAR(weiss_energy(g, 0.4), kTwoPi, 1e-3);
}

TEST(Weiss, HarmonicLevel) {
  const ScalarField f =
      sample_field(kInactive, GridSpec{1.0, 257}, [](Vec2 x) { return 2.0 * x.x * x.y; });
  for (double r : {0.5, 0.3, 0.1}) EXPECT_NEAR(weiss_energy(f, r), 0.0, 1e-3) << r;
}

TEST(Weiss, DoubleConeLevel) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, build_mu(kPi / 2, kPi / 2));
  for (double r : {0.5, 0.3}) EXPECT_NEAR(weiss_energy(f, r), kPi, 1e-3) << r;
}

TEST(Weiss, ScalingIdentity) {
  // W(u, 2r) on [-1, 1]^2 equals W(u(2 x)/4, r) on [-1/2, 1/2]^2.
  auto u = [](Vec2 x) {
    return x.x * x.x - x.y * x.y + 0.7 * (x.x * x.x * x.x - 3.0 * x.x * x.y * x.y);
  };
  const ScalarField big = sample_field(kInactive, GridSpec{1.0, 257}, u);
  const ScalarField small =
      sample_field(kInactive, GridSpec{0.5, 257}, [&](Vec2 x) { return u(x * 2.0) / 4.0; });
  for (double r : {0.2, 0.1}) {
    EXPECT_NEAR(weiss_energy(big, 2.0 * r), weiss_energy(small, r), 1e-9) << r;
  }
}

TEST(WeissTrace, HomogeneousFieldIsConstant) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, build_mu(1.0, 2.0));
  const WeissTraceResult t = weiss_trace(f, {0.5, 0.4, 0.3, 0.2});
  ASSERT_EQ(t.trace.w.size(), 4u);
  // The mask layer along the free boundary costs O(h / r).
  for (double w : t.trace.w) EXPECT_NEAR(w, kPi, 1e-2);
  EXPECT_LT(std::abs(t.report.min_difference), 5e-3);
  EXPECT_TRUE(t.report.monotone);
}

TEST(WeissTrace, UpperObstacleIsConstantTwoPi) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 129}, kCanonical.upper());
  const WeissTraceResult t = weiss_trace(f, {0.5, 0.4});
  for (double w : t.trace.w) EXPECT_NEAR(w, kTwoPi, 1e-3);
}

TEST(WeissTrace, RejectsBadRadii) {
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 65}, kCanonical.upper());
  const double h = f.grid.h();
  for (const std::vector<double>& radii :
       {std::vector<double>{0.3, 0.4}, std::vector<double>{0.3, 0.3}, std::vector<double>{0.6, 0.4},
        std::vector<double>{0.4, 19.0 * h}}) {
    try {
      weiss_trace(f, radii);
      ADD_FAILURE() << radii[0] << " " << radii[1];
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
  }
}

TEST(EnergyClass, CanonicalLevels) {
  EXPECT_EQ(classify_blowup_energy(3.14, kCanonicalPair).cls, EnergyClass::HalfspaceOrDoubleCone);
  EXPECT_EQ(classify_blowup_energy(6.28, kCanonicalPair).cls, EnergyClass::CoincidencePolynomial);
  EXPECT_EQ(classify_blowup_energy(0.02, kCanonicalPair).cls, EnergyClass::PolynomialHarmonic);
  const EnergyClassification c = classify_blowup_energy(3.2, kCanonicalPair);
  EXPECT_DOUBLE_EQ(c.level, kPi);
  EXPECT_NEAR(c.nearest_distance, 3.2 - kPi, 1e-15);
}

TEST(EnergyClass, Case2LevelsComeFromTheFamilies) {
  const EnergyLevels levels = energy_levels(kCase2);
  // Halfspace levels share the class with the four double cones.
  EXPECT_GT(levels.cone.size(), 4u);
  EXPECT_EQ(levels.coincidence.size(), 2u);
  for (const auto& s : enumerate_double_cones(kCase2)) {
    const double w = weiss_of_blowup(s, kCase2);
    EXPECT_NE(std::find(levels.cone.begin(), levels.cone.end(), w), levels.cone.end());
    EXPECT_EQ(classify_blowup_energy(w, kCase2).cls, EnergyClass::HalfspaceOrDoubleCone);
  }
}

TEST(FitDoubleCone, SelfFit) {
  const double phi1 = kPi / 3, phi2 = kPi / 2;
  const FitResult fit = fit_minimal_double_cone(sample_disk(build_mu(phi1, phi2)), kCanonicalPair);
  EXPECT_NEAR(fit.diagnostics.phi1, phi1, 1e-4);
  EXPECT_NEAR(fit.diagnostics.phi2, phi2, 1e-4);
  EXPECT_EQ(fit.diagnostics.arrangement, 0);
  EXPECT_LT(fit.distance, 1e-8);
  ASSERT_EQ(fit.orthogonality.size(), 2u);
  for (double o : fit.orthogonality) EXPECT_LT(std::abs(o), 1e-6);
}

TEST(FitDoubleCone, SelfFitOtherArrangement) {
  const FitResult fit = fit_minimal_double_cone(sample_disk(build_mu(2.0, 0.7, 3)), kCanonicalPair);
  EXPECT_LT(fit.distance, 1e-8);
  EXPECT_TRUE(verify_solution(fit.solution, kCanonicalPair).pass());
}

TEST(FitDoubleCone, OrthogonalPerturbationKeepsTheAngles) {
  const double phi1 = kPi / 3, phi2 = kPi / 2;
  const BlowupSolution mu = build_mu(phi1, phi2);
  const DiskSamples s = sample_disk(
      [&](Vec2 x) { return mu.value(x) + 1e-3 * sector_perturbation(mu, phi1, phi2, x); });
  const FitResult fit = fit_minimal_double_cone(s, kCanonicalPair);
  EXPECT_NEAR(fit.diagnostics.phi1, phi1, 1e-3);
  EXPECT_NEAR(fit.diagnostics.phi2, phi2, 1e-3);
  for (double o : fit.orthogonality) EXPECT_LT(std::abs(o), 1e-5);
  const auto at_truth = orthogonality_residuals(s, phi1, phi2, 0);
  for (double o : at_truth) EXPECT_LT(std::abs(o), 1e-5);
}

TEST(FitDoubleCone, Case2PicksTheCandidate) {
  const auto cones = enumerate_double_cones(kCase2);
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const FitResult fit = fit_minimal_double_cone(sample_disk(cones[i]), kCase2);
    EXPECT_EQ(fit.diagnostics.candidate, static_cast<int>(i));
    EXPECT_LT(fit.distance, 1e-8);
  }
}

TEST(FitDoubleCone, RejectsCase3AndNonCanonicalCase1) {
  const DiskSamples s = sample_disk(build_mu(1.0, 1.0));
  try {
    fit_minimal_double_cone(s, {-1, -1, 2, 2});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCase1Or2);
  }
  try {
    fit_minimal_double_cone(s, {-2, -1, 1, 2});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(FitHalfspace, SelfFit) {
  // -x1^2 + sgn(x2) x2^2 has normal e2.
  const DiskSamples s =
      sample_disk([](Vec2 x) { return -x.x * x.x + (x.y > 0 ? 1.0 : -1.0) * x.y * x.y; });
  const FitResult fit = fit_halfspace(s, kCanonicalPair, Obstacle::Lower);
  EXPECT_NEAR(std::cos(fit.diagnostics.normal_angle - kPi / 2), 1.0, 1e-12);
  EXPECT_NEAR(fit.diagnostics.alpha, -1.0, 1e-6);
  EXPECT_LT(fit.distance, 1e-8);
}

TEST(FitHalfspace, Case2StaysInsideTheCone) {
  const DirectionBound k = halfspace_direction_bounds(kCase2, Obstacle::Lower);
  ASSERT_EQ(k.kind, DirectionBound::Kind::ConeBound);
  int checked = 0;
  for (double a = 0.05; a < kTwoPi; a += 0.37) {
    if (!halfspace_normal_admissible(kCase2, Obstacle::Lower, a)) continue;
    const BlowupSolution exact = build_halfspace_normal(kCase2, Obstacle::Lower, a);
    const FitResult fit = fit_halfspace(sample_disk(exact), kCase2, Obstacle::Lower);
    EXPECT_LT(fit.distance, 1e-6) << a;
    EXPECT_TRUE(alpha_window(kCase2).contains(fit.diagnostics.alpha));
    // The free-boundary line is perpendicular to the normal.
    const Vec2 e = unit(fit.diagnostics.normal_angle);
    const double slope = std::abs(e.x / e.y);
    if (k.at_most) {
      EXPECT_LE(slope, k.bound + 1e-9) << a;
    } else {
      EXPECT_GE(slope, k.bound - 1e-9) << a;
    }
    ++checked;
  }
  EXPECT_GT(checked, 2);
}

TEST(FitHalfspace, DoubleConeIsFarFromEveryHalfspace) {
  const DiskSamples s = sample_disk(build_mu(kPi / 3, kPi / 2));
  const FitResult hs = fit_halfspace(s, kCanonicalPair, Obstacle::Lower);
  const FitResult dc = fit_minimal_double_cone(s, kCanonicalPair);
  EXPECT_GT(hs.distance, 0.05);
  EXPECT_LT(dc.distance, hs.distance);
}

TEST(FitHalfspace, Case3DisfavouredObstacleHasNoFamily) {
  try {
    fit_halfspace(sample_disk([](Vec2) { return 0.0; }), {-1, -1, 2, 2}, Obstacle::Upper);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoHalfspaceFamily);
  }
}

TEST(Rate, ExactPowerLaw) {
  const std::vector<double> r{0.4, 0.3, 0.2, 0.15, 0.1};
  std::vector<double> d;
  for (double x : r) d.push_back(3.0 * std::pow(x, 1.5));
  const RateEstimate e = fit_rate(r, d);
  EXPECT_NEAR(e.gamma, 1.5, 1e-12);
  EXPECT_NEAR(e.constant, 3.0, 1e-12);
  EXPECT_NEAR(e.residual, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(e.r_min, 0.1);
  EXPECT_DOUBLE_EQ(e.r_max, 0.4);
}

TEST(Rate, NeedsFiveRadii) {
  try {
    fit_rate({0.4, 0.3, 0.2, 0.1}, {1, 1, 1, 1});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Rate, SectorPerturbationDecaysQuadratically) {
  const double phi1 = kPi / 3, phi2 = kPi / 2;
  const BlowupSolution mu = build_mu(phi1, phi2);
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 1025}, [&](Vec2 x) {
    return mu.value(x) + 0.05 * sector_perturbation(mu, phi1, phi2, x);
  });
  const RateEstimate e = convergence_rate(f, mu, {0.5, 0.4, 0.3, 0.25, 0.2});
  EXPECT_NEAR(e.gamma, 2.0, 0.1);
}

TEST(Rate, SolvedFieldDecays) {
  const BlowupSolution mu = build_mu(kPi / 3, kPi / 2);
  const GridSpec g{1.0, 257};
  SolveConfig cfg;
  cfg.omega = optimal_omega(g.n);
  cfg.order = SweepOrder::RedBlack;
  cfg.max_iterations = 400 * g.n;
  const ScalarField f = solve(
      kCanonical, g,
      [&](Vec2 x) {
        return std::clamp(mu.value(x) + 0.05 * (x.x * x.x * x.x - 3.0 * x.x * x.y * x.y),
                          kCanonical.lower()(x), kCanonical.upper()(x));
      },
      cfg);
  const FitResult fit = fit_minimal_double_cone(rescale(f, 0.25), kCanonicalPair);
  const RateEstimate e = convergence_rate(f, fit.solution, {0.5, 0.45, 0.4, 0.35, 0.3});
  EXPECT_GT(e.gamma, 0.0);
}

TEST(Rate, ExactBlowupIsDegenerate) {
  // 2 x1 x2 is reproduced exactly by the interpolation, so every distance
  // vanishes.
  const BlowupSolution u0 = build_polynomial(kCanonicalPair, {0.0, 1.0, 0.0});
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 129}, u0);
  try {
    convergence_rate(f, u0, default_rate_radii(f.grid));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateFit);
  }
}

TEST(Rate, SampledDoubleConeSitsAtTheInterpolationFloor) {
  const BlowupSolution mu = build_mu(kPi / 3, kPi / 2);
  const ScalarField f = sample_field(kCanonical, GridSpec{1.0, 257}, mu);
  for (double r : default_rate_radii(f.grid)) EXPECT_LT(l2_distance(rescale(f, r), mu), 1e-3) << r;
}

TEST(Rate, DefaultRadii) {
  const GridSpec g{1.0, 257};
  const auto r = default_rate_radii(g);
  ASSERT_EQ(r.size(), 6u);
  EXPECT_NEAR(r.front(), 0.25, 1e-12);
  EXPECT_NEAR(r.back(), 8.0 * g.h(), 1e-12);
  for (std::size_t i = 1; i < r.size(); ++i) {
    EXPECT_NEAR(r[i] / r[i - 1], r[1] / r[0], 1e-12);
  }
}

}  // namespace
}  // namespace dcone
