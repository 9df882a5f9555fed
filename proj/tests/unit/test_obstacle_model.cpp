// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dcone/error.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone {
namespace {

ErrorKind kind_of(const ObstaclePair& p) {
  try {
    validate(p);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InvalidArgument;
}

// Direct evaluation of a*x^2 + 2b*x*y + c*y^2.
double poly(double a, double b, double c, double x, double y) {
  return a * x * x + 2.0 * b * x * y + c * y * y;
}

// Random valid pair: p1 with negative trace, p2 = p1 + positive definite.
ObstaclePair random_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  for (;;) {
    ObstaclePair p;
    p.a1 = u(rng);
    p.b1 = u(rng);
    p.c1 = -std::abs(p.a1) - pos(rng);
    const double d11 = pos(rng), d22 = pos(rng);
    const double d12 = 0.9 * std::sqrt(d11 * d22) * (u(rng) / 2.0);
    p.a2 = p.a1 + d11;
    p.b2 = p.b1 + d12;
    p.c2 = p.c1 + d22;
    if (p.a2 + p.c2 > 0.1) return p;
  }
}

TEST(Validate, AcceptsConcentricParaboloids) {
  EXPECT_NO_THROW(validate(ObstaclePair{-1, 0, -1, 1, 0, 1}));
}

TEST(Validate, AcceptsExamplePairs) {
  EXPECT_NO_THROW(validate(ObstaclePair{-1, 0, -1, 2, 0, 0}));
  EXPECT_NO_THROW(validate(ObstaclePair{-1, 0, -1, 2, 0, 2}));
  EXPECT_NO_THROW(validate(ObstaclePair{-2, 0, -1, 1, 0, 2}));
}

TEST(Validate, RejectsContactAlongALine) {
  EXPECT_EQ(kind_of({-1, 0, -1, 2, 0, -1}), ErrorKind::NotSinglePointContact);
}

TEST(Validate, RejectsPositiveLowerLaplacian) {
  EXPECT_EQ(kind_of({1, 0, 1, 2, 0, 2}), ErrorKind::SignViolation);
}

TEST(Validate, RejectsNonPositiveUpperLaplacian) {
  EXPECT_EQ(kind_of({-3, 0, -1, -1, 0, 1}), ErrorKind::SignViolation);
}

TEST(Validate, RejectsIndefiniteGap) {
  // Trace positive, determinant negative through the cross terms.
  EXPECT_EQ(kind_of({-1, 0, -1, 1, 3, 1}), ErrorKind::NotSinglePointContact);
}

TEST(Validate, RejectsNonFinite) {
  EXPECT_EQ(kind_of({-1, NAN, -1, 1, 0, 1}), ErrorKind::NonFinite);
  EXPECT_EQ(kind_of({-1, 0, -1, INFINITY, 0, 1}), ErrorKind::NonFinite);
}

TEST(Normalize, AlreadyNormalizedIsIdentity) {
  const Normalization n = normalize({-1, 0, -1, 1, 0, 1});
  EXPECT_TRUE(n.record.is_identity());
  EXPECT_TRUE(n.pair.is_canonical());
}

TEST(Normalize, CommonCrossTermIsSubtracted) {
  const Normalization n = normalize({-1, 1, -1, 1, 1, 1});
  EXPECT_EQ(n.record.rotation, 0.0);
  EXPECT_EQ(n.record.harmonic_a, 0.0);
  EXPECT_EQ(n.record.harmonic_b, 1.0);
  EXPECT_EQ(n.record.scale, 1.0);
  EXPECT_TRUE(n.pair.is_canonical());
}

TEST(Normalize, RoundTripByDirectEvaluation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ObstaclePair p = random_pair(rng);
    const Normalization n = normalize(p);
    const TransformRecord& r = n.record;
    const double ct = std::cos(r.rotation), st = std::sin(r.rotation);
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng), y = u(rng);
      // y = R(theta) x; p(x) = p~(y)/s + h(y).
      const double y1 = ct * x - st * y, y2 = st * x + ct * y;
      const double h = r.harmonic_a * (y1 * y1 - y2 * y2) + 2.0 * r.harmonic_b * y1 * y2;
      EXPECT_NEAR(poly(n.pair.a1, 0, n.pair.c1, y1, y2) / r.scale + h, poly(p.a1, p.b1, p.c1, x, y),
                  1e-12);
      EXPECT_NEAR(poly(n.pair.a2, 0, n.pair.c2, y1, y2) / r.scale + h, poly(p.a2, p.b2, p.c2, x, y),
                  1e-12);
    }
  }
}

TEST(Normalize, InverseRecordRestoresCoefficients) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ObstaclePair p = random_pair(rng);
    const Normalization n = normalize(p);
    const ObstaclePair back = n.record.inverse(n.pair.as_pair());
    EXPECT_NEAR(back.a1, p.a1, 1e-12);
    EXPECT_NEAR(back.b1, p.b1, 1e-12);
    EXPECT_NEAR(back.c1, p.c1, 1e-12);
    EXPECT_NEAR(back.a2, p.a2, 1e-12);
    EXPECT_NEAR(back.b2, p.b2, 1e-12);
    EXPECT_NEAR(back.c2, p.c2, 1e-12);
    const ObstaclePair fwd = n.record.forward(p);
    EXPECT_NEAR(fwd.b1, 0.0, 1e-12);
    EXPECT_NEAR(fwd.b2, 0.0, 1e-12);
  }
}

TEST(Normalize, AnglesMapLikePoints) {
  const ObstaclePair p{-1, 0.3, -2, 1.5, -0.4, 1};
  const Normalization n = normalize(p);
  const Vec2 x{0.3, -0.7};
  const Vec2 y = n.record.forward_point(x);
  const QuadForm lower = n.pair.lower();
  EXPECT_NEAR(lower(y) / n.record.scale + n.record.harmonic()(y), p.lower()(x), 1e-12);
  const Vec2 back = n.record.inverse_point(y);
  EXPECT_NEAR(back.x, x.x, 1e-15);
  EXPECT_NEAR(back.y, x.y, 1e-15);
}

TEST(ReduceCase1, CanonicalIsIdentity) {
  const Normalization n = reduce_case1(kCanonicalPair);
  EXPECT_TRUE(n.pair.is_canonical());
  EXPECT_EQ(n.record.scale, 1.0);
  EXPECT_EQ(n.record.harmonic_a, 0.0);
}

TEST(ReduceCase1, SubtractsHarmonicAndScales) {
  // p1 = -2x^2 - y^2. With h = -(x^2 - y^2)/2, p1 - h = -3/2 (x^2 + y^2).
  const Normalization n = reduce_case1({-2, -1, 1, 2});
  EXPECT_DOUBLE_EQ(n.record.harmonic_a, -0.5);
  EXPECT_DOUBLE_EQ(n.record.scale, 2.0 / 3.0);
  EXPECT_TRUE(n.pair.is_canonical());
  for (double x : {0.3, -1.2}) {
    for (double y : {0.5, 2.0}) {
      const double h = -0.5 * (x * x - y * y);
      EXPECT_NEAR(poly(-2, 0, -1, x, y) - h, -1.5 * (x * x + y * y), 1e-14);
    }
  }
}

TEST(ReduceCase1, OtherOrientation) {
  const Normalization n = reduce_case1({-1, -2, 2, 1});
  EXPECT_DOUBLE_EQ(n.record.scale, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(n.record.harmonic_a, 0.5);
  EXPECT_TRUE(n.pair.is_canonical());
}

TEST(ReduceCase1, ComposesWithPrior) {
  const ObstaclePair p{-2, 0.7, -1, 1, 0.7, 2};
  const Normalization first = normalize(p);
  const Normalization full = reduce_case1(first.pair, first.record);
  EXPECT_TRUE(full.pair.is_canonical());
  const ObstaclePair fwd = full.record.forward(p);
  EXPECT_NEAR(fwd.a1, -1.0, 1e-12);
  EXPECT_NEAR(fwd.b1, 0.0, 1e-12);
  EXPECT_NEAR(fwd.c1, -1.0, 1e-12);
  EXPECT_NEAR(fwd.a2, 1.0, 1e-12);
  EXPECT_NEAR(fwd.b2, 0.0, 1e-12);
  EXPECT_NEAR(fwd.c2, 1.0, 1e-12);
}

TEST(ReduceCase1, RejectsOtherCases) {
  try {
    reduce_case1({-1, -1, 2, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCase1);
  }
}

TEST(Signature, Examples) {
  const auto s1 = signature(kCanonicalPair);
  EXPECT_EQ(s1.A, 0.0);
  EXPECT_EQ(s1.C, 0.0);
  const auto s2 = signature({-1, -1, 2, 0});
  EXPECT_EQ(s2.A, -1.0);
  EXPECT_EQ(s2.C, 1.0);
  const auto s3 = signature({-1, -1, 2, 2});
  EXPECT_EQ(s3.A, 1.0);
  EXPECT_EQ(s3.C, 1.0);
}

TEST(Signature, ScalesWithPositiveFactor) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const NormalizedPair p = normalize(random_pair(rng)).pair;
    const double s = scale(rng);
    const NormalizedPair q{s * p.a1, s * p.c1, s * p.a2, s * p.c2};
    EXPECT_NEAR(signature(q).A, s * signature(p).A, 1e-12 * s);
    EXPECT_NEAR(signature(q).C, s * signature(p).C, 1e-12 * s);
  }
}

TEST(TransformRecord, ThenMatchesSequentialApplication) {
  const TransformRecord a{0.3, 0.2, -0.1, 1.5};
  const TransformRecord b{-1.1, -0.4, 0.25, 0.7};
  const QuadForm p{0.9, -0.3, 0.4};
  const QuadForm seq = b.forward(a.forward(p));
  const QuadForm comp = a.then(b).forward(p);
  EXPECT_NEAR(seq.a, comp.a, 1e-14);
  EXPECT_NEAR(seq.b, comp.b, 1e-14);
  EXPECT_NEAR(seq.c, comp.c, 1e-14);
}

}  // namespace
}  // namespace dcone
