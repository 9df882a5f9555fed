// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dcone/geometry.hpp"

namespace dcone {

/// Absolute tolerance for the case sums a1 + c2 and a2 + c1.
inline constexpr double kCaseTolerance = 1e-12;

/// Two quadratic obstacles p1 = a1 x1^2 + 2 b1 x1 x2 + c1 x2^2 (lower) and
/// p2 = a2 x1^2 + 2 b2 x1 x2 + c2 x2^2 (upper).
struct ObstaclePair {
  double a1 = 0.0, b1 = 0.0, c1 = 0.0;
  double a2 = 0.0, b2 = 0.0, c2 = 0.0;

  [[nodiscard]] constexpr QuadForm lower() const { return {a1, b1, c1}; }
  [[nodiscard]] constexpr QuadForm upper() const { return {a2, b2, c2}; }
  [[nodiscard]] constexpr double lambda1() const { return 2.0 * (a1 + c1); }
  [[nodiscard]] constexpr double lambda2() const { return 2.0 * (a2 + c2); }

  static constexpr ObstaclePair from_forms(QuadForm p1, QuadForm p2) {
    return {p1.a, p1.b, p1.c, p2.a, p2.b, p2.c};
  }
};

/// Pair with vanishing cross coefficients.
struct NormalizedPair {
  double a1 = 0.0, c1 = 0.0;
  double a2 = 0.0, c2 = 0.0;

  [[nodiscard]] constexpr QuadForm lower() const { return {a1, 0.0, c1}; }
  [[nodiscard]] constexpr QuadForm upper() const { return {a2, 0.0, c2}; }
  [[nodiscard]] constexpr double lambda1() const { return 2.0 * (a1 + c1); }
  [[nodiscard]] constexpr double lambda2() const { return 2.0 * (a2 + c2); }
  [[nodiscard]] constexpr ObstaclePair as_pair() const { return {a1, 0.0, c1, a2, 0.0, c2}; }
  [[nodiscard]] bool is_canonical() const {
    return a1 == -1.0 && c1 == -1.0 && a2 == 1.0 && c2 == 1.0;
  }
};

inline constexpr NormalizedPair kCanonicalPair{-1.0, -1.0, 1.0, 1.0};

/// Maps original coordinates x and forms p to normalized ones:
///   y = R(rotation) x,   p~(y) = scale * (p(R(-rotation) y) - h(y)),
/// with h = harmonic_a (y1^2 - y2^2) + 2 harmonic_b y1 y2.
struct TransformRecord {
  double rotation = 0.0;
  double harmonic_a = 0.0;
  double harmonic_b = 0.0;
  double scale = 1.0;

  [[nodiscard]] QuadForm harmonic() const { return {harmonic_a, harmonic_b, -harmonic_a}; }
  [[nodiscard]] bool is_identity() const {
    return rotation == 0.0 && harmonic_a == 0.0 && harmonic_b == 0.0 && scale == 1.0;
  }

  [[nodiscard]] QuadForm forward(QuadForm p) const;
  [[nodiscard]] QuadForm inverse(QuadForm p) const;
  [[nodiscard]] ObstaclePair forward(const ObstaclePair& pair) const;
  [[nodiscard]] ObstaclePair inverse(const ObstaclePair& pair) const;
  [[nodiscard]] Vec2 forward_point(Vec2 x) const;
  [[nodiscard]] Vec2 inverse_point(Vec2 y) const;

  /// The record equivalent to applying *this first and then `next`.
  [[nodiscard]] TransformRecord then(const TransformRecord& next) const;
};

struct SignaturePolynomial {
  double A = 0.0;  // a1 + c2
  double C = 0.0;  // a2 + c1
};

struct Normalization {
  NormalizedPair pair;
  TransformRecord record;
};

/// Returns the pair when lambda1 < 0 < lambda2 and D^2(p2 - p1) is positive
/// definite; throws SignViolation / NotSinglePointContact / NonFinite.
ObstaclePair validate(const ObstaclePair& pair);
NormalizedPair validate(const NormalizedPair& pair);

/// Rotates so that the cross coefficients agree, then subtracts the common
/// harmonic 2 b x1 x2.
Normalization normalize(const ObstaclePair& pair);

/// Maps a Case 1 pair onto (-1, -1, 1, 1). `prior` is composed in front of
/// the reduction.
Normalization reduce_case1(const NormalizedPair& pair, const TransformRecord& prior = {});

SignaturePolynomial signature(const NormalizedPair& pair);

}  // namespace dcone
