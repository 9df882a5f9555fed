// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/obstacle_model.hpp"

#include <cmath>
#include <sstream>

#include "dcone/error.hpp"

namespace dcone {

QuadForm TransformRecord::forward(QuadForm p) const {
  return (p.rotated(-rotation) - harmonic()) * scale;
}

QuadForm TransformRecord::inverse(QuadForm p) const {
  return (p * (1.0 / scale) + harmonic()).rotated(rotation);
}

ObstaclePair TransformRecord::forward(const ObstaclePair& pair) const {
  return ObstaclePair::from_forms(forward(pair.lower()), forward(pair.upper()));
}

ObstaclePair TransformRecord::inverse(const ObstaclePair& pair) const {
  return ObstaclePair::from_forms(inverse(pair.lower()), inverse(pair.upper()));
}

Vec2 TransformRecord::forward_point(Vec2 x) const { return rotate(x, rotation); }
Vec2 TransformRecord::inverse_point(Vec2 y) const { return rotate(y, -rotation); }

TransformRecord TransformRecord::then(const TransformRecord& next) const {
  // next(this(p)) = s2 s1 (p.rot(-t1 - t2) - h1.rot(-t2) - h2 / s1).
  const QuadForm h = harmonic().rotated(-next.rotation) + next.harmonic() * (1.0 / scale);
  TransformRecord out;
  out.rotation = rotation + next.rotation;
  out.harmonic_a = 0.5 * (h.a - h.c);
  out.harmonic_b = h.b;
  out.scale = scale * next.scale;
  return out;
}

ObstaclePair validate(const ObstaclePair& pair) {
  for (double v : {pair.a1, pair.b1, pair.c1, pair.a2, pair.b2, pair.c2}) {
    if (!std::isfinite(v))
      throw Error(ErrorKind::NonFinite, "obstacle coefficients must be finite");
  }
  if (!(pair.a1 + pair.c1 < 0.0)) {
    std::ostringstream msg;
    msg << "lambda1 = 2(a1 + c1) = " << pair.lambda1() << " must be < 0";
    throw Error(ErrorKind::SignViolation, msg.str());
  }
  if (!(pair.a2 + pair.c2 > 0.0)) {
    std::ostringstream msg;
    msg << "lambda2 = 2(a2 + c2) = " << pair.lambda2() << " must be > 0";
    throw Error(ErrorKind::SignViolation, msg.str());
  }
  const QuadForm gap = pair.upper() - pair.lower();
  if (!(gap.trace() > 0.0)) {
    throw Error(ErrorKind::NotSinglePointContact,
                "trace of D^2(p2 - p1)/2 = (a2 - a1) + (c2 - c1) must be > 0");
  }
  if (!(gap.a * gap.c > gap.b * gap.b)) {
    throw Error(ErrorKind::NotSinglePointContact,
                "det of D^2(p2 - p1)/2 = (a2 - a1)(c2 - c1) - (b2 - b1)^2 must be > 0");
  }
  return pair;
}

NormalizedPair validate(const NormalizedPair& pair) {
  validate(pair.as_pair());
  return pair;
}

Normalization normalize(const ObstaclePair& input) {
  const ObstaclePair pair = validate(input);
  TransformRecord record;
  if (pair.b1 != pair.b2) {
    record.rotation =
        0.5 * std::atan2(2.0 * (pair.b1 - pair.b2), pair.a2 - pair.a1 - pair.c2 + pair.c1);
  }
  const QuadForm p1 = pair.lower().rotated(-record.rotation);
  const QuadForm p2 = pair.upper().rotated(-record.rotation);
  record.harmonic_b = 0.5 * (p1.b + p2.b);
  Normalization out;
  out.record = record;
  out.pair = {p1.a, p1.c, p2.a, p2.c};
  return out;
}

Normalization reduce_case1(const NormalizedPair& pair, const TransformRecord& prior) {
  validate(pair);
  const SignaturePolynomial sig = signature(pair);
  if (std::abs(sig.A) > kCaseTolerance || std::abs(sig.C) > kCaseTolerance) {
    std::ostringstream msg;
    msg << "a1 + c2 = " << sig.A << " and a2 + c1 = " << sig.C << " must both vanish";
    throw Error(ErrorKind::NotCase1, msg.str());
  }
  // p1 = -a x1^2 - c x2^2, p2 = c x1^2 + a x2^2.
  const double a = -pair.a1;
  const double c = -pair.c1;
  TransformRecord step;
  step.harmonic_a = 0.5 * (c - a);
  step.scale = 2.0 / (a + c);
  Normalization out;
  out.record = prior.then(step);
  out.pair = kCanonicalPair;
  return out;
}

SignaturePolynomial signature(const NormalizedPair& pair) {
  return {pair.a1 + pair.c2, pair.a2 + pair.c1};
}

}  // namespace dcone
