// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/geometry.hpp"

#include <algorithm>

namespace dcone {

Vec2 rotate(Vec2 v, double angle) {
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  return {cs * v.x - sn * v.y, sn * v.x + cs * v.y};
}

double wrap_angle(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double ccw_distance(double from, double to) { return wrap_angle(to - from); }

double line_angle(Vec2 u, Vec2 v) {
  const double c = std::abs(dot(u, v)) / (norm(u) * norm(v));
  return std::acos(std::clamp(c, 0.0, 1.0));
}

QuadForm QuadForm::rotated(double angle) const {
  // M' = R^T M R with R the counterclockwise rotation by angle.
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  const double ra = a * cs * cs + 2.0 * b * cs * sn + c * sn * sn;
  const double rc = a * sn * sn - 2.0 * b * cs * sn + c * cs * cs;
  const double rb = (c - a) * cs * sn + b * (cs * cs - sn * sn);
  return {ra, rb, rc};
}

double QuadForm::arc_integral(double lo, double hi) const {
  auto antiderivative = [this](double t) {
    return a * (0.5 * t + 0.25 * std::sin(2.0 * t)) - 0.5 * b * std::cos(2.0 * t) +
           c * (0.5 * t - 0.25 * std::sin(2.0 * t));
  };
  return antiderivative(hi) - antiderivative(lo);
}

double QuadForm::distance(QuadForm o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c)});
}

}  // namespace dcone
