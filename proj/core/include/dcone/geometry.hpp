// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace dcone {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Vec2 normalized(Vec2 v) { return v / norm(v); }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
/// Rotates v counterclockwise by angle.
Vec2 rotate(Vec2 v, double angle);

/// Maps an angle into [0, 2*pi).
double wrap_angle(double angle);
/// Counterclockwise distance from `from` to `to`, in [0, 2*pi).
double ccw_distance(double from, double to);
/// Smallest angle between two lines (undirected), in [0, pi/2].
double line_angle(Vec2 u, Vec2 v);

/// The quadratic form a*x1^2 + 2*b*x1*x2 + c*x2^2.
struct QuadForm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  [[nodiscard]] constexpr double operator()(Vec2 p) const {
    return a * p.x * p.x + 2.0 * b * p.x * p.y + c * p.y * p.y;
  }
  [[nodiscard]] constexpr Vec2 gradient(Vec2 p) const {
    return {2.0 * (a * p.x + b * p.y), 2.0 * (b * p.x + c * p.y)};
  }
  [[nodiscard]] constexpr double laplacian() const { return 2.0 * (a + c); }
  [[nodiscard]] constexpr double trace() const { return a + c; }
  [[nodiscard]] constexpr double det() const { return a * c - b * b; }

  constexpr QuadForm operator+(QuadForm o) const { return {a + o.a, b + o.b, c + o.c}; }
  constexpr QuadForm operator-(QuadForm o) const { return {a - o.a, b - o.b, c - o.c}; }
  constexpr QuadForm operator*(double s) const { return {a * s, b * s, c * s}; }

  /// Form in the coordinates y where x = R(angle) y.
  [[nodiscard]] QuadForm rotated(double angle) const;
  /// Integral of the form over the unit-circle arc [lo, hi].
  [[nodiscard]] double arc_integral(double lo, double hi) const;
  /// Largest coefficient difference.
  [[nodiscard]] double distance(QuadForm o) const;
};

}  // namespace dcone
