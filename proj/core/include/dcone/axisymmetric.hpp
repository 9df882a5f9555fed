// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dcone/analytic_solutions.hpp"

namespace dcone {

/// g(t) = 3t + ((3t^2 - 1)/2) ln((1 - t)/(1 + t)); DomainError for |t| >= 1.
double g_eval(double t);
double g_prime(double t);
double g_second(double t);

/// Unique root of g' in (0, 1), by bisection.
double find_t0();

/// Whether g is increasing on (-t0, t0), checked on `samples` points.
bool g_increasing_on(double t0, int samples = 2001);

/// Axisymmetric double cone in R^3 for the obstacles
/// p_i = r^2 (a_i + b cos^2 theta), theta the polar angle:
/// p1 for cos theta >= t0, p2 for cos theta <= -t0 and
/// q = r^2 (A (3 cos^2 theta - 1) + B g(cos theta)) in between.
struct DoubleCone3D {
  double t0 = 0.0;
  double g_t0 = 0.0;
  double A = 0.0;
  double B = 0.0;
  double a1 = -1.0;
  double a2 = 1.0;
  double b = 0.0;

  [[nodiscard]] double lambda1() const { return 6.0 * a1 + 2.0 * b; }
  [[nodiscard]] double lambda2() const { return 6.0 * a2 + 2.0 * b; }
  /// (q - p1)/r^2 and (p2 - q)/r^2 as functions of t = cos theta.
  [[nodiscard]] double f1(double t) const;
  [[nodiscard]] double f2(double t) const;
  [[nodiscard]] double f1_prime(double t) const;
  [[nodiscard]] double f2_prime(double t) const;
};

DoubleCone3D build_3d(double a1, double a2);

/// u at spherical coordinates (r, azimuth phi, polar angle theta).
double eval_3d(const DoubleCone3D& sol, double r, double phi, double theta);

/// Angular profile of the harmonic piece, zeta(theta) = A(3cos^2 - 1) + B g(cos),
/// with its first two theta-derivatives in closed form.
struct Profile {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
Profile zeta_profile(const DoubleCone3D& sol, double theta);
/// g(cos theta) and theta-derivatives, evaluated without cancellation.
Profile zeta2_profile(double theta);
/// 1 + 3 cos 2theta and derivatives.
Profile zeta1_profile(double theta);

/// zeta'' + cot(theta) zeta' + 6 zeta.
double legendre_residual(const Profile& p, double theta);

/// Residual of the angular ODE, sign conditions on f1, f2 and C1 matching at
/// cos theta = +-t0.
VerificationReport verify_3d(const DoubleCone3D& sol);

}  // namespace dcone
