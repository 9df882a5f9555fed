// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/axisymmetric.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dcone/error.hpp"

namespace dcone {

namespace {

void check_domain(double t) {
  if (!(std::abs(t) < 1.0)) {
    std::ostringstream msg;
    msg << "g is defined on (-1, 1), got t = " << t;
    throw Error(ErrorKind::DomainError, msg.str());
  }
}

double log_ratio(double t) { return std::log1p(-t) - std::log1p(t); }

}  // namespace

double g_eval(double t) {
  check_domain(t);
  return 3.0 * t + 0.5 * (3.0 * t * t - 1.0) * log_ratio(t);
}

double g_prime(double t) {
  check_domain(t);
  return 3.0 + 3.0 * t * log_ratio(t) - (3.0 * t * t - 1.0) / (1.0 - t * t);
}

double g_second(double t) {
  check_domain(t);
  const double s = 1.0 - t * t;
  return 3.0 * log_ratio(t) - 6.0 * t / s - 4.0 * t / (s * s);
}

double find_t0() {
  // g'(0) = 4 > 0 and g' -> -inf as t -> 1.
  double lo = 0.0;
  double hi = 0.999;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g_prime(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(g_prime(lo)) <= std::abs(g_prime(hi)) ? lo : hi;
}

bool g_increasing_on(double t0, int samples) {
  double prev = g_eval(-t0);
  for (int i = 1; i < samples; ++i) {
    const double t = -t0 + 2.0 * t0 * i / (samples - 1);
    const double g = g_eval(t);
    if (!(g > prev)) return false;
    prev = g;
  }
  return true;
}

double DoubleCone3D::f1(double t) const { return 0.5 * (a2 - a1) + B * g_eval(t); }
double DoubleCone3D::f2(double t) const { return 0.5 * (a2 - a1) - B * g_eval(t); }
double DoubleCone3D::f1_prime(double t) const { return B * g_prime(t); }
double DoubleCone3D::f2_prime(double t) const { return -B * g_prime(t); }

DoubleCone3D build_3d(double a1, double a2) {
  if (!(a1 < a2)) throw Error(ErrorKind::InvalidArgument, "build_3d requires a1 < a2");
  DoubleCone3D sol;
  sol.t0 = find_t0();
  sol.g_t0 = g_eval(sol.t0);
  sol.a1 = a1;
  sol.a2 = a2;
  sol.A = -0.5 * (a1 + a2);
  sol.b = 3.0 * sol.A;
  sol.B = -(a2 - a1) / (2.0 * sol.g_t0);
  return sol;
}

double eval_3d(const DoubleCone3D& sol, double r, double /*phi*/, double theta) {
  const double t = std::cos(theta);
  const double r2 = r * r;
  if (t >= sol.t0) return r2 * (sol.a1 + sol.b * t * t);
  if (t <= -sol.t0) return r2 * (sol.a2 + sol.b * t * t);
  return r2 * zeta_profile(sol, theta).value;
}

Profile zeta1_profile(double theta) {
  return {1.0 + 3.0 * std::cos(2.0 * theta), -6.0 * std::sin(2.0 * theta),
          -12.0 * std::cos(2.0 * theta)};
}

Profile zeta2_profile(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double c2 = std::cos(2.0 * theta);
  const double s2 = std::sin(2.0 * theta);
  // ln((1 - cos)/(1 + cos)) = 2 ln tan(theta/2); derivative 2/sin theta.
  const double ell = 2.0 * std::log(std::tan(0.5 * theta));
  const double P = 0.25 * (1.0 + 3.0 * c2);
  Profile p;
  p.value = 3.0 * c + P * ell;
  p.d1 = -3.0 * s - 1.5 * s2 * ell + 2.0 * P / s;
  p.d2 = -3.0 * c - 3.0 * c2 * ell - 12.0 * c - 2.0 * P * c / (s * s);
  return p;
}

Profile zeta_profile(const DoubleCone3D& sol, double theta) {
  // 3cos^2 - 1 = (1 + 3cos 2theta)/2.
  const Profile z1 = zeta1_profile(theta);
  const Profile z2 = zeta2_profile(theta);
  const double a = 0.5 * sol.A;
  return {a * z1.value + sol.B * z2.value, a * z1.d1 + sol.B * z2.d1, a * z1.d2 + sol.B * z2.d2};
}

double legendre_residual(const Profile& p, double theta) {
  return p.d2 + std::cos(theta) / std::sin(theta) * p.d1 + 6.0 * p.value;
}

VerificationReport verify_3d(const DoubleCone3D& sol) {
  VerificationReport report;
  report.add("g_prime_t0", std::abs(g_prime(sol.t0)), 1e-12);
  report.add("t0_range", (sol.t0 > 0.0 && sol.t0 < 1.0) ? 0.0 : 1.0, 0.0);
  report.add("g_t0_positive", sol.g_t0 > 0.0 ? 0.0 : 1.0, 0.0);
  report.add("g_increasing", g_increasing_on(sol.t0) ? 0.0 : 1.0, 0.0);
  report.add("system",
             std::max(std::abs(2.0 * sol.A + sol.a1 + sol.a2), std::abs(6.0 * sol.A - 2.0 * sol.b)),
             1e-14);

  constexpr int kNodes = 1000;
  constexpr double kCut = 1e-3;
  double ode = 0.0;
  double ode_zeta1 = 0.0;
  double ode_zeta2 = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double theta = kCut + (kPi - 2.0 * kCut) * (i + 0.5) / kNodes;
    ode = std::max(ode, std::abs(legendre_residual(zeta_profile(sol, theta), theta)));
    ode_zeta1 = std::max(ode_zeta1, std::abs(legendre_residual(zeta1_profile(theta), theta)));
    ode_zeta2 = std::max(ode_zeta2, std::abs(legendre_residual(zeta2_profile(theta), theta)));
  }
  report.add("ode_residual", ode, 1e-9);
  // Machine precision relative to the O(10) terms of the residual.
  report.add("zeta1_residual", ode_zeta1, 64.0 * std::numeric_limits<double>::epsilon());
  report.add("zeta2_residual", ode_zeta2, 1e-9);

  double closed_form = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double theta = kPi * i / 100.0;
    closed_form =
        std::max(closed_form, std::abs(zeta2_profile(theta).value - g_eval(std::cos(theta))));
  }
  report.add("zeta2_closed_form", closed_form, 1e-12);

  double sign = 0.0;
  constexpr int kSamples = 1001;
  for (int i = 0; i < kSamples; ++i) {
    const double t = -sol.t0 + 2.0 * sol.t0 * i / (kSamples - 1);
    sign = std::max({sign, -sol.f1(t), -sol.f2(t)});
  }
  report.add("f_nonnegative", sign, 1e-12);

  const double matching = std::max({std::abs(sol.f1(sol.t0)), std::abs(sol.f1_prime(sol.t0)),
                                    std::abs(sol.f2(-sol.t0)), std::abs(sol.f2_prime(-sol.t0))});
  report.add("boundary_matching", matching, 1e-10);

  // Value and theta-derivative of u from both sides of each free boundary.
  const double scale = std::abs(sol.a2 - sol.a1);
  double jump = 0.0;
  for (double t : {sol.t0, -sol.t0}) {
    const double theta = std::acos(t);
    const double sn = std::sin(theta);
    const double obstacle_a = t > 0.0 ? sol.a1 : sol.a2;
    const double obstacle = obstacle_a + sol.b * t * t;
    const double obstacle_d = -2.0 * sol.b * t * sn;
    const Profile z = zeta_profile(sol, theta);
    jump = std::max({jump, std::abs(z.value - obstacle), std::abs(z.d1 - obstacle_d)});
  }
  report.add("c1_matching", jump, 1e-10 * std::max(1.0, scale));
  return report;
}

}  // namespace dcone
