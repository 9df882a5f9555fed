// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dcone/analytic_solutions.hpp"
#include "dcone/fd_solver.hpp"

namespace dcone {

/// Midpoint polar quadrature on the unit disk; nodes lie on n_theta rays.
struct PolarGrid {
  int n_theta = 128;
  int n_r = 64;

  [[nodiscard]] double theta(int it) const { return kTwoPi * (it + 0.5) / n_theta; }
  [[nodiscard]] double rho(int ir) const { return (ir + 0.5) / n_r; }
  [[nodiscard]] double weight(int ir) const { return rho(ir) * (1.0 / n_r) * (kTwoPi / n_theta); }
  [[nodiscard]] Vec2 node(int it, int ir) const { return unit(theta(it)) * rho(ir); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_r; }
  [[nodiscard]] std::size_t index(int it, int ir) const {
    return static_cast<std::size_t>(it) * n_r + ir;
  }
};

/// Values of a function on the nodes of a PolarGrid.
struct DiskSamples {
  PolarGrid grid;
  std::vector<double> values;
};

/// u_r(x) = u(r x)/r^2 at the quadrature nodes, by cubic convolution.
/// Throws RadiusTooLarge for r > L/2.
DiskSamples rescale(const ScalarField& field, double r, const PolarGrid& grid = {});
DiskSamples sample_disk(const std::function<double(Vec2)>& f, const PolarGrid& grid = {});
DiskSamples sample_disk(const BlowupSolution& solution, const PolarGrid& grid = {});

double l2_norm(const DiskSamples& samples);
double l2_distance(const DiskSamples& samples, const BlowupSolution& solution);
double l2_distance(const DiskSamples& a, const DiskSamples& b);

struct WeissQuadrature {
  int n_boundary = 512;
  /// 0 selects a resolution of about two nodes per grid cell.
  int n_r = 0;
  int n_theta = 0;
};

/// W(u, r) = r^-4 int_{B_r} (|grad u|^2 + 2 u Lap u) - 2 r^-5 int_{dB_r} u^2,
/// where Lap u is lambda_i on the interior of each coincidence mask and the
/// clamped five-point Laplacian on nodes next to a mask edge. u is evaluated
/// by cubic convolution, grad u by bilinear interpolation of central differences.
double weiss_energy(const ScalarField& field, double r, const WeissQuadrature& quad = {});

struct WeissTrace {
  std::vector<double> r;
  std::vector<double> w;
};

struct MonotonicityReport {
  /// min over i of W(r_i) - W(r_{i+1}) with r_i > r_{i+1}.
  double min_difference = 0.0;
  double slack = 0.0;
  bool monotone = true;
};

struct WeissTraceResult {
  WeissTrace trace;
  MonotonicityReport report;
};

/// Requires strictly decreasing radii in (20 h, L/2].
WeissTraceResult weiss_trace(const ScalarField& field, const std::vector<double>& r_list,
                             double slack = 5e-3, const WeissQuadrature& quad = {});

enum class EnergyClass { PolynomialHarmonic, CoincidencePolynomial, HalfspaceOrDoubleCone };
std::string_view to_string(EnergyClass cls) noexcept;

struct EnergyLevels {
  std::vector<double> harmonic;
  std::vector<double> coincidence;
  std::vector<double> cone;
};

/// Weiss levels of each family; quoted values for the canonical pair,
/// computed from sampled family members otherwise.
EnergyLevels energy_levels(const NormalizedPair& pair);

struct EnergyClassification {
  EnergyClass cls = EnergyClass::PolynomialHarmonic;
  double level = 0.0;
  double nearest_distance = 0.0;
  double second_distance = 0.0;
};

/// Nearest level; Ambiguous when two families are both within 0.1.
EnergyClassification classify_blowup_energy(double w_limit, const NormalizedPair& pair);

struct FitDiagnostics {
  int evaluations = 0;
  double step_tolerance = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  int arrangement = -1;
  int candidate = -1;
  double normal_angle = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct FitResult {
  BlowupSolution solution;
  double distance = 0.0;
  std::vector<double> orthogonality;
  FitDiagnostics diagnostics;
};

/// int sin(phi1 - 2 theta)(u - mu) r^3 dr dtheta over the first harmonic
/// sector and int sin(2 theta + phi2)(u - mu) r^3 dr dtheta over the second,
/// in the frame of the arrangement. These are half the partial derivatives of
/// the squared distance.
std::array<double, 2> orthogonality_residuals(const DiskSamples& samples, double phi1, double phi2,
                                              int arrangement);

/// Closest double cone in L2(B1). Canonical Case 1: search over (phi1, phi2,
/// arrangement); Case 2: best of the enumerated candidates.
FitResult fit_minimal_double_cone(const DiskSamples& samples, const NormalizedPair& pair);

/// Closest admissible halfspace solution for `which`.
FitResult fit_halfspace(const DiskSamples& samples, const NormalizedPair& pair, Obstacle which);

struct RateEstimate {
  double gamma = 0.0;
  double constant = 0.0;
  double residual = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<double> radii;
  std::vector<double> distances;
};

/// Least-squares fit of log ||u_r - u0|| against log r over at least five radii.
RateEstimate convergence_rate(const ScalarField& field, const BlowupSolution& u0,
                              const std::vector<double>& r_list);
RateEstimate fit_rate(const std::vector<double>& radii, const std::vector<double>& distances);

/// Six geometrically spaced radii spanning [8h, L/4].
std::vector<double> default_rate_radii(const GridSpec& grid);

}  // namespace dcone
