// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dcone/blowup_solution.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone {

/// Uniform grid on [-L, L]^2 with n nodes per axis; n is odd so the origin
/// is node (n/2, n/2).
struct GridSpec {
  double L = 1.0;
  int n = 129;

  [[nodiscard]] double h() const { return 2.0 * L / (n - 1); }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * n + i;
  }
  [[nodiscard]] Vec2 node(int i, int j) const { return {-L + i * h(), -L + j * h()}; }
  [[nodiscard]] int center() const { return n / 2; }
};

/// Throws InvalidArgument unless n >= 33 is odd and L > 0.
GridSpec validate(const GridSpec& grid);

struct SolverMetadata {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double tolerance = 0.0;
  double omega = 0.0;
  std::vector<double> residual_history;
};

/// Node samples of a solution together with both obstacles and the
/// coincidence masks.
struct ScalarField {
  GridSpec grid;
  std::vector<double> u;
  std::vector<double> psi1;
  std::vector<double> psi2;
  std::vector<std::uint8_t> lower;
  std::vector<std::uint8_t> upper;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  SolverMetadata meta;

  [[nodiscard]] double at(int i, int j) const { return u[grid.index(i, j)]; }
  /// Bilinear interpolation of u.
  [[nodiscard]] double interpolate(Vec2 x) const;
  /// Cubic convolution of u; exact on quadratics away from the domain edge.
  [[nodiscard]] double interpolate_cubic(Vec2 x) const;
  /// Five-point Laplacian of u at an interior node.
  [[nodiscard]] double laplacian(int i, int j) const;
};

/// Bilinear interpolation of node values on `grid`. Points outside the
/// domain are clamped onto it.
double bilinear(const GridSpec& grid, const std::vector<double>& values, Vec2 x);
/// Tensor-product Keys cubic convolution (a = -1/2) of node values; indices
/// past the domain edge are clamped.
double cubic_convolution(const GridSpec& grid, const std::vector<double>& values, Vec2 x);

enum class SweepOrder { Lexicographic, RedBlack };

struct SolveConfig {
  double omega = 1.8;
  /// 0 selects 200 n.
  int max_iterations = 0;
  /// 0 selects 1e-10 lambda2.
  double tolerance = 0.0;
  SweepOrder order = SweepOrder::Lexicographic;
  /// Worker threads for the red-black sweep; results do not depend on it.
  int threads = 1;
  /// Interior initial guess, clamped between the obstacles; defaults to 0.
  std::function<double(Vec2)> initial;
  bool record_history = false;
};

/// Relaxation factor minimizing the spectral radius of SOR for the
/// five-point Laplacian on an n-node square.
double optimal_omega(int n);

using BoundaryData = std::function<double(Vec2)>;

/// Projected SOR for p1 <= u <= p2, Laplacian(u) = 0 off the coincidence set.
/// Throws BoundaryViolation when the data leave [p1, p2] on the boundary.
/// A non-converged solve returns the last iterate with meta.converged false.
ScalarField solve(const ObstaclePair& pair, const GridSpec& grid, const BoundaryData& boundary,
                  const SolveConfig& config = {});

/// Projected residual max |u - clamp(GS(u), psi1, psi2)| over interior nodes.
double projected_residual(const ScalarField& field);

struct ResidualReport {
  /// Max |Laplacian(u) - lambda1 lower - lambda2 upper| over nodes whose
  /// Chebyshev 2-neighbourhood has a uniform mask state.
  double max_deviation = 0.0;
  /// Same over every interior node.
  double max_deviation_all = 0.0;
  int nodes_checked = 0;
  int lower_nodes = 0;
  int upper_nodes = 0;
};

ResidualReport residual_report(const ScalarField& field);

struct CoincidenceMasks {
  std::vector<std::uint8_t> lower;
  std::vector<std::uint8_t> upper;
};

/// lower[i] = (u - psi1 <= tol h^2), upper analogous. Missing tolerances
/// default to 0.1 |lambda| of the respective obstacle.
CoincidenceMasks coincidence_masks(const ScalarField& field,
                                   std::optional<double> lower_tol = std::nullopt,
                                   std::optional<double> upper_tol = std::nullopt);
void apply_masks(ScalarField& field, const CoincidenceMasks& masks);

/// Samples `values` and both obstacles on the grid, with default masks.
ScalarField sample_field(const ObstaclePair& pair, const GridSpec& grid,
                         const std::function<double(Vec2)>& values);
ScalarField sample_field(const ObstaclePair& pair, const GridSpec& grid,
                         const BlowupSolution& solution);

}  // namespace dcone
