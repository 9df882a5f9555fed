// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcone/fd_solver.hpp"

namespace dcone {

/// One branch of a free boundary leaving the origin.
struct CurveBranch {
  Obstacle obstacle = Obstacle::Lower;
  /// Subgrid contour points ordered by strictly increasing |x|.
  std::vector<Vec2> points;
  /// Unit tangent at the origin, pointing outward.
  Vec2 tangent;
  /// RMS orthogonal distance of the fitted points to the tangent line.
  double fit_residual = 0.0;
  int fit_points = 0;
};

/// Branches of the boundaries of {u = p1} and {u = p2}. The "+" pair is the
/// upper branch followed counterclockwise by a noncoincidence sector and then
/// a lower branch; the "-" pair is a lower branch followed by a
/// noncoincidence sector and then an upper branch.
struct FreeBoundaryCurves {
  std::vector<CurveBranch> lower;
  std::vector<CurveBranch> upper;
  std::optional<std::size_t> lower_plus;
  std::optional<std::size_t> lower_minus;
  std::optional<std::size_t> upper_plus;
  std::optional<std::size_t> upper_minus;

  [[nodiscard]] const CurveBranch* gamma(Obstacle which, Branch branch) const;
};

/// Branches of one coincidence boundary: marching-squares contour of the gap
/// at level h^2, split into branches by direction. Throws NoCurve when no
/// contour reaches |x| >= 4h.
std::vector<CurveBranch> extract_branches(const ScalarField& field, Obstacle which);

/// Both boundaries with +/- labels; throws NoCurve when both are empty.
FreeBoundaryCurves extract_free_boundary(const ScalarField& field);

struct AngleMeasurement {
  std::string name;
  double measured = 0.0;   // radians
  double predicted = 0.0;  // radians; NaN when no prediction applies
  double deviation_deg = 0.0;
};

struct AngleReport {
  std::vector<AngleMeasurement> angles;
  /// Largest deviation among measurements with a prediction.
  double max_deviation_deg = 0.0;

  [[nodiscard]] const AngleMeasurement* find(std::string_view name) const;
};

/// Angles between origin tangents. Throws InsufficientCurves unless at least
/// one labeled +/- pair exists.
AngleReport measure_angles(const FreeBoundaryCurves& curves, const NormalizedPair& pair);

}  // namespace dcone
