// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "dcone/blowup_solution.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone {

/// Tolerance for admitting delta <= 0 at equality.
inline constexpr double kDeltaTolerance = 1e-12;

enum class CaseTag { Case1, Case2, Case3 };
enum class Case3Sign { None, NonNegative, NonPositive };

std::string_view to_string(CaseTag tag) noexcept;
std::string_view to_string(Case3Sign sign) noexcept;

struct CaseLabel {
  CaseTag tag = CaseTag::Case1;
  Case3Sign sign = Case3Sign::None;
  bool a_zero = false;  // a1 + c2 == 0 within tolerance
  bool c_zero = false;  // a2 + c1 == 0 within tolerance
  SignaturePolynomial signature;

  [[nodiscard]] bool boundary() const { return tag == CaseTag::Case3 && (a_zero || c_zero); }
};

struct AlphaWindow {
  double lo = 0.0;  // max(a1, -c2)
  double hi = 0.0;  // min(a2, -c1)

  [[nodiscard]] bool contains(double alpha, double tol = kCaseTolerance) const {
    return alpha >= lo - tol && alpha <= hi + tol;
  }
};

struct AlphaSet {
  enum class Kind { Interval, Single, Empty };
  Kind kind = Kind::Empty;
  double lo = 0.0;
  double hi = 0.0;
  bool halfspace_only = false;

  [[nodiscard]] bool empty() const { return kind == Kind::Empty; }
  [[nodiscard]] bool contains(double alpha, double tol = kCaseTolerance) const {
    return kind != Kind::Empty && alpha >= lo - tol && alpha <= hi + tol;
  }
};

struct DirectionBound {
  enum class Kind { AllDirections, ConeBound, Count };
  Kind kind = Kind::AllDirections;
  Obstacle which = Obstacle::Lower;
  /// ConeBound: limiting |slope| of the free-boundary line.
  double bound = 0.0;
  /// ConeBound: true when admissible slopes satisfy |slope| <= bound,
  /// false when |slope| >= bound.
  bool at_most = true;
  /// Count: number of halfspace solutions.
  int count = 0;
};

struct HalfspaceAdmissibility {
  Obstacle which = Obstacle::Lower;
  double alpha = 0.0;
  AlphaWindow window;
  bool in_window = false;
  double delta = 0.0;
  bool admissible = false;
  /// Non-negative root of the beta relation for `which` (0 outside the window).
  double beta = 0.0;
  /// Slope of the free-boundary line for the + branch.
  double slope = 0.0;
};

struct OpeningAngle {
  double acute = 0.0;
  double supplement = 0.0;
  double cos_squared = 0.0;
};

CaseLabel classify(const NormalizedPair& pair);
AlphaWindow alpha_window(const NormalizedPair& pair);
AlphaSet double_cone_alphas(const NormalizedPair& pair);

/// beta from the relation of `reference` (lower: -(alpha - a1)(alpha + c1)),
/// both contact lines from the null directions of q - p1 and p2 - q.
SectorSolution sector_from_alpha(const NormalizedPair& pair, double alpha, Branch branch,
                                 Obstacle reference = Obstacle::Lower);

OpeningAngle opening_angle(const NormalizedPair& pair);

/// Double-cone solutions assembled from harmonic pieces. Going
/// counterclockwise, alpha1 gives the piece that follows the upper
/// coincidence cone and alpha2 the piece that follows the lower one. Case 2
/// ignores both arguments.
std::vector<BlowupSolution> enumerate_double_cones(const NormalizedPair& pair, double alpha1,
                                                   double alpha2);
std::vector<BlowupSolution> enumerate_double_cones(const NormalizedPair& pair);

double halfspace_delta(const NormalizedPair& pair, Obstacle which, double alpha);
HalfspaceAdmissibility halfspace_admissible(const NormalizedPair& pair, Obstacle which,
                                            double alpha);
DirectionBound halfspace_direction_bounds(const NormalizedPair& pair, Obstacle which);

}  // namespace dcone
