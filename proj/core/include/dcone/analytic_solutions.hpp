// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcone/blowup_solution.hpp"
#include "dcone/classifier.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone {

struct Evaluation {
  double value = 0.0;
  Vec2 gradient;
};

Evaluation eval(const BlowupSolution& solution, Vec2 x);

/// Four-piece double cone on the canonical pair: r^2 for -phi2 <= 2 theta <=
/// phi1, r^2 cos(2 theta - phi1) and r^2 cos(2 theta + phi2) on the adjacent
/// quarter turns, -r^2 elsewhere. `arrangement` in 0..3 rotates the picture by
/// arrangement * pi/2.
BlowupSolution build_mu(double phi1, double phi2, int arrangement = 0);

/// x1^2 sgn(x1) + x2^2 sgn(x2).
BlowupSolution john_solution();

enum class HalfspaceSide { Above, Below };

/// Two-piece solution: harmonic q on one side of the free-boundary line,
/// the obstacle `which` on the other. The line is the contact line of q with
/// that obstacle; `Above` selects the side containing the normal with
/// positive x2 component (or -x1 for a vertical line).
BlowupSolution build_halfspace(const NormalizedPair& pair, Obstacle which, double alpha,
                               Branch branch, HalfspaceSide side = HalfspaceSide::Above);

/// Same family parametrized by the angle of the unit normal e pointing into
/// the harmonic side: u = p1 + s (x.e)_+^2 with s = -lambda1/2 (lower), or
/// u = p2 - s (x.e)_+^2 with s = lambda2/2 (upper).
BlowupSolution build_halfspace_normal(const NormalizedPair& pair, Obstacle which,
                                      double normal_angle);

/// Whether the halfspace with the given normal angle is admissible.
bool halfspace_normal_admissible(const NormalizedPair& pair, Obstacle which, double normal_angle);

/// Global quadratic solution: q equal to one obstacle, or harmonic with
/// p1 <= q <= p2. Throws Inadmissible otherwise.
BlowupSolution build_polynomial(const NormalizedPair& pair, QuadForm q);

struct SamplerConfig {
  int n_angles = 3600;
  int n_random = 256;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool pass() const;
  /// Value of the named check; NaN when absent.
  [[nodiscard]] double metric(std::string_view name) const;
  void add(std::string name, double value, double tolerance);
};

/// Checks ordering, exact harmonicity of q pieces, C1 matching on every piece
/// boundary and that coincidence pieces equal their obstacle.
VerificationReport verify_solution(const BlowupSolution& solution, const ObstaclePair& pair,
                                   const SamplerConfig& config = {});
VerificationReport verify_solution(const BlowupSolution& solution, const NormalizedPair& pair,
                                   const SamplerConfig& config = {});

/// W(u0, 1) = lambda1 int_{B1 cap {u=p1}} p1 + lambda2 int_{B1 cap {u=p2}} p2,
/// integrated exactly over the coincidence sectors.
double weiss_of_blowup(const BlowupSolution& solution, const ObstaclePair& pair);
double weiss_of_blowup(const BlowupSolution& solution, const NormalizedPair& pair);

}  // namespace dcone
