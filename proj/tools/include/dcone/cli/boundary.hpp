// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "dcone/fd_solver.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone::cli {

/// Boundary data for `solve`, clamped into [p1, p2].
///
/// Builtin ids (solutions live in the normalized frame of `pair`):
///   mu:PHI1:PHI2[:ARR]   four-piece double cone, canonical pair only
///   john                 x1^2 sgn x1 + x2^2 sgn x2, canonical pair only
///   dc:I                 I-th enumerated double cone
///   hs:lower|upper:ANGLE halfspace solution with the given normal angle
///   p1, p2               the obstacles themselves
///   harmonic:A:B         A (x1^2 - x2^2) + 2 B x1 x2
/// Any id may end in "+cubic:EPS", adding EPS (x1^3 - 3 x1 x2^2).
/// Anything else is read as a field CSV and interpolated.
BoundaryData make_boundary(const std::string& id, const NormalizedPair& pair);

/// The builtin solution named by `id` without perturbation; throws
/// InvalidArgument for CSV paths and perturbed ids.
BlowupSolution builtin_solution(const std::string& id, const NormalizedPair& pair);

}  // namespace dcone::cli
