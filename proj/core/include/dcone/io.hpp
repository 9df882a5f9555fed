// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dcone/analysis.hpp"
#include "dcone/analytic_solutions.hpp"
#include "dcone/fd_solver.hpp"
#include "dcone/obstacle_model.hpp"

namespace dcone::io {

using nlohmann::json;

/// Shortest decimal that round-trips; at most 17 significant digits.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const json& j);

json to_json(const ObstaclePair& pair);
/// Accepts {"a1","b1","c1","a2","b2","c2"}; missing b entries default to 0.
ObstaclePair pair_from_json(const json& j);
ObstaclePair read_pair(const std::filesystem::path& path);

json to_json(const TransformRecord& record);
TransformRecord record_from_json(const json& j);

json to_json(const BlowupSolution& solution);
BlowupSolution solution_from_json(const json& j);

json to_json(const VerificationReport& report);
json to_json(const SolverMetadata& meta);

/// {case, sign, alphas, opening_angle, double_cone_count, halfspace}.
json classify_report(const ObstaclePair& pair);

/// Columns x1,x2,u,psi1,psi2,lower,upper; rows with i fastest.
void write_field_csv(const std::filesystem::path& path, const ScalarField& field);
/// Restores grid and masks. lambda comes from `pair` when given, otherwise
/// from the five-point Laplacian of the obstacles at the centre node.
ScalarField read_field_csv(const std::filesystem::path& path,
                           const std::optional<ObstaclePair>& pair = std::nullopt);

void write_polyline_csv(const std::filesystem::path& path, const std::vector<Vec2>& points);
/// Columns r,W,dW where dW is W(r_i) - W(r_{i+1}); blank on the last row.
void write_trace_csv(const std::filesystem::path& path, const WeissTrace& trace);

}  // namespace dcone::io
