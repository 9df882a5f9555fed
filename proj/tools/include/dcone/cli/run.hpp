// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dcone::cli {

enum class ExitCode : int { Ok = 0, CheckFailed = 1, InputError = 2 };

struct RunConfig {
  /// classify, construct, verify, solve, weiss, blowup, verify3d or corpus.
  std::string subcommand;
  std::optional<std::string> pair;
  /// Field CSV for weiss and blowup.
  std::optional<std::string> field;
  /// Solution JSON for verify, as written by construct.
  std::optional<std::string> solutions;
  /// Boundary id or CSV for solve; extra solution for construct and verify.
  std::optional<std::string> boundary;
  /// Directory of pair JSON files for corpus.
  std::optional<std::string> pairs_dir;
  std::string out = ".";
  int n = 257;
  double L = 1.0;
  std::optional<double> omega;
  std::optional<double> tol;
  int max_iters = 0;
  std::vector<double> radii;
  std::uint64_t seed = 1;
  int threads = 1;
  bool dump_csv = false;
  double a1 = -1.0;
  double a2 = 1.0;
  std::vector<int> criteria;
};

/// Fields present in `j` override `base`. Unknown keys raise Parse errors.
RunConfig merge_config(RunConfig base, const nlohmann::json& j);

/// Throws InvalidArgument on non-positive tolerances or grid sizes.
void validate(const RunConfig& config);

/// Runs one subcommand, writing artifacts under config.out and a short
/// summary to `log`.
ExitCode run(const RunConfig& config, std::ostream& log);

}  // namespace dcone::cli
