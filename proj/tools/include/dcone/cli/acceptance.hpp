// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace dcone::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured quantities, "key=value" separated by spaces.
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct AcceptanceOptions {
  /// Worker threads for red-black sweeps.
  int threads = 1;
  /// Criteria to run (1..10); empty runs all.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 constructed-solutions (0.12 s / 1 s) c1=..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace dcone::cli
