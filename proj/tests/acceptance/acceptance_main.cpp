// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Optional arguments select criteria by number.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "dcone/cli/acceptance.hpp"

int main(int argc, char** argv) {
  dcone::cli::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  if (const char* env = std::getenv("DCONE_THREADS")) options.threads = std::max(1, std::atoi(env));
  int failed = 0;
  for (int id = 1; id <= dcone::cli::kCriterionCount; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    const auto r = dcone::cli::run_criterion(id, options);
    std::cout << dcone::cli::format_line(r) << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
