// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcone/cli/run.hpp"
#include "dcone/error.hpp"
#include "dcone/io.hpp"

int main(int argc, char** argv) {
  using dcone::cli::ExitCode;
  CLI::App app{"Blow-up analysis for double obstacle problems with quadratic obstacles"};
  app.require_subcommand(1);

  dcone::cli::RunConfig flags;
  std::string config_path;
  std::string pair, field, solutions, boundary, pairs_dir;
  double omega = 0.0, tol = 0.0;
  std::string radii;
  std::string criteria;

  auto* o_config = app.add_option("--config", config_path, "JSON config; explicit flags win");
  auto* o_pair = app.add_option("--pair", pair, "pair JSON {a1,b1,c1,a2,b2,c2}");
  auto* o_field = app.add_option("--field", field, "field CSV (weiss, blowup)");
  auto* o_solutions = app.add_option("--solutions", solutions, "solutions JSON (verify)");
  auto* o_boundary = app.add_option("--boundary", boundary, "boundary id or field CSV");
  auto* o_pairs = app.add_option("--pairs", pairs_dir, "directory of pair JSON files (corpus)");
  auto* o_out = app.add_option("--out", flags.out, "output directory");
  auto* o_n = app.add_option("--n", flags.n, "grid nodes per side (odd)");
  auto* o_L = app.add_option("--L", flags.L, "half width of the square domain");
  auto* o_omega = app.add_option("--omega", omega, "SOR relaxation factor");
  auto* o_tol = app.add_option("--tol", tol, "tolerance (solver, verifier or Weiss slack)");
  auto* o_iters = app.add_option("--max-iters", flags.max_iters, "solver iteration cap");
  auto* o_radii = app.add_option("--radii", radii, "comma-separated radii");
  auto* o_seed = app.add_option("--seed", flags.seed, "seed for randomized samplers");
  auto* o_dump = app.add_flag("--dump-csv", flags.dump_csv, "construct: dump sampled fields");
  auto* o_a1 = app.add_option("--a1", flags.a1, "verify3d: lower obstacle constant");
  auto* o_a2 = app.add_option("--a2", flags.a2, "verify3d: upper obstacle constant");
  auto* o_crit = app.add_option("--criteria", criteria, "corpus: comma-separated criteria");
  (void)o_config;

  for (const char* name :
       {"classify", "construct", "verify", "solve", "weiss", "blowup", "verify3d", "corpus"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }

  dcone::cli::RunConfig config;
  try {
    if (!config_path.empty()) {
      config = dcone::cli::merge_config(config,
                                        nlohmann::json::parse(dcone::io::read_text(config_path)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InputError);
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  auto set = [](CLI::Option* o) { return o->count() > 0; };
  auto doubles = [](const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
  };
  try {
    if (set(o_pair)) config.pair = pair;
    if (set(o_field)) config.field = field;
    if (set(o_solutions)) config.solutions = solutions;
    if (set(o_boundary)) config.boundary = boundary;
    if (set(o_pairs)) config.pairs_dir = pairs_dir;
    if (set(o_out)) config.out = flags.out;
    if (set(o_n)) config.n = flags.n;
    if (set(o_L)) config.L = flags.L;
    if (set(o_omega)) config.omega = omega;
    if (set(o_tol)) config.tol = tol;
    if (set(o_iters)) config.max_iters = flags.max_iters;
    if (set(o_radii)) config.radii = doubles(radii);
    if (set(o_seed)) config.seed = flags.seed;
    if (set(o_dump)) config.dump_csv = flags.dump_csv;
    if (set(o_a1)) config.a1 = flags.a1;
    if (set(o_a2)) config.a2 = flags.a2;
    if (set(o_crit)) {
      config.criteria.clear();
      for (double v : doubles(criteria)) config.criteria.push_back(static_cast<int>(v));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: malformed list: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InputError);
  }
  if (const char* env = std::getenv("DCONE_THREADS")) {
    config.threads = std::max(1, std::atoi(env));
  }
  return static_cast<int>(dcone::cli::run(config, std::cerr));
}
