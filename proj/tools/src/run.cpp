// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "dcone/analysis.hpp"
#include "dcone/analytic_solutions.hpp"
#include "dcone/axisymmetric.hpp"
#include "dcone/classifier.hpp"
#include "dcone/cli/acceptance.hpp"
#include "dcone/cli/boundary.hpp"
#include "dcone/error.hpp"
#include "dcone/free_boundary.hpp"
#include "dcone/io.hpp"

namespace dcone::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

ObstaclePair load_pair(const RunConfig& c) {
  if (!c.pair) throw Error(ErrorKind::InvalidArgument, "--pair is required");
  return validate(io::read_pair(*c.pair));
}

/// Pair already in normalized coordinates, as required for field input.
NormalizedPair load_normalized(const RunConfig& c) {
  const ObstaclePair p = load_pair(c);
  if (p.b1 != 0.0 || p.b2 != 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "field input needs a pair with b1 = b2 = 0; use the 'normalized' pair from "
                "classify");
  }
  return {p.a1, p.c1, p.a2, p.c2};
}

void write_json(const RunConfig& c, const std::string& name, const json& j, std::ostream& log) {
  const fs::path path = fs::path(c.out) / name;
  io::write_text(path, io::dump(j));
  log << "wrote " << path.string() << '\n';
}

std::vector<BlowupSolution> standard_solutions(const NormalizedPair& pair) {
  std::vector<BlowupSolution> out;
  const CaseLabel label = classify(pair);
  if (label.tag == CaseTag::Case1) {
    for (double alpha : {-0.5, 0.0, 0.5}) {
      const double a = pair.a1 + (pair.a2 - pair.a1) * (alpha + 1.0) / 2.0;
      for (auto& s : enumerate_double_cones(pair, a, a)) out.push_back(std::move(s));
    }
  } else if (label.tag == CaseTag::Case2) {
    out = enumerate_double_cones(pair);
  }
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    for (int k = 0; k < 8; ++k) {
      const double angle = kTwoPi * (k + 0.5) / 8.0;
      if (halfspace_normal_admissible(pair, which, angle)) {
        out.push_back(build_halfspace_normal(pair, which, angle));
      }
    }
  }
  out.push_back(make_polynomial(pair.lower(), PieceKind::Lower, "p1"));
  out.push_back(make_polynomial(pair.upper(), PieceKind::Upper, "p2"));
  if (pair.is_canonical()) out.push_back(john_solution());
  return out;
}

json solutions_json(const Normalization& norm, const std::vector<BlowupSolution>& list) {
  json arr = json::array();
  for (const auto& s : list) arr.push_back(io::to_json(s));
  return json{{"normalized", io::to_json(norm.pair.as_pair())},
              {"transform", io::to_json(norm.record)},
              {"solutions", arr}};
}

std::vector<double> default_weiss_radii(const GridSpec& g) {
  const double hi = 0.5 * g.L;
  const double lo = 25.0 * g.h();
  std::vector<double> out;
  if (!(lo < hi)) return out;
  for (int k = 0; k < 8; ++k) out.push_back(hi * std::pow(lo / hi, k / 7.0));
  return out;
}

ExitCode cmd_classify(const RunConfig& c, std::ostream& log) {
  const json report = io::classify_report(load_pair(c));
  write_json(c, "classify.json", report, log);
  log << "case " << report["case"].get<std::string>() << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_construct(const RunConfig& c, std::ostream& log) {
  const Normalization norm = normalize(load_pair(c));
  std::vector<BlowupSolution> list = standard_solutions(norm.pair);
  if (c.boundary) list.push_back(builtin_solution(*c.boundary, norm.pair));
  write_json(c, "solutions.json", solutions_json(norm, list), log);
  if (c.dump_csv) {
    const GridSpec grid = validate(GridSpec{c.L, c.n});
    for (std::size_t i = 0; i < list.size(); ++i) {
      const fs::path path = fs::path(c.out) / ("solution_" + std::to_string(i) + ".csv");
      io::write_field_csv(path, sample_field(norm.pair.as_pair(), grid, list[i]));
    }
  }
  log << list.size() << " solutions\n";
  return ExitCode::Ok;
}

ExitCode cmd_verify(const RunConfig& c, std::ostream& log) {
  NormalizedPair pair;
  std::vector<BlowupSolution> list;
  if (c.solutions) {
    json j;
    try {
      j = json::parse(io::read_text(*c.solutions));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Parse, *c.solutions + ": " + e.what());
    }
    const ObstaclePair p = io::pair_from_json(j.at("normalized"));
    pair = validate(NormalizedPair{p.a1, p.c1, p.a2, p.c2});
    for (const json& s : j.at("solutions")) list.push_back(io::solution_from_json(s));
  } else {
    const Normalization norm = normalize(load_pair(c));
    pair = norm.pair;
    list = standard_solutions(pair);
  }
  if (c.boundary) list.push_back(builtin_solution(*c.boundary, pair));
  SamplerConfig sampler;
  sampler.seed = c.seed;
  if (c.tol) sampler.tolerance = *c.tol;
  json reports = json::array();
  bool pass = true;
  for (const auto& s : list) {
    const VerificationReport r = verify_solution(s, pair, sampler);
    json entry = io::to_json(r);
    entry["label"] = s.label;
    reports.push_back(entry);
    if (!r.pass()) {
      pass = false;
      for (const auto& check : r.checks) {
        if (!check.pass) {
          log << "FAIL " << (s.label.empty() ? "solution" : s.label) << ": " << check.name << " = "
              << io::format_double(check.value) << " > " << io::format_double(check.tolerance)
              << '\n';
        }
      }
    }
  }
  write_json(c, "verify.json", json{{"pass", pass}, {"seed", c.seed}, {"reports", reports}}, log);
  return pass ? ExitCode::Ok : ExitCode::CheckFailed;
}

ExitCode cmd_solve(const RunConfig& c, std::ostream& log) {
  const Normalization norm = normalize(load_pair(c));
  const GridSpec grid = validate(GridSpec{c.L, c.n});
  if (!c.boundary) throw Error(ErrorKind::InvalidArgument, "--boundary is required");
  SolveConfig cfg;
  cfg.omega = c.omega.value_or(optimal_omega(grid.n));
  cfg.tolerance = c.tol.value_or(0.0);
  cfg.max_iterations = c.max_iters;
  cfg.order = SweepOrder::RedBlack;
  cfg.threads = c.threads;
  const ScalarField f =
      solve(norm.pair.as_pair(), grid, make_boundary(*c.boundary, norm.pair), cfg);
  io::write_field_csv(fs::path(c.out) / "field.csv", f);
  const ResidualReport res = residual_report(f);
  json meta = io::to_json(f.meta);
  meta["projected_residual"] = projected_residual(f);
  meta["complementarity"] = res.max_deviation;
  meta["complementarity_all"] = res.max_deviation_all;
  write_json(c, "solve.json",
             json{{"normalized", io::to_json(norm.pair.as_pair())},
                  {"transform", io::to_json(norm.record)},
                  {"grid", {{"n", grid.n}, {"L", grid.L}}},
                  {"boundary", *c.boundary},
                  {"solver", meta}},
             log);
  if (!f.meta.converged) {
    log << "FAIL solver: residual " << io::format_double(f.meta.residual) << " > tolerance "
        << io::format_double(f.meta.tolerance) << " after " << f.meta.iterations << " iterations\n";
    return ExitCode::CheckFailed;
  }
  log << "converged in " << f.meta.iterations << " iterations\n";
  return ExitCode::Ok;
}

ScalarField load_field(const RunConfig& c, const std::optional<NormalizedPair>& pair) {
  if (!c.field) throw Error(ErrorKind::InvalidArgument, "--field is required");
  if (pair) return io::read_field_csv(*c.field, pair->as_pair());
  return io::read_field_csv(*c.field);
}

ExitCode cmd_weiss(const RunConfig& c, std::ostream& log) {
  std::optional<NormalizedPair> pair;
  if (c.pair) pair = load_normalized(c);
  const ScalarField f = load_field(c, pair);
  const std::vector<double> radii = c.radii.empty() ? default_weiss_radii(f.grid) : c.radii;
  const double slack = c.tol.value_or(5e-3);
  const WeissTraceResult t = weiss_trace(f, radii, slack);
  io::write_trace_csv(fs::path(c.out) / "weiss.csv", t.trace);
  write_json(c, "weiss.json",
             json{{"r", t.trace.r},
                  {"W", t.trace.w},
                  {"min_difference", t.report.min_difference},
                  {"slack", t.report.slack},
                  {"monotone", t.report.monotone}},
             log);
  if (!t.report.monotone) {
    log << "FAIL monotonicity: min difference " << io::format_double(t.report.min_difference)
        << " < -" << io::format_double(slack) << '\n';
    return ExitCode::CheckFailed;
  }
  return ExitCode::Ok;
}

json fit_json(const FitResult& fit, const std::string& kind) {
  const FitDiagnostics& d = fit.diagnostics;
  json params;
  if (kind == "double-cone" && d.arrangement >= 0) {
    params = {{"phi1", d.phi1}, {"phi2", d.phi2}, {"arrangement", d.arrangement}};
  } else if (kind == "double-cone") {
    params = {{"candidate", d.candidate}};
  } else if (kind == "halfspace") {
    params = {{"normal_angle", d.normal_angle}, {"alpha", d.alpha}, {"beta", d.beta}};
  }
  return json{{"family", kind},
              {"params", params},
              {"distance", fit.distance},
              {"solution", io::to_json(fit.solution)}};
}

ExitCode cmd_blowup(const RunConfig& c, std::ostream& log) {
  const NormalizedPair pair = load_normalized(c);
  const ScalarField f = load_field(c, pair);
  json out;
  const std::vector<double> wr = default_weiss_radii(f.grid);
  if (!wr.empty()) {
    const WeissTraceResult t = weiss_trace(f, wr);
    const double w = t.trace.w.back();
    json energy{{"r", t.trace.r}, {"W", t.trace.w}, {"monotone", t.report.monotone}};
    try {
      const EnergyClassification e = classify_blowup_energy(w, pair);
      out["energy_class"] = std::string(to_string(e.cls));
      energy["level"] = e.level;
    } catch (const Error& e) {
      out["energy_class"] = nullptr;
      energy["error"] = e.what();
    }
    out["weiss"] = energy;
  }
  const std::vector<double> rates = c.radii.empty() ? default_rate_radii(f.grid) : c.radii;
  const double r_fit = *std::min_element(rates.begin(), rates.end());
  const DiskSamples samples = rescale(f, r_fit);
  std::optional<FitResult> best;
  std::string best_kind;
  auto consider = [&](const FitResult& fit, const std::string& kind) {
    if (!best || fit.distance < best->distance) {
      best = fit;
      best_kind = kind;
    }
  };
  json candidates = json::array();
  try {
    FitResult fit = fit_minimal_double_cone(samples, pair);
    candidates.push_back(fit_json(fit, "double-cone"));
    consider(fit, "double-cone");
  } catch (const Error& e) {
    candidates.push_back({{"family", "double-cone"}, {"error", e.what()}});
  }
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    try {
      FitResult fit = fit_halfspace(samples, pair, which);
      candidates.push_back(fit_json(fit, "halfspace"));
      consider(fit, "halfspace");
    } catch (const Error& e) {
      candidates.push_back({{"family", "halfspace"}, {"error", e.what()}});
    }
  }
  for (const BlowupSolution& p : {make_polynomial(pair.lower(), PieceKind::Lower, "p1"),
                                  make_polynomial(pair.upper(), PieceKind::Upper, "p2")}) {
    FitResult fit;
    fit.solution = p;
    fit.distance = l2_distance(samples, p);
    consider(fit, "polynomial");
  }
  json best_json = fit_json(*best, best_kind);
  try {
    const RateEstimate rate = convergence_rate(f, best->solution, rates);
    best_json["gamma"] = rate.gamma;
    best_json["rate"] = {
        {"radii", rate.radii}, {"distances", rate.distances}, {"residual", rate.residual}};
  } catch (const Error& e) {
    best_json["gamma"] = nullptr;
    best_json["rate_error"] = e.what();
  }
  best_json["fit_radius"] = r_fit;
  out["best_fit"] = best_json;
  out["candidates"] = candidates;

  json curves = json::array();
  try {
    const FreeBoundaryCurves fb = extract_free_boundary(f);
    auto emit = [&](const std::vector<CurveBranch>& list, const std::string& prefix) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string name = prefix + "_" + std::to_string(i) + ".csv";
        io::write_polyline_csv(fs::path(c.out) / name, list[i].points);
        curves.push_back({{"path", name},
                          {"obstacle", std::string(to_string(list[i].obstacle))},
                          {"tangent", json::array({list[i].tangent.x, list[i].tangent.y})},
                          {"fit_residual", list[i].fit_residual}});
      }
    };
    emit(fb.lower, "curve_lower");
    emit(fb.upper, "curve_upper");
    try {
      const AngleReport a = measure_angles(fb, pair);
      json angles = json::array();
      for (const auto& m : a.angles) {
        angles.push_back(
            {{"name", m.name},
             {"measured", m.measured},
             {"predicted", std::isnan(m.predicted) ? json(nullptr) : json(m.predicted)},
             {"deviation_deg",
              std::isnan(m.deviation_deg) ? json(nullptr) : json(m.deviation_deg)}});
      }
      out["angles"] = angles;
    } catch (const Error& e) {
      out["angles"] = {{"error", e.what()}};
    }
  } catch (const Error& e) {
    out["angles"] = {{"error", e.what()}};
  }
  out["curves"] = curves;
  write_json(c, "blowup.json", out, log);
  log << "best fit " << best_kind << " distance " << io::format_double(best->distance) << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_verify3d(const RunConfig& c, std::ostream& log) {
  const DoubleCone3D sol = build_3d(c.a1, c.a2);
  const VerificationReport r = verify_3d(sol);
  json j = io::to_json(r);
  j["t0"] = sol.t0;
  j["g_t0"] = sol.g_t0;
  j["A"] = sol.A;
  j["B"] = sol.B;
  j["b"] = sol.b;
  write_json(c, "verify3d.json", j, log);
  for (const auto& check : r.checks) {
    if (!check.pass) {
      log << "FAIL " << check.name << " = " << io::format_double(check.value) << " > "
          << io::format_double(check.tolerance) << '\n';
    }
  }
  return r.pass() ? ExitCode::Ok : ExitCode::CheckFailed;
}

ExitCode cmd_corpus(const RunConfig& c, std::ostream& log) {
  bool pass = true;
  json rows = json::array();
  std::string table = "criterion  name                      status  seconds  limit  detail\n";
  AcceptanceOptions opt;
  opt.threads = c.threads;
  opt.only = c.criteria;
  for (const CriterionResult& r : run_acceptance(opt)) {
    pass = pass && r.pass;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    char line[128];
    std::snprintf(line, sizeof(line), "%9d  %-24s  %-6s  %7.3f  %5g  ", r.id, r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.seconds, r.limit_seconds);
    table += line + r.detail + '\n';
    log << format_line(r) << '\n';
  }
  json pairs = json::array();
  if (c.pairs_dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(*c.pairs_dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      json row{{"pair", file.filename().string()}};
      try {
        const ObstaclePair original = validate(io::read_pair(file));
        const json report = io::classify_report(original);
        const Normalization norm = normalize(original);
        const json constructed = solutions_json(norm, standard_solutions(norm.pair));
        // Verify what was serialized, so the JSON round trip is covered too.
        const ObstaclePair p = io::pair_from_json(constructed.at("normalized"));
        const NormalizedPair np{p.a1, p.c1, p.a2, p.c2};
        bool ok = true;
        for (const json& s : constructed.at("solutions")) {
          ok = ok && verify_solution(io::solution_from_json(s), np).pass();
        }
        row["case"] = report.at("case");
        row["solutions"] = constructed.at("solutions").size();
        row["pass"] = ok;
        pass = pass && ok;
      } catch (const Error& e) {
        row["pass"] = false;
        row["error"] = e.what();
        pass = false;
      }
      table += "pair " + row["pair"].get<std::string>() + "  " +
               (row["pass"].get<bool>() ? "PASS" : "FAIL") + '\n';
      log << (row["pass"].get<bool>() ? "PASS" : "FAIL") << " pair " << file.filename().string()
          << '\n';
      pairs.push_back(row);
    }
  }
  io::write_text(fs::path(c.out) / "corpus.txt", table);
  write_json(c, "corpus.json", json{{"pass", pass}, {"criteria", rows}, {"pairs", pairs}}, log);
  return pass ? ExitCode::Ok : ExitCode::CheckFailed;
}

}  // namespace

RunConfig merge_config(RunConfig base, const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "subcommand")
        base.subcommand = value.get<std::string>();
      else if (key == "pair")
        base.pair = value.get<std::string>();
      else if (key == "field")
        base.field = value.get<std::string>();
      else if (key == "solutions")
        base.solutions = value.get<std::string>();
      else if (key == "boundary")
        base.boundary = value.get<std::string>();
      else if (key == "pairs")
        base.pairs_dir = value.get<std::string>();
      else if (key == "out")
        base.out = value.get<std::string>();
      else if (key == "n")
        base.n = value.get<int>();
      else if (key == "L")
        base.L = value.get<double>();
      else if (key == "omega")
        base.omega = value.get<double>();
      else if (key == "tol")
        base.tol = value.get<double>();
      else if (key == "max_iters")
        base.max_iters = value.get<int>();
      else if (key == "radii")
        base.radii = value.get<std::vector<double>>();
      else if (key == "seed")
        base.seed = value.get<std::uint64_t>();
      else if (key == "threads")
        base.threads = value.get<int>();
      else if (key == "dump_csv")
        base.dump_csv = value.get<bool>();
      else if (key == "a1")
        base.a1 = value.get<double>();
      else if (key == "a2")
        base.a2 = value.get<double>();
      else if (key == "criteria")
        base.criteria = value.get<std::vector<int>>();
      else
        throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  return base;
}

void validate(const RunConfig& c) {
  if (c.tol && !(*c.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
  if (c.omega && !(*c.omega > 0.0 && *c.omega < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "--omega must lie in (0, 2)");
  }
  if (!(c.L > 0.0)) throw Error(ErrorKind::InvalidArgument, "--L must be positive");
  if (c.max_iters < 0) throw Error(ErrorKind::InvalidArgument, "--max-iters must be >= 0");
  if (c.threads < 1) throw Error(ErrorKind::InvalidArgument, "thread count must be >= 1");
  for (double r : c.radii) {
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
  }
}

ExitCode run(const RunConfig& c, std::ostream& log) {
  try {
    validate(c);
    if (c.subcommand == "classify") return cmd_classify(c, log);
    if (c.subcommand == "construct") return cmd_construct(c, log);
    if (c.subcommand == "verify") return cmd_verify(c, log);
    if (c.subcommand == "solve") return cmd_solve(c, log);
    if (c.subcommand == "weiss") return cmd_weiss(c, log);
    if (c.subcommand == "blowup") return cmd_blowup(c, log);
    if (c.subcommand == "verify3d") return cmd_verify3d(c, log);
    if (c.subcommand == "corpus") return cmd_corpus(c, log);
    log << "error: unknown subcommand '" << c.subcommand << "'\n";
    return ExitCode::InputError;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    const bool input = e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse ||
                       e.kind() == ErrorKind::InvalidArgument;
    return input ? ExitCode::InputError : ExitCode::CheckFailed;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::InputError;
  }
}

}  // namespace dcone::cli
