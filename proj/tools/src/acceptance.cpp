// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "dcone/analysis.hpp"
#include "dcone/analytic_solutions.hpp"
#include "dcone/axisymmetric.hpp"
#include "dcone/classifier.hpp"
#include "dcone/error.hpp"
#include "dcone/fd_solver.hpp"
#include "dcone/free_boundary.hpp"

namespace dcone::cli {

namespace {

constexpr NormalizedPair kCase2Pair{-1.0, -1.0, 2.0, 0.0};
constexpr NormalizedPair kCase3Pair{-1.0, -1.0, 2.0, 2.0};

class Detail {
 public:
  Detail& add(const std::string& key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return add(key, std::string(buf));
  }
  Detail& add(const std::string& key, const std::string& v) {
    if (!text_.empty()) text_ += ' ';
    text_ += key + '=' + v;
    return *this;
  }
  [[nodiscard]] const std::string& str() const { return text_; }

 private:
  std::string text_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

ScalarField solve_field(const NormalizedPair& pair, int n, const BoundaryData& g,
                        const AcceptanceOptions& opt, double tolerance = 0.0) {
  SolveConfig cfg;
  cfg.omega = optimal_omega(n);
  cfg.order = SweepOrder::RedBlack;
  cfg.threads = opt.threads;
  cfg.tolerance = tolerance;
  cfg.max_iterations = 400 * n;
  const QuadForm p1 = pair.lower();
  const QuadForm p2 = pair.upper();
  return solve(
      pair.as_pair(), GridSpec{1.0, n}, [&](Vec2 x) { return std::clamp(g(x), p1(x), p2(x)); },
      cfg);
}

BoundaryData from_solution(const BlowupSolution& s, double cubic = 0.0) {
  return
      [s, cubic](Vec2 x) { return s.value(x) + cubic * (x.x * x.x * x.x - 3.0 * x.x * x.y * x.y); };
}

Outcome classifier_exactness(const AcceptanceOptions&) {
  const auto t0 = std::chrono::steady_clock::now();
  const AlphaSet alphas = double_cone_alphas(kCase2Pair);
  const SectorSolution plus = sector_from_alpha(kCase2Pair, alphas.lo, Branch::Plus);
  const SectorSolution minus = sector_from_alpha(kCase2Pair, alphas.lo, Branch::Minus);
  const OpeningAngle opening = opening_angle(kCase2Pair);
  const double us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  const double err = std::max(
      {std::abs(alphas.lo - 0.5), std::abs(alphas.hi - 0.5),
       std::abs(plus.beta - std::sqrt(3.0) / 2.0), std::abs(minus.beta + std::sqrt(3.0) / 2.0),
       std::abs(opening.acute - kPi / 3.0), std::abs(opening.supplement - 2.0 * kPi / 3.0),
       std::abs(opening.cos_squared - 0.25)});
  Detail d;
  d.add("alpha", alphas.lo).add("beta+", plus.beta).add("beta-", minus.beta);
  d.add("opening", opening.acute).add("max_err", err).add("micros", us);
  return {alphas.kind == AlphaSet::Kind::Single && err <= 1e-12 && us < 1000.0, d.str()};
}

Outcome trichotomy(const AcceptanceOptions&) {
  const CaseLabel l1 = classify(kCanonicalPair);
  const AlphaSet s1 = double_cone_alphas(kCanonicalPair);
  // Two different alphas in the interval give different double cones.
  const auto at_lo = enumerate_double_cones(kCanonicalPair, -0.5, -0.5);
  const auto at_hi = enumerate_double_cones(kCanonicalPair, 0.5, 0.5);
  const bool infinite = l1.tag == CaseTag::Case1 && s1.kind == AlphaSet::Kind::Interval &&
                        s1.hi > s1.lo && !at_lo.empty() && !at_hi.empty() &&
                        !same_solution(at_lo.front(), at_hi.front());
  const CaseLabel l2 = classify(kCase2Pair);
  const std::size_t n2 = enumerate_double_cones(kCase2Pair).size();
  const CaseLabel l3 = classify(kCase3Pair);
  std::size_t n3 = 0;
  try {
    n3 = enumerate_double_cones(kCase3Pair).size();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoDoubleCones) throw;
  }
  const DirectionBound upper = halfspace_direction_bounds(kCase3Pair, Obstacle::Upper);
  const bool no_upper = upper.kind == DirectionBound::Kind::Count && upper.count == 0;
  Detail d;
  d.add("case1", std::string(to_string(l1.tag)) + (infinite ? "/infinite" : "/finite"));
  d.add("case2", std::string(to_string(l2.tag)) + "/" + std::to_string(n2));
  d.add("case3", std::string(to_string(l3.tag)) + "/" + std::to_string(n3));
  d.add("case3_upper_halfspaces", no_upper ? std::string("0") : std::string("nonzero"));
  return {infinite && l2.tag == CaseTag::Case2 && n2 == 4 && l3.tag == CaseTag::Case3 && n3 == 0 &&
              no_upper,
          d.str()};
}

std::vector<std::pair<BlowupSolution, NormalizedPair>> constructed_solutions() {
  std::vector<std::pair<BlowupSolution, NormalizedPair>> all;
  for (const auto& s : enumerate_double_cones(kCase2Pair)) all.emplace_back(s, kCase2Pair);
  for (double alpha : {-0.75, -0.25, 0.0, 0.5}) {
    for (const auto& s : enumerate_double_cones(kCanonicalPair, alpha, -alpha / 2.0)) {
      all.emplace_back(s, kCanonicalPair);
    }
  }
  for (int arr = 0; arr < 4; ++arr) {
    all.emplace_back(build_mu(kPi / 2.0, kPi / 2.0, arr), kCanonicalPair);
    all.emplace_back(build_mu(kPi / 3.0, kPi / 2.0, arr), kCanonicalPair);
    all.emplace_back(build_mu(0.4, 2.1, arr), kCanonicalPair);
  }
  all.emplace_back(john_solution(), kCanonicalPair);
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    for (double angle : {0.0, 0.7, 2.5}) {
      all.emplace_back(build_halfspace_normal(kCanonicalPair, which, angle), kCanonicalPair);
    }
  }
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    for (int k = 0; k < 64; ++k) {
      const double angle = kTwoPi * k / 64.0;
      if (halfspace_normal_admissible(kCase2Pair, which, angle)) {
        all.emplace_back(build_halfspace_normal(kCase2Pair, which, angle), kCase2Pair);
      }
    }
  }
  all.emplace_back(make_polynomial(kCanonicalPair.lower(), PieceKind::Lower), kCanonicalPair);
  all.emplace_back(make_polynomial(kCanonicalPair.upper(), PieceKind::Upper), kCanonicalPair);
  all.emplace_back(build_polynomial(kCanonicalPair, {0.3, 0.2, -0.3}), kCanonicalPair);
  return all;
}

Outcome constructed(const AcceptanceOptions&) {
  const auto all = constructed_solutions();
  double c1 = 0.0;
  double harmonic = 0.0;
  int failed = 0;
  std::string first_failure;
  for (const auto& [s, pair] : all) {
    const VerificationReport r = verify_solution(s, pair);
    c1 = std::max(c1, r.metric("c1_matching"));
    harmonic = std::max(harmonic, r.metric("harmonicity"));
    if (!r.pass()) {
      ++failed;
      if (first_failure.empty()) first_failure = s.label.empty() ? "unlabeled" : s.label;
    }
  }
  Detail d;
  d.add("solutions", std::to_string(all.size())).add("failed", std::to_string(failed));
  d.add("max_c1", c1).add("max_harmonicity", harmonic);
  if (!first_failure.empty()) d.add("first_failure", first_failure);
  return {failed == 0 && c1 < 1e-10 && harmonic == 0.0, d.str()};
}

Outcome weiss_levels(const AcceptanceOptions&) {
  struct Case {
    BlowupSolution s;
    double level;
  };
  const std::vector<Case> cases = {
      {make_polynomial({0.3, 0.1, -0.3}, PieceKind::Harmonic), 0.0},
      {make_polynomial(kCanonicalPair.lower(), PieceKind::Lower), kTwoPi},
      {make_polynomial(kCanonicalPair.upper(), PieceKind::Upper), kTwoPi},
      {build_mu(kPi / 2.0, kPi / 2.0), kPi},
      {build_mu(kPi / 3.0, kPi / 2.0, 1), kPi},
      {john_solution(), kPi},
      {build_halfspace_normal(kCanonicalPair, Obstacle::Lower, 0.3), kPi},
      {build_halfspace_normal(kCanonicalPair, Obstacle::Upper, 2.0), kPi},
  };
  double closed = 0.0;
  double grid = 0.0;
  for (const Case& c : cases) {
    closed = std::max(closed, std::abs(weiss_of_blowup(c.s, kCanonicalPair) - c.level));
    const ScalarField f = sample_field(kCanonicalPair.as_pair(), GridSpec{1.0, 257}, c.s);
    grid = std::max(grid, std::abs(weiss_energy(f, 0.5) - c.level));
  }
  Detail d;
  d.add("closed_form_err", closed).add("grid_err", grid);
  return {closed <= 1e-9 && grid <= 5e-3, d.str()};
}

Outcome weiss_monotonicity(const AcceptanceOptions& opt) {
  const std::vector<double> radii = {0.5, 0.45, 0.4, 0.35, 0.3, 0.25, 0.2, 0.17};
  std::vector<BoundaryData> data = {
      from_solution(build_mu(kPi / 3.0, kPi / 2.0)),
      from_solution(build_mu(kPi / 3.0, kPi / 2.0), 0.1),
      from_solution(build_mu(1.0, 1.2, 1), -0.2),
      from_solution(john_solution(), 0.15),
      from_solution(build_halfspace_normal(kCanonicalPair, Obstacle::Lower, 0.4), 0.1),
      from_solution(build_halfspace_normal(kCanonicalPair, Obstacle::Upper, 1.9)),
      [](Vec2 x) { return 0.5 * (x.x * x.x - x.y * x.y) + 0.3 * x.x; },
      [](Vec2 x) { return std::sin(3.0 * x.x) * std::cos(2.0 * x.y); },
      [](Vec2 x) { return x.x * x.y * 3.0 - 0.2; },
      [](Vec2 x) { return 0.8 * std::cos(4.0 * std::atan2(x.y, x.x)) * (x.x * x.x + x.y * x.y); },
  };
  double worst = std::numeric_limits<double>::infinity();
  int unconverged = 0;
  int violations = 0;
  std::string per_solve;
  for (const auto& g : data) {
    const ScalarField f = solve_field(kCanonicalPair, 257, g, opt);
    if (!f.meta.converged) ++unconverged;
    const WeissTraceResult t = weiss_trace(f, radii);
    worst = std::min(worst, t.report.min_difference);
    if (!t.report.monotone) ++violations;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%.2e", per_solve.empty() ? "" : ",",
                  t.report.min_difference);
    per_solve += buf;
  }
  Detail d;
  d.add("min_difference", worst).add("nonmonotone_solves", std::to_string(violations));
  d.add("unconverged", std::to_string(unconverged)).add("per_solve", per_solve);
  return {worst >= -5e-3 && unconverged == 0, d.str()};
}

Outcome solver_order(const AcceptanceOptions& opt) {
  const BlowupSolution mu = build_mu(kPi / 2.0, kPi / 2.0);
  std::vector<double> errors;
  for (int n : {129, 257}) {
    const ScalarField f = solve_field(kCanonicalPair, n, from_solution(mu), opt, 1e-14);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        err = std::max(err, std::abs(f.at(i, j) - mu.value(f.grid.node(i, j))));
      }
    }
    errors.push_back(err);
  }
  const double ratio = errors[0] / errors[1];
  Detail d;
  d.add("err129", errors[0]).add("err257", errors[1]).add("ratio", ratio);
  return {ratio >= 3.0 && ratio <= 5.0, d.str()};
}

Outcome free_boundary_geometry(const AcceptanceOptions& opt) {
  Detail d;
  bool pass = true;
  {
    const ScalarField f =
        solve_field(kCanonicalPair, 257, from_solution(build_mu(kPi / 3.0, kPi / 2.0)), opt);
    const FreeBoundaryCurves c = extract_free_boundary(f);
    const std::size_t curves = c.lower.size() + c.upper.size();
    const AngleReport r = measure_angles(c, kCanonicalPair);
    const AngleMeasurement* plus = r.find("gamma1+_gamma2+");
    const double dev = plus ? plus->deviation_deg : 180.0;
    d.add("case1_curves", std::to_string(curves)).add("case1_dev_deg", dev);
    pass = pass && curves == 4 && dev <= 3.0;
  }
  {
    // The member whose harmonic sectors open by pi/3.
    const auto cones = enumerate_double_cones(kCase2Pair);
    const auto narrow = std::find_if(cones.begin(), cones.end(), [](const BlowupSolution& s) {
      return std::any_of(s.pieces.begin(), s.pieces.end(), [](const AngularPiece& p) {
        return p.kind == PieceKind::Harmonic && std::abs(p.width() - kPi / 3.0) < 1e-9;
      });
    });
    if (narrow == cones.end()) return {false, d.add("case2", std::string("no-narrow-cone")).str()};
    const ScalarField f = solve_field(kCase2Pair, 257, from_solution(*narrow), opt);
    const FreeBoundaryCurves c = extract_free_boundary(f);
    const AngleReport r = measure_angles(c, kCase2Pair);
    double dev = 180.0;
    for (const char* name : {"gamma1+_gamma2+", "gamma1-_gamma2-"}) {
      if (const AngleMeasurement* a = r.find(name)) {
        dev = std::min(dev, std::abs(a->measured - kPi / 3.0) * 180.0 / kPi);
      }
    }
    d.add("case2_dev_deg", dev).add("case2_max_dev_deg", r.max_deviation_deg);
    pass = pass && dev <= 3.0;
  }
  return {pass, d.str()};
}

Outcome minimal_fit(const AcceptanceOptions&) {
  const DiskSamples s = sample_disk(build_mu(kPi / 3.0, kPi / 2.0));
  const FitResult fit = fit_minimal_double_cone(s, kCanonicalPair);
  const double angle_err = std::max(std::abs(fit.diagnostics.phi1 - kPi / 3.0),
                                    std::abs(fit.diagnostics.phi2 - kPi / 2.0));
  double orth = 0.0;
  for (double v : fit.orthogonality) orth = std::max(orth, std::abs(v));
  Detail d;
  d.add("angle_err", angle_err).add("orthogonality", orth).add("distance", fit.distance);
  d.add("arrangement", std::to_string(fit.diagnostics.arrangement));
  return {angle_err <= 1e-4 && orth < 1e-6 && fit.diagnostics.arrangement == 0, d.str()};
}

Outcome uniqueness_signature(const AcceptanceOptions& opt) {
  // At n = 257 the O((h/r)^2) discretization floor hides the decay below r = 0.2.
  const ScalarField f =
      solve_field(kCanonicalPair, 1025, from_solution(build_mu(kPi / 3.0, kPi / 2.0), 0.05), opt);
  const std::vector<double> radii = {0.4, 0.3, 0.2, 0.15, 0.1};
  const FitResult fit = fit_minimal_double_cone(rescale(f, radii.back()), kCanonicalPair);
  std::vector<double> dist;
  for (double r : radii) dist.push_back(l2_distance(rescale(f, r), fit.solution));
  bool decreasing = true;
  for (std::size_t i = 1; i < dist.size(); ++i) decreasing = decreasing && dist[i] < dist[i - 1];
  double gamma = std::numeric_limits<double>::quiet_NaN();
  try {
    gamma = fit_rate(radii, dist).gamma;
  } catch (const Error&) {
  }
  Detail d;
  d.add("phi1", fit.diagnostics.phi1).add("phi2", fit.diagnostics.phi2);
  d.add("d_max", dist.front()).add("d_min", dist.back()).add("gamma", gamma);
  d.add("monotone", decreasing ? std::string("yes") : std::string("no"));
  return {decreasing && gamma > 0.0, d.str()};
}

Outcome three_d(const AcceptanceOptions&) {
  const DoubleCone3D sol = build_3d(-1.0, 1.0);
  const VerificationReport r = verify_3d(sol);
  Detail d;
  d.add("t0", sol.t0).add("g_prime_t0", r.metric("g_prime_t0"));
  d.add("ode_residual", r.metric("ode_residual")).add("zeta1_residual", r.metric("zeta1_residual"));
  d.add("f_min", -r.metric("f_nonnegative"));
  return {r.pass() && sol.t0 > 0.60 && sol.t0 < 0.65, d.str()};
}

struct Criterion {
  const char* name;
  double limit_seconds;
  Outcome (*run)(const AcceptanceOptions&);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"classifier-exactness", 1.0, classifier_exactness},
    {"trichotomy", 1.0, trichotomy},
    {"constructed-solutions", 1.0, constructed},
    {"weiss-levels", 10.0, weiss_levels},
    {"weiss-monotonicity", 120.0, weiss_monotonicity},
    {"solver-order", 120.0, solver_order},
    {"free-boundary-geometry", 120.0, free_boundary_geometry},
    {"minimal-fit", 30.0, minimal_fit},
    {"uniqueness-signature", 120.0, uniqueness_signature},
    {"three-d", 1.0, three_d},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) {
    throw Error(ErrorKind::InvalidArgument, "criterion " + std::to_string(id) + " does not exist");
  }
  const Criterion& c = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = c.name;
  result.limit_seconds = c.limit_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.run(options);
    result.pass = o.pass;
    result.detail = o.detail;
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("error=") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (result.seconds > result.limit_seconds) {
    result.pass = false;
    result.detail += " over_time_limit";
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (options.only.empty() ||
        std::find(options.only.begin(), options.only.end(), id) != options.only.end()) {
      out.push_back(run_criterion(id, options));
    }
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof(head), "%s %2d %-24s (%.3f s / %g s) ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.limit_seconds);
  return head + r.detail;
}

}  // namespace dcone::cli
