// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dcone/error.hpp"

namespace dcone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_radius(const ScalarField& field, double r) {
  if (!(r > 0.0) || r > 0.5 * field.grid.L * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "radius " << r << " must lie in (0, L/2] with L = " << field.grid.L;
    throw Error(ErrorKind::RadiusTooLarge, msg.str());
  }
}

// Node gradients and bulk density 2 u Lap(u) used by the Weiss quadrature.
struct WeissData {
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> lap;
};

WeissData prepare(const ScalarField& f) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  const double h = g.h();
  WeissData d;
  d.gx.resize(g.size());
  d.gy.resize(g.size());
  d.lap.resize(g.size());
  auto state = [&](std::size_t k) { return (f.lower[k] ? 1 : 0) | (f.upper[k] ? 2 : 0); };
  auto mask_value = [&](int s) {
    if (s == 1) return f.lambda1;
    if (s == 2) return f.lambda2;
    return 0.0;
  };
  const double lap_lo = std::min(f.lambda1, 0.0);
  const double lap_hi = std::max(f.lambda2, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t k = g.index(i, j);
      const int il = std::max(i - 1, 0), ir = std::min(i + 1, n - 1);
      const int jl = std::max(j - 1, 0), jr = std::min(j + 1, n - 1);
      d.gx[k] = (f.u[g.index(ir, j)] - f.u[g.index(il, j)]) / ((ir - il) * h);
      d.gy[k] = (f.u[g.index(i, jr)] - f.u[g.index(i, jl)]) / ((jr - jl) * h);
      const int s = state(k);
      double lap = mask_value(s);
      if (i > 0 && j > 0 && i < n - 1 && j < n - 1) {
        const bool uniform =
            state(k - 1) == s && state(k + 1) == s && state(k - n) == s && state(k + n) == s;
        if (!uniform) lap = std::clamp(f.laplacian(i, j), lap_lo, lap_hi);
      }
      d.lap[k] = lap;
    }
  }
  return d;
}

double weiss_with(const ScalarField& field, const WeissData& data, double r,
                  const WeissQuadrature& quad) {
  check_radius(field, r);
  const double h = field.grid.h();
  const int n_r = quad.n_r > 0 ? quad.n_r : std::max(64, static_cast<int>(std::ceil(2.0 * r / h)));
  int n_theta = quad.n_theta > 0 ? quad.n_theta
                                 : std::max(256, static_cast<int>(std::ceil(4.0 * kPi * r / h)));
  n_theta += (4 - n_theta % 4) % 4;
  const double dr = r / n_r;
  const double dt = kTwoPi / n_theta;
  const double kGauss = 0.5 / std::sqrt(3.0);
  double bulk = 0.0;
  for (int it = 0; it < n_theta; ++it) {
    const Vec2 e = unit((it + 0.5) * dt);
    double ray = 0.0;
    // Two-point Gauss per radial cell: exact on quadratic u.
    for (int ir = 0; ir < 2 * n_r; ++ir) {
      const double rho = (ir / 2 + 0.5 + (ir % 2 ? kGauss : -kGauss)) * dr;
      const Vec2 x = e * rho;
      const double gx = bilinear(field.grid, data.gx, x);
      const double gy = bilinear(field.grid, data.gy, x);
      const double u = field.interpolate_cubic(x);
      ray += (gx * gx + gy * gy + 2.0 * u * bilinear(field.grid, data.lap, x)) * rho;
    }
    bulk += ray;
  }
  bulk *= 0.5 * dr * dt;
  double boundary = 0.0;
  for (int k = 0; k < quad.n_boundary; ++k) {
    const double u = field.interpolate_cubic(unit(kTwoPi * k / quad.n_boundary) * r);
    boundary += u * u;
  }
  boundary *= r * kTwoPi / quad.n_boundary;
  return bulk / std::pow(r, 4) - 2.0 * boundary / std::pow(r, 5);
}

template <class F>
double golden_min(F&& f, double a, double b, double tol, int& evals) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  evals += 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc <= fd ? c : d;
}

// Per-ray squared distance to a homogeneous profile r^2 M(theta).
double ray_objective(const DiskSamples& s, const std::vector<double>& profile) {
  const PolarGrid& g = s.grid;
  double j = 0.0;
  for (int it = 0; it < g.n_theta; ++it) {
    const double m = profile[it];
    for (int ir = 0; ir < g.n_r; ++ir) {
      const double rho = g.rho(ir);
      const double diff = s.values[g.index(it, ir)] - rho * rho * m;
      j += g.weight(ir) * diff * diff;
    }
  }
  return j;
}

double mu_profile(double phi1, double phi2, int arrangement, double theta) {
  const double s = 2.0 * std::remainder(theta - arrangement * kPi / 2.0, kTwoPi);
  if (s >= -phi2 && s <= phi1) return 1.0;
  if (s > phi1 && s <= kPi + phi1) return std::cos(s - phi1);
  if (s >= -kPi - phi2 && s < -phi2) return std::cos(s + phi2);
  return -1.0;
}

std::vector<double> solution_profile(const BlowupSolution& sol, const PolarGrid& g) {
  std::vector<double> p(g.n_theta);
  for (int it = 0; it < g.n_theta; ++it) p[it] = sol.value(unit(g.theta(it)));
  return p;
}

double mu_objective(const DiskSamples& s, double phi1, double phi2, int arrangement) {
  std::vector<double> p(s.grid.n_theta);
  for (int it = 0; it < s.grid.n_theta; ++it) {
    p[it] = mu_profile(phi1, phi2, arrangement, s.grid.theta(it));
  }
  return ray_objective(s, p);
}

FitResult fit_case1(const DiskSamples& samples) {
  constexpr int kCoarse = 16;
  constexpr double kEdge = 1e-9;
  constexpr double kStep = 1e-10;
  const double spacing = kPi / kCoarse;
  int evals = 0;
  struct Candidate {
    double j;
    double phi1;
    double phi2;
    int arrangement;
  };
  std::array<Candidate, 4> best_per_arrangement;
  best_per_arrangement.fill({kInf, 0.0, 0.0, 0});
  for (int a = 0; a < kCoarse; ++a) {
    for (int b = 0; b < kCoarse; ++b) {
      for (int arr = 0; arr < 4; ++arr) {
        const double phi1 = (a + 0.5) * spacing;
        const double phi2 = (b + 0.5) * spacing;
        const double j = mu_objective(samples, phi1, phi2, arr);
        ++evals;
        if (j < best_per_arrangement[arr].j) best_per_arrangement[arr] = {j, phi1, phi2, arr};
      }
    }
  }
  auto refine = [&](Candidate c) {
    const int arr = c.arrangement;
    for (int cycle = 0; cycle < 12; ++cycle) {
      const double old1 = c.phi1;
      const double old2 = c.phi2;
      c.phi1 = golden_min([&](double p) { return mu_objective(samples, p, c.phi2, arr); },
                          std::max(kEdge, c.phi1 - spacing),
                          std::min(kPi - kEdge, c.phi1 + spacing), kStep, evals);
      c.phi2 = golden_min([&](double p) { return mu_objective(samples, c.phi1, p, arr); },
                          std::max(kEdge, c.phi2 - spacing),
                          std::min(kPi - kEdge, c.phi2 + spacing), kStep, evals);
      if (std::abs(c.phi1 - old1) < 10 * kStep && std::abs(c.phi2 - old2) < 10 * kStep) break;
    }
    c.j = mu_objective(samples, c.phi1, c.phi2, arr);
    ++evals;
    return c;
  };
  Candidate best{kInf, 0.0, 0.0, 0};
  for (const auto& c : best_per_arrangement) {
    const Candidate r = refine(c);
    const bool better =
        r.j < best.j || (r.j == best.j && std::tie(r.phi1, r.phi2, r.arrangement) <
                                              std::tie(best.phi1, best.phi2, best.arrangement));
    if (better) best = r;
  }
  FitResult out;
  out.solution = build_mu(best.phi1, best.phi2, best.arrangement);
  out.distance = l2_distance(samples, out.solution);
  const auto orth = orthogonality_residuals(samples, best.phi1, best.phi2, best.arrangement);
  out.orthogonality = {orth[0], orth[1]};
  out.diagnostics.evaluations = evals;
  out.diagnostics.step_tolerance = kStep;
  out.diagnostics.phi1 = best.phi1;
  out.diagnostics.phi2 = best.phi2;
  out.diagnostics.arrangement = best.arrangement;
  return out;
}

}  // namespace

DiskSamples rescale(const ScalarField& field, double r, const PolarGrid& grid) {
  check_radius(field, r);
  DiskSamples out;
  out.grid = grid;
  out.values.resize(grid.size());
  const double inv = 1.0 / (r * r);
  for (int it = 0; it < grid.n_theta; ++it) {
    for (int ir = 0; ir < grid.n_r; ++ir) {
      out.values[grid.index(it, ir)] = field.interpolate_cubic(grid.node(it, ir) * r) * inv;
    }
  }
  return out;
}

DiskSamples sample_disk(const std::function<double(Vec2)>& f, const PolarGrid& grid) {
  DiskSamples out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (int it = 0; it < grid.n_theta; ++it) {
    for (int ir = 0; ir < grid.n_r; ++ir) out.values[grid.index(it, ir)] = f(grid.node(it, ir));
  }
  return out;
}

DiskSamples sample_disk(const BlowupSolution& solution, const PolarGrid& grid) {
  return sample_disk([&solution](Vec2 x) { return solution.value(x); }, grid);
}

double l2_norm(const DiskSamples& s) {
  double acc = 0.0;
  for (int it = 0; it < s.grid.n_theta; ++it) {
    for (int ir = 0; ir < s.grid.n_r; ++ir) {
      const double v = s.values[s.grid.index(it, ir)];
      acc += s.grid.weight(ir) * v * v;
    }
  }
  return std::sqrt(acc);
}

double l2_distance(const DiskSamples& s, const BlowupSolution& solution) {
  double acc = 0.0;
  for (int it = 0; it < s.grid.n_theta; ++it) {
    for (int ir = 0; ir < s.grid.n_r; ++ir) {
      const double d = s.values[s.grid.index(it, ir)] - solution.value(s.grid.node(it, ir));
      acc += s.grid.weight(ir) * d * d;
    }
  }
  return std::sqrt(acc);
}

double l2_distance(const DiskSamples& a, const DiskSamples& b) {
  if (a.values.size() != b.values.size()) {
    throw Error(ErrorKind::InvalidArgument, "disk samples use different quadrature grids");
  }
  double acc = 0.0;
  for (int it = 0; it < a.grid.n_theta; ++it) {
    for (int ir = 0; ir < a.grid.n_r; ++ir) {
      const std::size_t k = a.grid.index(it, ir);
      const double d = a.values[k] - b.values[k];
      acc += a.grid.weight(ir) * d * d;
    }
  }
  return std::sqrt(acc);
}

double weiss_energy(const ScalarField& field, double r, const WeissQuadrature& quad) {
  check_radius(field, r);
  return weiss_with(field, prepare(field), r, quad);
}

WeissTraceResult weiss_trace(const ScalarField& field, const std::vector<double>& r_list,
                             double slack, const WeissQuadrature& quad) {
  const double h = field.grid.h();
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    const double r = r_list[i];
    if (!(r > 20.0 * h) || r > 0.5 * field.grid.L * (1.0 + 1e-12) ||
        (i > 0 && !(r < r_list[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument,
                  "weiss_trace radii must decrease strictly within (20h, L/2]");
    }
  }
  const WeissData data = prepare(field);
  WeissTraceResult out;
  out.report.slack = slack;
  out.report.min_difference = kInf;
  for (double r : r_list) {
    out.trace.r.push_back(r);
    out.trace.w.push_back(weiss_with(field, data, r, quad));
  }
  for (std::size_t i = 1; i < out.trace.w.size(); ++i) {
    out.report.min_difference =
        std::min(out.report.min_difference, out.trace.w[i - 1] - out.trace.w[i]);
  }
  if (out.trace.w.size() < 2) out.report.min_difference = 0.0;
  out.report.monotone = out.report.min_difference >= -slack;
  return out;
}

std::string_view to_string(EnergyClass cls) noexcept {
  switch (cls) {
    case EnergyClass::PolynomialHarmonic: return "polynomial-harmonic";
    case EnergyClass::CoincidencePolynomial: return "coincidence-polynomial";
    case EnergyClass::HalfspaceOrDoubleCone: return "halfspace-or-double-cone";
  }
  return "?";
}

EnergyLevels energy_levels(const NormalizedPair& pair) {
  EnergyLevels levels;
  levels.harmonic = {0.0};
  if (pair.is_canonical()) {
    levels.coincidence = {kTwoPi};
    levels.cone = {kPi};
    return levels;
  }
  levels.coincidence = {weiss_of_blowup(make_polynomial(pair.lower(), PieceKind::Lower), pair),
                        weiss_of_blowup(make_polynomial(pair.upper(), PieceKind::Upper), pair)};
  const CaseLabel label = classify(pair);
  if (label.tag == CaseTag::Case2) {
    for (const auto& s : enumerate_double_cones(pair))
      levels.cone.push_back(weiss_of_blowup(s, pair));
  } else if (label.tag == CaseTag::Case1) {
    for (int k = 0; k < 8; ++k) {
      const double alpha = pair.a1 + (pair.a2 - pair.a1) * (k + 0.5) / 8.0;
      for (const auto& s : enumerate_double_cones(pair, alpha, alpha)) {
        levels.cone.push_back(weiss_of_blowup(s, pair));
      }
    }
  }
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    for (int k = 0; k < 64; ++k) {
      const double angle = kTwoPi * k / 64.0;
      if (halfspace_normal_admissible(pair, which, angle)) {
        levels.cone.push_back(weiss_of_blowup(build_halfspace_normal(pair, which, angle), pair));
      }
    }
  }
  return levels;
}

EnergyClassification classify_blowup_energy(double w_limit, const NormalizedPair& pair) {
  const EnergyLevels levels = energy_levels(pair);
  struct Option {
    EnergyClass cls;
    double distance;
    double level;
  };
  std::vector<Option> options;
  auto consider = [&](EnergyClass cls, const std::vector<double>& values) {
    Option o{cls, kInf, 0.0};
    for (double v : values) {
      if (std::abs(w_limit - v) < o.distance) o = {cls, std::abs(w_limit - v), v};
    }
    if (std::isfinite(o.distance)) options.push_back(o);
  };
  consider(EnergyClass::PolynomialHarmonic, levels.harmonic);
  consider(EnergyClass::CoincidencePolynomial, levels.coincidence);
  consider(EnergyClass::HalfspaceOrDoubleCone, levels.cone);
  std::stable_sort(options.begin(), options.end(),
                   [](const Option& a, const Option& b) { return a.distance < b.distance; });
  EnergyClassification out;
  out.cls = options.front().cls;
  out.level = options.front().level;
  out.nearest_distance = options.front().distance;
  out.second_distance = options.size() > 1 ? options[1].distance : kInf;
  if (out.second_distance < 0.1) {
    std::ostringstream msg;
    msg << "W = " << w_limit << " lies within 0.1 of two levels (" << options[0].level << ", "
        << options[1].level << ")";
    throw Error(ErrorKind::Ambiguous, msg.str());
  }
  return out;
}

std::array<double, 2> orthogonality_residuals(const DiskSamples& samples, double phi1, double phi2,
                                              int arrangement) {
  const PolarGrid& g = samples.grid;
  std::array<double, 2> out{0.0, 0.0};
  for (int it = 0; it < g.n_theta; ++it) {
    const double theta = g.theta(it);
    const double s = 2.0 * std::remainder(theta - arrangement * kPi / 2.0, kTwoPi);
    const double m = mu_profile(phi1, phi2, arrangement, theta);
    const bool first = s > phi1 && s <= kPi + phi1;
    const bool second = s >= -kPi - phi2 && s < -phi2;
    if (!first && !second) continue;
    const double test = first ? std::sin(phi1 - s) : std::sin(s + phi2);
    double acc = 0.0;
    for (int ir = 0; ir < g.n_r; ++ir) {
      const double rho = g.rho(ir);
      const double diff = samples.values[g.index(it, ir)] - rho * rho * m;
      acc += g.weight(ir) * rho * rho * diff;
    }
    out[first ? 0 : 1] += test * acc;
  }
  return out;
}

FitResult fit_minimal_double_cone(const DiskSamples& samples, const NormalizedPair& pair) {
  const CaseLabel label = classify(pair);
  if (label.tag == CaseTag::Case3) {
    throw Error(ErrorKind::NotCase1Or2, "double-cone fitting needs a Case 1 or Case 2 pair");
  }
  if (label.tag == CaseTag::Case1) {
    if (!pair.is_canonical()) {
      throw Error(ErrorKind::InvalidArgument,
                  "Case 1 fitting expects the canonical pair; apply reduce_case1 first");
    }
    return fit_case1(samples);
  }
  const auto candidates = enumerate_double_cones(pair);
  FitResult out;
  out.distance = kInf;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = l2_distance(samples, candidates[i]);
    ++out.diagnostics.evaluations;
    if (d < out.distance) {
      out.distance = d;
      out.solution = candidates[i];
      out.diagnostics.candidate = static_cast<int>(i);
    }
  }
  return out;
}

FitResult fit_halfspace(const DiskSamples& samples, const NormalizedPair& pair, Obstacle which) {
  const DirectionBound bound = halfspace_direction_bounds(pair, which);
  FitResult out;
  out.distance = kInf;
  if (bound.kind == DirectionBound::Kind::Count) {
    if (bound.count == 0) {
      std::ostringstream msg;
      msg << "the pair admits no " << to_string(which) << " halfspace solutions";
      throw Error(ErrorKind::NoHalfspaceFamily, msg.str());
    }
    const double alpha = double_cone_alphas(pair).lo;
    for (HalfspaceSide side : {HalfspaceSide::Above, HalfspaceSide::Below}) {
      BlowupSolution s = build_halfspace(pair, which, alpha, Branch::Plus, side);
      const double d = l2_distance(samples, s);
      ++out.diagnostics.evaluations;
      if (d < out.distance) {
        out.distance = d;
        out.solution = std::move(s);
      }
    }
  } else {
    constexpr int kCoarse = 360;
    constexpr double kStep = 1e-11;
    auto objective = [&](double angle) {
      if (!halfspace_normal_admissible(pair, which, angle)) return kInf;
      return ray_objective(
          samples, solution_profile(build_halfspace_normal(pair, which, angle), samples.grid));
    };
    double best_angle = 0.0;
    double best_j = kInf;
    for (int k = 0; k < kCoarse; ++k) {
      const double angle = kTwoPi * k / kCoarse;
      const double j = objective(angle);
      ++out.diagnostics.evaluations;
      if (j < best_j) {
        best_j = j;
        best_angle = angle;
      }
    }
    if (!std::isfinite(best_j)) {
      throw Error(ErrorKind::NoHalfspaceFamily, "no admissible halfspace direction found");
    }
    const double spacing = kTwoPi / kCoarse;
    const double refined =
        golden_min(objective, best_angle - 1.5 * spacing, best_angle + 1.5 * spacing, kStep,
                   out.diagnostics.evaluations);
    const double angle = objective(refined) <= best_j ? refined : best_angle;
    out.solution = build_halfspace_normal(pair, which, angle);
    out.distance = l2_distance(samples, out.solution);
    out.diagnostics.step_tolerance = kStep;
    out.diagnostics.normal_angle = wrap_angle(angle);
  }
  if (out.solution.halfspace) {
    out.diagnostics.alpha = out.solution.halfspace->sector.alpha;
    out.diagnostics.beta = out.solution.halfspace->sector.beta;
    out.diagnostics.normal_angle = wrap_angle(angle_of(out.solution.halfspace->normal));
  }
  return out;
}

RateEstimate fit_rate(const std::vector<double>& radii, const std::vector<double>& distances) {
  if (radii.size() < 5 || radii.size() != distances.size()) {
    throw Error(ErrorKind::InvalidArgument, "rate estimation needs at least five radii");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
    if (distances[i] >= 1e-12) {
      xs.push_back(std::log(radii[i]));
      ys.push_back(std::log(distances[i]));
    }
  }
  if (xs.size() < 5) {
    throw Error(
        ErrorKind::DegenerateFit,
        "distances below 1e-12 leave fewer than five usable radii; the field is homogeneous");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  RateEstimate out;
  out.radii = radii;
  out.distances = distances;
  out.gamma = sxy / sxx;
  const double intercept = my - out.gamma * mx;
  out.constant = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + out.gamma * xs[i]);
    ss += e * e;
  }
  out.residual = std::sqrt(ss / n);
  out.r_min = *std::min_element(radii.begin(), radii.end());
  out.r_max = *std::max_element(radii.begin(), radii.end());
  return out;
}

RateEstimate convergence_rate(const ScalarField& field, const BlowupSolution& u0,
                              const std::vector<double>& r_list) {
  std::vector<double> distances;
  for (double r : r_list) distances.push_back(l2_distance(rescale(field, r), u0));
  return fit_rate(r_list, distances);
}

std::vector<double> default_rate_radii(const GridSpec& grid) {
  const double lo = 8.0 * grid.h();
  const double hi = 0.25 * grid.L;
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "grid too coarse for [8h, L/4] radii");
  std::vector<double> out;
  for (int k = 0; k < 6; ++k) out.push_back(hi * std::pow(lo / hi, k / 5.0));
  return out;
}

}  // namespace dcone
