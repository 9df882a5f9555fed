// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/analytic_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dcone/error.hpp"

namespace dcone {

namespace {

double form_scale(const ObstaclePair& pair) {
  return std::max({1.0, std::abs(pair.a1), std::abs(pair.b1), std::abs(pair.c1), std::abs(pair.a2),
                   std::abs(pair.b2), std::abs(pair.c2)});
}

bool is_psd(QuadForm f, double tol) { return f.a >= -tol && f.c >= -tol && f.det() >= -tol; }

// Null direction of a rank-one form, or nullopt when the form is definite.
std::optional<Vec2> rank_one_null(QuadForm f, double tol) {
  if (std::abs(f.det()) > tol) return std::nullopt;
  const Vec2 u{f.b, -f.a};
  const Vec2 v{f.c, -f.b};
  const Vec2 d = norm(u) >= norm(v) ? u : v;
  if (norm(d) == 0.0) return std::nullopt;
  return normalized(d);
}

BlowupSolution assemble_halfspace(const NormalizedPair& pair, Obstacle which, QuadForm q, Vec2 e,
                                  SectorSolution sector) {
  const double normal_angle = angle_of(e);
  const PieceKind obstacle_kind = which == Obstacle::Lower ? PieceKind::Lower : PieceKind::Upper;
  const QuadForm obstacle = which == Obstacle::Lower ? pair.lower() : pair.upper();
  std::vector<AngularPiece> pieces{
      {normal_angle - kPi / 2.0, normal_angle + kPi / 2.0, PieceKind::Harmonic, q},
      {normal_angle + kPi / 2.0, normal_angle + 3.0 * kPi / 2.0, obstacle_kind, obstacle}};
  BlowupSolution out = make_piecewise(Family::Halfspace, std::move(pieces));
  out.halfspace = HalfspaceData{which, e, sector};
  // Rays inside the harmonic half-plane where q touches the other obstacle.
  const QuadForm gap = which == Obstacle::Lower ? pair.upper() - q : q - pair.lower();
  const Obstacle other = which == Obstacle::Lower ? Obstacle::Upper : Obstacle::Lower;
  const double tol = 1e-12 * form_scale(pair.as_pair()) * form_scale(pair.as_pair());
  if (auto v = rank_one_null(gap, tol)) {
    const double side = dot(*v, e);
    if (side > 1e-12) {
      out.contact_rays.push_back({wrap_angle(angle_of(*v)), other});
    } else if (side < -1e-12) {
      out.contact_rays.push_back({wrap_angle(angle_of(-*v)), other});
    } else {
      out.contact_rays.push_back({wrap_angle(angle_of(*v)), other});
      out.contact_rays.push_back({wrap_angle(angle_of(-*v)), other});
    }
  }
  std::ostringstream label;
  label << "halfspace-" << to_string(which);
  out.label = label.str();
  return out;
}

QuadForm halfspace_form(const NormalizedPair& pair, Obstacle which, Vec2 e) {
  if (which == Obstacle::Lower) {
    const double s = -(pair.a1 + pair.c1);
    const double a = pair.a1 + s * e.x * e.x;
    return {a, s * e.x * e.y, -a};
  }
  const double s = pair.a2 + pair.c2;
  const double a = pair.a2 - s * e.x * e.x;
  return {a, -s * e.x * e.y, -a};
}

}  // namespace

Evaluation eval(const BlowupSolution& solution, Vec2 x) {
  return {solution.value(x), solution.gradient(x)};
}

BlowupSolution build_mu(double phi1, double phi2, int arrangement) {
  if (!(phi1 > 0.0 && phi1 < kPi) || !(phi2 > 0.0 && phi2 < kPi)) {
    std::ostringstream msg;
    msg << "phi1 = " << phi1 << ", phi2 = " << phi2 << " must lie in (0, pi)";
    throw Error(ErrorKind::AngleOutOfRange, msg.str());
  }
  if (arrangement < 0 || arrangement > 3) {
    throw Error(ErrorKind::InvalidArgument, "arrangement must be in 0..3");
  }
  const QuadForm upper{1.0, 0.0, 1.0};
  const QuadForm lower{-1.0, 0.0, -1.0};
  // r^2 cos(2 theta - phi) = cos(phi)(x1^2 - x2^2) + sin(phi) 2 x1 x2.
  const QuadForm q1{std::cos(phi1), std::sin(phi1), -std::cos(phi1)};
  const QuadForm q2{std::cos(phi2), -std::sin(phi2), -std::cos(phi2)};
  const double t0 = -0.5 * phi2;
  const double t1 = 0.5 * phi1;
  const double t2 = t1 + kPi / 2.0;
  const double t3 = kTwoPi - kPi / 2.0 - 0.5 * phi2;
  std::vector<AngularPiece> pieces{{t0, t1, PieceKind::Upper, upper},
                                   {t1, t2, PieceKind::Harmonic, q1},
                                   {t2, t3, PieceKind::Lower, lower},
                                   {t3, t0 + kTwoPi, PieceKind::Harmonic, q2}};
  BlowupSolution out = make_piecewise(Family::DoubleCone, std::move(pieces));
  if (arrangement != 0) out = rotated(out, arrangement * kPi / 2.0);
  std::ostringstream label;
  label << "mu(" << phi1 << "," << phi2 << ")#" << arrangement;
  out.label = label.str();
  return out;
}

BlowupSolution john_solution() {
  const QuadForm upper{1.0, 0.0, 1.0};
  const QuadForm lower{-1.0, 0.0, -1.0};
  std::vector<AngularPiece> pieces{{0.0, kPi / 2.0, PieceKind::Upper, upper},
                                   {kPi / 2.0, kPi, PieceKind::Harmonic, {-1.0, 0.0, 1.0}},
                                   {kPi, 1.5 * kPi, PieceKind::Lower, lower},
                                   {1.5 * kPi, kTwoPi, PieceKind::Harmonic, {1.0, 0.0, -1.0}}};
  return make_piecewise(Family::DoubleCone, std::move(pieces), "sgn-squares");
}

BlowupSolution build_halfspace(const NormalizedPair& pair, Obstacle which, double alpha,
                               Branch branch, HalfspaceSide side) {
  const HalfspaceAdmissibility adm = halfspace_admissible(pair, which, alpha);
  if (!adm.admissible) {
    std::ostringstream msg;
    msg << to_string(which) << " halfspace with alpha = " << alpha
        << " is not admissible (delta = " << adm.delta << ", window [" << adm.window.lo << ", "
        << adm.window.hi << "])";
    throw Error(ErrorKind::Inadmissible, msg.str());
  }
  const SectorSolution sector = sector_from_alpha(pair, alpha, branch, which);
  const Vec2 line = which == Obstacle::Lower ? sector.lower_line : sector.upper_line;
  Vec2 n = perp(line);
  if (n.y < 0.0 || (n.y == 0.0 && n.x > 0.0)) n = -n;
  const Vec2 e = side == HalfspaceSide::Above ? n : -n;
  return assemble_halfspace(pair, which, sector.q(), e, sector);
}

bool halfspace_normal_admissible(const NormalizedPair& pair, Obstacle which, double normal_angle) {
  const QuadForm q = halfspace_form(pair, which, unit(normal_angle));
  return halfspace_admissible(pair, which, q.a).admissible;
}

BlowupSolution build_halfspace_normal(const NormalizedPair& pair, Obstacle which,
                                      double normal_angle) {
  const Vec2 e = unit(normal_angle);
  const QuadForm q = halfspace_form(pair, which, e);
  const HalfspaceAdmissibility adm = halfspace_admissible(pair, which, q.a);
  if (!adm.admissible) {
    std::ostringstream msg;
    msg << to_string(which) << " halfspace with normal angle " << normal_angle
        << " is not admissible (alpha = " << q.a << ", delta = " << adm.delta << ")";
    throw Error(ErrorKind::Inadmissible, msg.str());
  }
  SectorSolution sector;
  sector.alpha = q.a;
  sector.beta = q.b;
  const Vec2 line = perp(e);
  const QuadForm other_gap = which == Obstacle::Lower ? pair.upper() - q : q - pair.lower();
  const Vec2 other = rank_one_null(other_gap, 1e-12).value_or(line);
  sector.lower_line = which == Obstacle::Lower ? line : other;
  sector.upper_line = which == Obstacle::Lower ? other : line;
  return assemble_halfspace(pair, which, q, e, sector);
}

BlowupSolution build_polynomial(const NormalizedPair& pair, QuadForm q) {
  const double tol = 1e-12 * form_scale(pair.as_pair());
  if (q.distance(pair.lower()) <= tol) return make_polynomial(pair.lower(), PieceKind::Lower, "p1");
  if (q.distance(pair.upper()) <= tol) return make_polynomial(pair.upper(), PieceKind::Upper, "p2");
  if (std::abs(q.trace()) > tol) {
    throw Error(ErrorKind::Inadmissible,
                "polynomial solution must be harmonic unless it equals an obstacle");
  }
  q.c = -q.a;
  if (!is_psd(q - pair.lower(), tol) || !is_psd(pair.upper() - q, tol)) {
    throw Error(ErrorKind::Inadmissible, "harmonic polynomial must lie between the obstacles");
  }
  return make_polynomial(q, PieceKind::Harmonic, "harmonic");
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double VerificationReport::metric(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void VerificationReport::add(std::string name, double value, double tolerance) {
  checks.push_back({std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance});
}

VerificationReport verify_solution(const BlowupSolution& solution, const ObstaclePair& pair,
                                   const SamplerConfig& config) {
  VerificationReport report;
  const double scale = form_scale(pair);
  const QuadForm p1 = pair.lower();
  const QuadForm p2 = pair.upper();

  double partition = 0.0;
  for (std::size_t i = 1; i < solution.pieces.size(); ++i) {
    partition = std::max(partition, std::abs(solution.pieces[i].lo - solution.pieces[i - 1].hi));
  }
  partition = std::max(partition,
                       std::abs(solution.pieces.back().hi - solution.pieces.front().lo - kTwoPi));
  for (const auto& piece : solution.pieces) {
    if (!(piece.hi > piece.lo)) partition = std::numeric_limits<double>::infinity();
  }
  report.add("partition", partition, 1e-12);

  double harmonic = 0.0;
  double complementarity = 0.0;
  for (const auto& piece : solution.pieces) {
    switch (piece.kind) {
      case PieceKind::Harmonic:
        harmonic = std::max(harmonic, std::abs(piece.form.laplacian()));
        break;
      case PieceKind::Lower:
        complementarity = std::max(complementarity, piece.form.distance(p1));
        break;
      case PieceKind::Upper:
        complementarity = std::max(complementarity, piece.form.distance(p2));
        break;
    }
  }
  report.add("harmonicity", harmonic, 0.0);
  report.add("complementarity", complementarity, 1e-12 * scale);

  double c1 = 0.0;
  const std::size_t n = solution.pieces.size();
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const AngularPiece& left = solution.pieces[i];
      const AngularPiece& right = solution.pieces[(i + 1) % n];
      const Vec2 x = unit(left.hi);
      c1 = std::max(c1, std::abs(left.form(x) - right.form(x)));
      c1 = std::max(c1, norm(left.form.gradient(x) - right.form.gradient(x)));
    }
  }
  report.add("c1_matching", c1, config.tolerance * scale);

  double ordering = 0.0;
  auto check_point = [&](Vec2 x) {
    const double u = solution.value(x);
    ordering = std::max({ordering, p1(x) - u, u - p2(x)});
  };
  for (int j = 0; j < config.n_angles; ++j) check_point(unit(kTwoPi * (j + 0.5) / config.n_angles));
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int j = 0; j < config.n_random; ++j) {
    const double r = std::sqrt(uniform(rng));
    check_point(unit(kTwoPi * uniform(rng)) * r);
  }
  report.add("ordering", ordering, config.tolerance * scale);

  if (solution.halfspace) {
    const HalfspaceData& hs = *solution.halfspace;
    const double s = hs.which == Obstacle::Lower ? -0.5 * pair.lambda1() : 0.5 * pair.lambda2();
    double identity = 0.0;
    std::mt19937_64 rng2(config.seed + 1);
    for (int j = 0; j < std::max(config.n_random, 100); ++j) {
      const Vec2 x = unit(kTwoPi * uniform(rng2)) * std::sqrt(uniform(rng2));
      const double proj = std::max(dot(x, hs.normal), 0.0);
      const double expected =
          hs.which == Obstacle::Lower ? p1(x) + s * proj * proj : p2(x) - s * proj * proj;
      identity = std::max(identity, std::abs(solution.value(x) - expected));
    }
    report.add("halfspace_identity", identity, config.tolerance * scale);
  }
  return report;
}

VerificationReport verify_solution(const BlowupSolution& solution, const NormalizedPair& pair,
                                   const SamplerConfig& config) {
  return verify_solution(solution, pair.as_pair(), config);
}

double weiss_of_blowup(const BlowupSolution& solution, const ObstaclePair& pair) {
  // Each coincidence sector contributes lambda_i * (int_0^1 r^3 dr) * arc integral.
  double w = 0.0;
  for (const auto& piece : solution.pieces) {
    if (piece.kind == PieceKind::Lower) {
      w += pair.lambda1() * 0.25 * pair.lower().arc_integral(piece.lo, piece.hi);
    } else if (piece.kind == PieceKind::Upper) {
      w += pair.lambda2() * 0.25 * pair.upper().arc_integral(piece.lo, piece.hi);
    }
  }
  return w;
}

double weiss_of_blowup(const BlowupSolution& solution, const NormalizedPair& pair) {
  return weiss_of_blowup(solution, pair.as_pair());
}

}  // namespace dcone
