// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dcone/error.hpp"

namespace dcone {

namespace {

// Larger of two null-vector candidates of a rank-one 2x2 form, normalized.
Vec2 null_direction(Vec2 first, Vec2 second) {
  const Vec2 d = norm(first) >= norm(second) ? first : second;
  const double len = norm(d);
  if (len == 0.0) return {1.0, 0.0};
  return d / len;
}

double beta_squared(const NormalizedPair& pair, double alpha, Obstacle reference) {
  const double b2 = reference == Obstacle::Lower ? -(alpha - pair.a1) * (alpha + pair.c1)
                                                 : -(alpha - pair.a2) * (alpha + pair.c2);
  return std::max(b2, 0.0);
}

// First ray of the line through the origin at `line_angle` strictly
// counterclockwise of `from`, unwrapped so that it exceeds `from`.
double next_ray(double from, double line_angle) {
  const double d1 = ccw_distance(from, line_angle);
  const double d2 = ccw_distance(from, line_angle + kPi);
  auto positive = [](double d) { return d > 1e-12 ? d : d + kTwoPi; };
  return from + std::min(positive(d1), positive(d2));
}

std::vector<SectorSolution> branches(const NormalizedPair& pair, double alpha) {
  std::vector<SectorSolution> out{sector_from_alpha(pair, alpha, Branch::Plus)};
  const SectorSolution minus = sector_from_alpha(pair, alpha, Branch::Minus);
  if (minus.beta != out.front().beta) out.push_back(minus);
  return out;
}

void assemble(const NormalizedPair& pair, const SectorSolution& from_lower,
              const SectorSolution& from_upper, std::vector<BlowupSolution>& out) {
  const double lower_b = wrap_angle(angle_of(from_lower.lower_line));
  const double lower_a = wrap_angle(angle_of(from_upper.upper_line));
  for (double start_b : {lower_b, lower_b + kPi}) {
    const double end_b = next_ray(start_b, angle_of(from_lower.upper_line));
    for (double start_a : {lower_a, lower_a + kPi}) {
      const double end_a = next_ray(start_a, angle_of(from_upper.lower_line));
      const double w_b = end_b - start_b;
      const double w_upper = ccw_distance(end_b, start_a);
      const double w_a = end_a - start_a;
      const double w_lower = ccw_distance(end_a, start_b);
      if (w_upper <= 1e-12 || w_lower <= 1e-12) continue;
      if (std::abs(w_b + w_upper + w_a + w_lower - kTwoPi) > 1e-9) continue;
      std::vector<AngularPiece> pieces;
      double cursor = start_b;
      pieces.push_back({cursor, cursor + w_b, PieceKind::Harmonic, from_lower.q()});
      cursor += w_b;
      pieces.push_back({cursor, cursor + w_upper, PieceKind::Upper, pair.upper()});
      cursor += w_upper;
      pieces.push_back({cursor, cursor + w_a, PieceKind::Harmonic, from_upper.q()});
      cursor += w_a;
      pieces.push_back({cursor, start_b + kTwoPi, PieceKind::Lower, pair.lower()});
      BlowupSolution sol = make_piecewise(Family::DoubleCone, std::move(pieces));
      bool duplicate = false;
      for (const auto& existing : out) duplicate = duplicate || same_solution(existing, sol);
      if (!duplicate) out.push_back(std::move(sol));
    }
  }
}

// Start of the upper coincidence cone, used for canonical ordering.
double upper_start(const BlowupSolution& sol) {
  for (const auto& piece : sol.pieces) {
    if (piece.kind == PieceKind::Upper) return wrap_angle(piece.lo);
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
  }
  return "?";
}

std::string_view to_string(Case3Sign sign) noexcept {
  switch (sign) {
    case Case3Sign::None: return "none";
    case Case3Sign::NonNegative: return "NonNegative";
    case Case3Sign::NonPositive: return "NonPositive";
  }
  return "?";
}

CaseLabel classify(const NormalizedPair& pair) {
  CaseLabel label;
  label.signature = signature(pair);
  const double A = label.signature.A;
  const double C = label.signature.C;
  label.a_zero = std::abs(A) <= kCaseTolerance;
  label.c_zero = std::abs(C) <= kCaseTolerance;
  if (label.a_zero && label.c_zero) {
    label.tag = CaseTag::Case1;
  } else if (!label.a_zero && !label.c_zero && A * C < 0.0) {
    label.tag = CaseTag::Case2;
  } else {
    label.tag = CaseTag::Case3;
    const bool nonneg = (label.a_zero || A > 0.0) && (label.c_zero || C > 0.0);
    label.sign = nonneg ? Case3Sign::NonNegative : Case3Sign::NonPositive;
  }
  return label;
}

AlphaWindow alpha_window(const NormalizedPair& pair) {
  return {std::max(pair.a1, -pair.c2), std::min(pair.a2, -pair.c1)};
}

AlphaSet double_cone_alphas(const NormalizedPair& pair) {
  const CaseLabel label = classify(pair);
  AlphaSet set;
  switch (label.tag) {
    case CaseTag::Case1:
      set.kind = AlphaSet::Kind::Interval;
      set.lo = pair.a1;
      set.hi = pair.a2;
      break;
    case CaseTag::Case2: {
      const double alpha =
          (pair.a2 * pair.c2 - pair.a1 * pair.c1) / (pair.c2 + pair.a1 - pair.a2 - pair.c1);
      set.kind = AlphaSet::Kind::Single;
      set.lo = set.hi = alpha;
      break;
    }
    case CaseTag::Case3:
      if (label.boundary()) {
        set.kind = AlphaSet::Kind::Single;
        set.lo = set.hi = label.a_zero ? pair.a1 : pair.a2;
        set.halfspace_only = true;
      }
      break;
  }
  return set;
}

SectorSolution sector_from_alpha(const NormalizedPair& pair, double alpha, Branch branch,
                                 Obstacle reference) {
  const AlphaWindow window = alpha_window(pair);
  if (!window.contains(alpha)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " outside [max(a1, -c2), min(a2, -c1)] = [" << window.lo << ", "
        << window.hi << "]";
    throw Error(ErrorKind::AlphaOutOfWindow, msg.str());
  }
  SectorSolution s;
  s.alpha = alpha;
  const double root = std::sqrt(beta_squared(pair, alpha, reference));
  s.beta = branch == Branch::Plus ? root : -root;
  // q - p1 has null vectors (alpha + c1, beta) and (beta, -(alpha - a1)).
  s.lower_line = null_direction({alpha + pair.c1, s.beta}, {s.beta, -(alpha - pair.a1)});
  // p2 - q has null vectors (c2 + alpha, beta) and (beta, a2 - alpha).
  s.upper_line = null_direction({pair.c2 + alpha, s.beta}, {s.beta, pair.a2 - alpha});
  return s;
}

OpeningAngle opening_angle(const NormalizedPair& pair) {
  const CaseLabel label = classify(pair);
  OpeningAngle out;
  if (label.tag == CaseTag::Case1) {
    out.acute = out.supplement = kPi / 2.0;
    out.cos_squared = 0.0;
    return out;
  }
  if (label.tag == CaseTag::Case3) {
    throw Error(ErrorKind::NoDoubleCones, "opening angle is defined only when double cones exist");
  }
  out.cos_squared =
      (pair.a1 + pair.c2) * (pair.a2 + pair.c1) / ((pair.a1 + pair.c1) * (pair.a2 + pair.c2));
  out.acute = std::acos(std::sqrt(std::clamp(out.cos_squared, 0.0, 1.0)));
  out.supplement = kPi - out.acute;
  return out;
}

std::vector<BlowupSolution> enumerate_double_cones(const NormalizedPair& pair, double alpha1,
                                                   double alpha2) {
  const CaseLabel label = classify(pair);
  if (label.tag == CaseTag::Case3) {
    throw Error(ErrorKind::NoDoubleCones, "the signature polynomial has a sign");
  }
  if (label.tag == CaseTag::Case2) {
    alpha1 = alpha2 = double_cone_alphas(pair).lo;
  } else {
    for (double alpha : {alpha1, alpha2}) {
      if (!(alpha >= pair.a1 - kCaseTolerance && alpha <= pair.a2 + kCaseTolerance)) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << " outside [a1, a2] = [" << pair.a1 << ", " << pair.a2 << "]";
        throw Error(ErrorKind::AlphaOutOfWindow, msg.str());
      }
    }
  }
  std::vector<BlowupSolution> out;
  for (const auto& from_lower : branches(pair, alpha2)) {
    for (const auto& from_upper : branches(pair, alpha1)) {
      assemble(pair, from_lower, from_upper, out);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const BlowupSolution& x, const BlowupSolution& y) {
    const double sx = upper_start(x);
    const double sy = upper_start(y);
    if (std::abs(sx - sy) > 1e-12) return sx < sy;
    return x.pieces.front().form.b < y.pieces.front().form.b;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = "double-cone-" + std::to_string(i);
  return out;
}

std::vector<BlowupSolution> enumerate_double_cones(const NormalizedPair& pair) {
  const AlphaSet set = double_cone_alphas(pair);
  const double alpha = set.empty() ? 0.0 : set.lo;
  return enumerate_double_cones(pair, alpha, alpha);
}

double halfspace_delta(const NormalizedPair& pair, Obstacle which, double alpha) {
  const double d1 =
      pair.a1 * pair.c1 - pair.a2 * pair.c2 + alpha * (pair.a1 - pair.c1 - pair.a2 + pair.c2);
  return which == Obstacle::Lower ? d1 : -d1;
}

HalfspaceAdmissibility halfspace_admissible(const NormalizedPair& pair, Obstacle which,
                                            double alpha) {
  HalfspaceAdmissibility out;
  out.which = which;
  out.alpha = alpha;
  out.window = alpha_window(pair);
  out.in_window = out.window.contains(alpha);
  out.delta = halfspace_delta(pair, which, alpha);
  out.admissible = out.in_window && out.delta <= kDeltaTolerance;
  if (out.in_window) {
    const SectorSolution s = sector_from_alpha(pair, alpha, Branch::Plus, which);
    out.beta = s.beta;
    out.slope = which == Obstacle::Lower ? s.m() : s.k();
  }
  return out;
}

DirectionBound halfspace_direction_bounds(const NormalizedPair& pair, Obstacle which) {
  const CaseLabel label = classify(pair);
  DirectionBound out;
  out.which = which;
  switch (label.tag) {
    case CaseTag::Case1: out.kind = DirectionBound::Kind::AllDirections; break;
    case CaseTag::Case2: {
      const double A = label.signature.A;
      const double C = label.signature.C;
      const double lower = -(pair.a2 - pair.a1) * A / ((pair.c2 - pair.c1) * C);
      const double upper = -(pair.a2 - pair.a1) * C / ((pair.c2 - pair.c1) * A);
      out.kind = DirectionBound::Kind::ConeBound;
      out.bound = std::sqrt(which == Obstacle::Lower ? lower : upper);
      // Admissible lines lie on the side of the bounding slope facing the
      // x1-axis exactly when a1 + c2 > 0.
      out.at_most = A > 0.0;
      break;
    }
    case CaseTag::Case3: {
      const bool lower_favored = label.sign == Case3Sign::NonNegative;
      const bool favored = (which == Obstacle::Lower) == lower_favored;
      if (favored) {
        out.kind = DirectionBound::Kind::AllDirections;
      } else {
        out.kind = DirectionBound::Kind::Count;
        out.count = label.boundary() ? 2 : 0;
      }
      break;
    }
  }
  return out;
}

}  // namespace dcone
