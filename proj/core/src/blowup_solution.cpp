// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/blowup_solution.hpp"

#include <cmath>
#include <limits>

#include "dcone/error.hpp"

namespace dcone {

namespace {

double slope(Vec2 d) {
  if (d.x == 0.0) {
    return d.y >= 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return d.y / d.x;
}

}  // namespace

std::string_view to_string(Obstacle which) noexcept {
  return which == Obstacle::Lower ? "lower" : "upper";
}

std::string_view to_string(PieceKind kind) noexcept {
  switch (kind) {
    case PieceKind::Lower: return "p1";
    case PieceKind::Upper: return "p2";
    case PieceKind::Harmonic: return "q";
  }
  return "?";
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Polynomial: return "polynomial";
    case Family::Halfspace: return "halfspace";
    case Family::DoubleCone: return "double-cone";
  }
  return "?";
}

double SectorSolution::m() const { return slope(lower_line); }
double SectorSolution::k() const { return slope(upper_line); }

const AngularPiece& BlowupSolution::piece_at(double theta) const {
  const double start = pieces.front().lo;
  const double t = wrap_angle(theta - start);
  for (const auto& piece : pieces) {
    if (t < piece.hi - start) return piece;
  }
  return pieces.back();
}

double BlowupSolution::value(Vec2 x) const {
  if (x.x == 0.0 && x.y == 0.0) return 0.0;
  return piece_at(angle_of(x)).form(x);
}

Vec2 BlowupSolution::gradient(Vec2 x) const {
  if (x.x == 0.0 && x.y == 0.0) return {0.0, 0.0};
  return piece_at(angle_of(x)).form.gradient(x);
}

BlowupSolution make_polynomial(QuadForm form, PieceKind kind, std::string label) {
  BlowupSolution out;
  out.family = Family::Polynomial;
  out.pieces.push_back({0.0, kTwoPi, kind, form});
  out.label = std::move(label);
  return out;
}

BlowupSolution make_piecewise(Family family, std::vector<AngularPiece> pieces, std::string label) {
  if (pieces.empty()) throw Error(ErrorKind::InvalidArgument, "solution needs at least one piece");
  const double shift = wrap_angle(pieces.front().lo) - pieces.front().lo;
  double cursor = pieces.front().lo;
  for (auto& piece : pieces) {
    if (std::abs(piece.lo - cursor) > 1e-12 || !(piece.hi > piece.lo)) {
      throw Error(ErrorKind::InvalidArgument, "pieces must be contiguous with positive width");
    }
    cursor = piece.hi;
    piece.lo += shift;
    piece.hi += shift;
  }
  if (std::abs(cursor - pieces.front().lo + shift - kTwoPi) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "pieces must cover exactly one full turn");
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) pieces[i].lo = pieces[i - 1].hi;
  pieces.back().hi = pieces.front().lo + kTwoPi;
  BlowupSolution out;
  out.family = family;
  out.pieces = std::move(pieces);
  out.label = std::move(label);
  return out;
}

BlowupSolution rotated(const BlowupSolution& solution, double angle) {
  std::vector<AngularPiece> pieces = solution.pieces;
  for (auto& piece : pieces) {
    piece.lo += angle;
    piece.hi += angle;
    piece.form = piece.form.rotated(-angle);
  }
  BlowupSolution out = solution.family == Family::Polynomial && pieces.size() == 1
                           ? make_polynomial(pieces.front().form, pieces.front().kind)
                           : make_piecewise(solution.family, std::move(pieces));
  out.family = solution.family;
  out.label = solution.label;
  if (solution.halfspace) {
    HalfspaceData hs = *solution.halfspace;
    hs.normal = rotate(hs.normal, angle);
    hs.sector.lower_line = rotate(hs.sector.lower_line, angle);
    hs.sector.upper_line = rotate(hs.sector.upper_line, angle);
    const QuadForm q = hs.sector.q().rotated(-angle);
    hs.sector.alpha = q.a;
    hs.sector.beta = q.b;
    out.halfspace = hs;
  }
  for (const auto& ray : solution.contact_rays) {
    out.contact_rays.push_back({wrap_angle(ray.angle + angle), ray.obstacle});
  }
  return out;
}

bool same_solution(const BlowupSolution& a, const BlowupSolution& b, double tol) {
  const std::size_t n = a.pieces.size();
  if (n != b.pieces.size()) return false;
  auto matches = [tol](const AngularPiece& pa, const AngularPiece& pb) {
    const double dlo = std::abs(std::remainder(pa.lo - pb.lo, kTwoPi));
    const double dhi = std::abs(std::remainder(pa.hi - pb.hi, kTwoPi));
    return pa.kind == pb.kind && dlo <= tol && dhi <= tol && pa.form.distance(pb.form) <= tol;
  };
  // Cyclic comparison: the first piece may start on either side of angle 0.
  for (std::size_t offset = 0; offset < n; ++offset) {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      all = matches(a.pieces[i], b.pieces[(i + offset) % n]);
    if (all) return true;
  }
  return false;
}

}  // namespace dcone
