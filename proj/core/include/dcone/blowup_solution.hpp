// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcone/geometry.hpp"

namespace dcone {

enum class Obstacle { Lower, Upper };
enum class Branch { Plus, Minus };

std::string_view to_string(Obstacle which) noexcept;

/// Harmonic form q = alpha x1^2 + 2 beta x1 x2 - alpha x2^2 touching p1 along
/// `lower_line` and p2 along `upper_line` (both unit direction vectors).
struct SectorSolution {
  double alpha = 0.0;
  double beta = 0.0;
  Vec2 lower_line{1.0, 0.0};
  Vec2 upper_line{0.0, 1.0};

  [[nodiscard]] QuadForm q() const { return {alpha, beta, -alpha}; }
  /// Slope of the lower contact line; +-inf when vertical.
  [[nodiscard]] double m() const;
  /// Slope of the upper contact line; +-inf when vertical.
  [[nodiscard]] double k() const;
};

enum class PieceKind { Lower, Upper, Harmonic };
std::string_view to_string(PieceKind kind) noexcept;

/// Angular sector [lo, hi) on which the solution is the quadratic `form`.
struct AngularPiece {
  double lo = 0.0;
  double hi = 0.0;
  PieceKind kind = PieceKind::Harmonic;
  QuadForm form;

  [[nodiscard]] double width() const { return hi - lo; }
};

enum class Family { Polynomial, Halfspace, DoubleCone };
std::string_view to_string(Family family) noexcept;

struct HalfspaceData {
  Obstacle which = Obstacle::Lower;
  /// Unit normal pointing into the half-plane where u is harmonic.
  Vec2 normal{0.0, 1.0};
  SectorSolution sector;
};

/// Ray along which a harmonic piece touches an obstacle without a sector of
/// coincidence.
struct ContactRay {
  double angle = 0.0;
  Obstacle obstacle = Obstacle::Upper;
};

/// Degree-two homogeneous global solution described by angular pieces.
/// Pieces run counterclockwise without gaps; pieces.front().lo lies in
/// [0, 2pi) and pieces.back().hi == pieces.front().lo + 2pi.
struct BlowupSolution {
  Family family = Family::Polynomial;
  std::vector<AngularPiece> pieces;
  std::optional<HalfspaceData> halfspace;
  std::vector<ContactRay> contact_rays;
  std::string label;

  /// Piece containing direction theta; a boundary ray belongs to the
  /// counterclockwise-next piece.
  [[nodiscard]] const AngularPiece& piece_at(double theta) const;
  [[nodiscard]] double value(Vec2 x) const;
  [[nodiscard]] Vec2 gradient(Vec2 x) const;
};

BlowupSolution make_polynomial(QuadForm form, PieceKind kind, std::string label = {});

/// Builds a piecewise solution from contiguous counterclockwise pieces with an
/// arbitrary starting angle. Throws InvalidArgument when the pieces do not
/// close up to a full turn.
BlowupSolution make_piecewise(Family family, std::vector<AngularPiece> pieces,
                              std::string label = {});

/// u'(x) = u(R(-angle) x).
BlowupSolution rotated(const BlowupSolution& solution, double angle);

/// Same pieces, endpoints and forms within tol.
bool same_solution(const BlowupSolution& a, const BlowupSolution& b, double tol = 1e-12);

}  // namespace dcone
