// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/cli/boundary.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <vector>

#include "dcone/analytic_solutions.hpp"
#include "dcone/classifier.hpp"
#include "dcone/error.hpp"
#include "dcone/io.hpp"

namespace dcone::cli {

namespace {

std::vector<std::string> tokens(const std::string& id) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(id);
  while (std::getline(in, tok, ':')) out.push_back(tok);
  return out;
}

double to_number(const std::string& s, const std::string& id) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "boundary id '" + id + "': '" + s + "' is not a number");
}

void require_canonical(const NormalizedPair& pair, const std::string& id) {
  if (!pair.is_canonical()) {
    throw Error(ErrorKind::InvalidArgument,
                "boundary id '" + id + "' needs the pair (-1, -1, 1, 1)");
  }
}

}  // namespace

BlowupSolution builtin_solution(const std::string& id, const NormalizedPair& pair) {
  const auto t = tokens(id);
  if (t.empty()) throw Error(ErrorKind::InvalidArgument, "empty boundary id");
  const std::string& head = t[0];
  if (head == "mu" && (t.size() == 3 || t.size() == 4)) {
    require_canonical(pair, id);
    const int arr = t.size() == 4 ? static_cast<int>(to_number(t[3], id)) : 0;
    return build_mu(to_number(t[1], id), to_number(t[2], id), arr);
  }
  if (head == "john" && t.size() == 1) {
    require_canonical(pair, id);
    return john_solution();
  }
  if (head == "dc" && t.size() == 2) {
    const auto all = enumerate_double_cones(pair);
    const double idx = to_number(t[1], id);
    if (idx < 0 || idx >= static_cast<double>(all.size()) || idx != std::floor(idx)) {
      throw Error(
          ErrorKind::InvalidArgument,
          "boundary id '" + id + "': only " + std::to_string(all.size()) + " double cones exist");
    }
    return all[static_cast<std::size_t>(idx)];
  }
  if (head == "hs" && t.size() == 3) {
    Obstacle which = Obstacle::Lower;
    if (t[1] == "upper") {
      which = Obstacle::Upper;
    } else if (t[1] != "lower") {
      throw Error(ErrorKind::Parse, "boundary id '" + id + "': expected lower or upper");
    }
    return build_halfspace_normal(pair, which, to_number(t[2], id));
  }
  if (head == "p1" && t.size() == 1) return make_polynomial(pair.lower(), PieceKind::Lower, "p1");
  if (head == "p2" && t.size() == 1) return make_polynomial(pair.upper(), PieceKind::Upper, "p2");
  if (head == "harmonic" && t.size() == 3) {
    const double a = to_number(t[1], id);
    const double b = to_number(t[2], id);
    return make_polynomial({a, b, -a}, PieceKind::Harmonic, id);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown boundary id '" + id + "'");
}

BoundaryData make_boundary(const std::string& id, const NormalizedPair& pair) {
  std::string base = id;
  double eps = 0.0;
  if (const auto pos = id.find("+cubic:"); pos != std::string::npos) {
    base = id.substr(0, pos);
    eps = to_number(id.substr(pos + 7), id);
  }
  BoundaryData raw;
  bool builtin = true;
  try {
    auto sol = std::make_shared<BlowupSolution>(builtin_solution(base, pair));
    raw = [sol](Vec2 x) { return sol->value(x); };
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidArgument || base.find(':') != std::string::npos ||
        base == "john") {
      throw;
    }
    builtin = false;
  }
  if (!builtin) {
    auto field = std::make_shared<ScalarField>(io::read_field_csv(base, pair.as_pair()));
    raw = [field](Vec2 x) { return field->interpolate(x); };
  }
  const QuadForm p1 = pair.lower();
  const QuadForm p2 = pair.upper();
  return [raw, eps, p1, p2](Vec2 x) {
    const double v = raw(x) + eps * (x.x * x.x * x.x - 3.0 * x.x * x.y * x.y);
    return std::clamp(v, p1(x), p2(x));
  };
}

}  // namespace dcone::cli
