// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dcone/classifier.hpp"
#include "dcone/error.hpp"

namespace dcone::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string_view to_string(AlphaSet::Kind kind) {
  switch (kind) {
    case AlphaSet::Kind::Interval: return "interval";
    case AlphaSet::Kind::Single: return "single";
    case AlphaSet::Kind::Empty: return "empty";
  }
  return "empty";
}

json bound_json(const DirectionBound& b) {
  json j;
  switch (b.kind) {
    case DirectionBound::Kind::AllDirections: j["kind"] = "all_directions"; break;
    case DirectionBound::Kind::ConeBound:
      j["kind"] = "cone_bound";
      j["bound"] = finite_or_null(b.bound);
      j["at_most"] = b.at_most;
      break;
    case DirectionBound::Kind::Count:
      j["kind"] = "count";
      j["count"] = b.count;
      break;
  }
  return j;
}

PieceKind piece_kind_from(const std::string& s) {
  if (s == "p1") return PieceKind::Lower;
  if (s == "p2") return PieceKind::Upper;
  if (s == "q") return PieceKind::Harmonic;
  throw Error(ErrorKind::Parse, "unknown piece kind '" + s + "'");
}

Family family_from(const std::string& s) {
  if (s == "polynomial") return Family::Polynomial;
  if (s == "halfspace") return Family::Halfspace;
  if (s == "double-cone") return Family::DoubleCone;
  throw Error(ErrorKind::Parse, "unknown family '" + s + "'");
}

Obstacle obstacle_from(const std::string& s) {
  if (s == "lower") return Obstacle::Lower;
  if (s == "upper") return Obstacle::Upper;
  throw Error(ErrorKind::Parse, "unknown obstacle '" + s + "'");
}

double number(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::Parse, std::string("missing key '") + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw Error(ErrorKind::Parse, std::string("key '") + key + "' is not a number");
  }
  return j.at(key).get<double>();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse,
                "line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general);
  return std::string(buf, res.ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const ObstaclePair& p) {
  return json{{"a1", p.a1}, {"b1", p.b1}, {"c1", p.c1}, {"a2", p.a2}, {"b2", p.b2}, {"c2", p.c2}};
}

ObstaclePair pair_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "pair must be a JSON object");
  ObstaclePair p;
  p.a1 = number(j, "a1");
  p.b1 = number(j, "b1", 0.0);
  p.c1 = number(j, "c1");
  p.a2 = number(j, "a2");
  p.b2 = number(j, "b2", 0.0);
  p.c2 = number(j, "c2");
  return p;
}

ObstaclePair read_pair(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  return pair_from_json(j);
}

json to_json(const TransformRecord& r) {
  return json{{"rotation", r.rotation},
              {"harmonic", json::array({r.harmonic_a, r.harmonic_b})},
              {"scale", r.scale}};
}

TransformRecord record_from_json(const json& j) {
  TransformRecord r;
  r.rotation = number(j, "rotation");
  r.scale = number(j, "scale");
  const json& h = j.at("harmonic");
  if (!h.is_array() || h.size() != 2) {
    throw Error(ErrorKind::Parse, "'harmonic' must be a two-element array");
  }
  r.harmonic_a = h[0].get<double>();
  r.harmonic_b = h[1].get<double>();
  return r;
}

json to_json(const BlowupSolution& s) {
  json pieces = json::array();
  for (const AngularPiece& p : s.pieces) {
    pieces.push_back({{"lo", p.lo},
                      {"hi", p.hi},
                      {"kind", std::string(to_string(p.kind))},
                      {"form", json::array({p.form.a, p.form.b, p.form.c})}});
  }
  json j{{"family", std::string(to_string(s.family))}, {"label", s.label}, {"pieces", pieces}};
  if (s.halfspace) {
    const HalfspaceData& h = *s.halfspace;
    j["halfspace"] = {{"obstacle", std::string(to_string(h.which))},
                      {"normal", json::array({h.normal.x, h.normal.y})},
                      {"alpha", h.sector.alpha},
                      {"beta", h.sector.beta}};
  }
  if (!s.contact_rays.empty()) {
    json rays = json::array();
    for (const ContactRay& r : s.contact_rays) {
      rays.push_back({{"angle", r.angle}, {"obstacle", std::string(to_string(r.obstacle))}});
    }
    j["contact_rays"] = rays;
  }
  return j;
}

BlowupSolution solution_from_json(const json& j) {
  try {
    std::vector<AngularPiece> pieces;
    for (const json& p : j.at("pieces")) {
      const json& f = p.at("form");
      pieces.push_back(
          {p.at("lo").get<double>(), p.at("hi").get<double>(),
           piece_kind_from(p.at("kind").get<std::string>()),
           QuadForm{f.at(0).get<double>(), f.at(1).get<double>(), f.at(2).get<double>()}});
    }
    const Family family = family_from(j.at("family").get<std::string>());
    BlowupSolution s = pieces.size() == 1 ? make_polynomial(pieces[0].form, pieces[0].kind)
                                          : make_piecewise(family, std::move(pieces));
    s.family = family;
    s.label = j.value("label", std::string{});
    if (j.contains("halfspace")) {
      const json& h = j.at("halfspace");
      HalfspaceData data;
      data.which = obstacle_from(h.at("obstacle").get<std::string>());
      data.normal = {h.at("normal").at(0).get<double>(), h.at("normal").at(1).get<double>()};
      data.sector.alpha = h.at("alpha").get<double>();
      data.sector.beta = h.at("beta").get<double>();
      s.halfspace = data;
    }
    if (j.contains("contact_rays")) {
      for (const json& r : j.at("contact_rays")) {
        s.contact_rays.push_back(
            {r.at("angle").get<double>(), obstacle_from(r.at("obstacle").get<std::string>())});
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("solution: ") + e.what());
  }
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", finite_or_null(c.value)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  return json{{"pass", report.pass()}, {"checks", checks}};
}

json to_json(const SolverMetadata& m) {
  json j{{"iterations", m.iterations},
         {"residual", m.residual},
         {"converged", m.converged},
         {"tolerance", m.tolerance},
         {"omega", m.omega}};
  if (!m.residual_history.empty()) j["residual_history"] = m.residual_history;
  return j;
}

json classify_report(const ObstaclePair& pair) {
  const Normalization norm = normalize(validate(pair));
  const NormalizedPair& np = norm.pair;
  const CaseLabel label = classify(np);
  const AlphaSet alphas = double_cone_alphas(np);
  json j;
  j["pair"] = to_json(pair);
  j["normalized"] = to_json(np.as_pair());
  j["transform"] = to_json(norm.record);
  j["case"] = std::string(to_string(label.tag));
  j["sign"] = std::string(to_string(label.sign));
  j["signature"] = {{"A", label.signature.A}, {"C", label.signature.C}};
  j["alphas"] = {{"kind", std::string(to_string(alphas.kind))},
                 {"lo", alphas.lo},
                 {"hi", alphas.hi},
                 {"halfspace_only", alphas.halfspace_only}};
  if (label.tag == CaseTag::Case2) {
    const OpeningAngle a = opening_angle(np);
    j["opening_angle"] = {
        {"acute", a.acute}, {"supplement", a.supplement}, {"cos_squared", a.cos_squared}};
  } else {
    j["opening_angle"] = nullptr;
  }
  if (label.tag == CaseTag::Case1) {
    j["double_cone_count"] = "infinite";
  } else if (label.tag == CaseTag::Case2) {
    j["double_cone_count"] = enumerate_double_cones(np).size();
  } else {
    j["double_cone_count"] = 0;
  }
  j["halfspace"] = {{"lower", bound_json(halfspace_direction_bounds(np, Obstacle::Lower))},
                    {"upper", bound_json(halfspace_direction_bounds(np, Obstacle::Upper))}};
  return j;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
  std::string out = "x1,x2,u,psi1,psi2,lower,upper\n";
  const GridSpec& g = f.grid;
  out.reserve(g.size() * 96);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t k = g.index(i, j);
      const Vec2 x = g.node(i, j);
      out += format_double(x.x) + ',' + format_double(x.y) + ',' + format_double(f.u[k]) + ',' +
             format_double(f.psi1[k]) + ',' + format_double(f.psi2[k]) + ',' +
             (f.lower[k] ? '1' : '0') + ',' + (f.upper[k] ? '1' : '0') + '\n';
    }
  }
  write_text(path, out);
}

ScalarField read_field_csv(const std::filesystem::path& path,
                           const std::optional<ObstaclePair>& pair) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x1,x2,u,psi1,psi2,lower,upper") {
    throw Error(ErrorKind::Parse, path.string() + ": unexpected header '" + line + "'");
  }
  std::vector<std::array<double, 7>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 7) {
      throw Error(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " columns");
    }
    std::array<double, 7> row{};
    for (int c = 0; c < 7; ++c) row[c] = parse_double(cells[c], line_no);
    rows.push_back(row);
  }
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (n < 2 || static_cast<std::size_t>(n) * n != rows.size()) {
    throw Error(ErrorKind::Parse, path.string() + ": row count is not a square grid");
  }
  ScalarField f;
  f.grid = validate(GridSpec{-rows.front()[0], n});
  const GridSpec& g = f.grid;
  f.u.resize(g.size());
  f.psi1.resize(g.size());
  f.psi2.resize(g.size());
  f.lower.resize(g.size());
  f.upper.resize(g.size());
  const double tol = 1e-9 * g.L;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t k = g.index(i, j);
      const auto& r = rows[k];
      const Vec2 x = g.node(i, j);
      if (std::abs(r[0] - x.x) > tol || std::abs(r[1] - x.y) > tol) {
        throw Error(ErrorKind::Parse,
                    path.string() + ": row " + std::to_string(k + 2) + " is off the grid");
      }
      f.u[k] = r[2];
      f.psi1[k] = r[3];
      f.psi2[k] = r[4];
      f.lower[k] = r[5] != 0.0;
      f.upper[k] = r[6] != 0.0;
    }
  }
  if (pair) {
    f.lambda1 = pair->lambda1();
    f.lambda2 = pair->lambda2();
  } else {
    const int c = g.center();
    const double h2 = g.h() * g.h();
    auto lap = [&](const std::vector<double>& v) {
      return (v[g.index(c + 1, c)] + v[g.index(c - 1, c)] + v[g.index(c, c + 1)] +
              v[g.index(c, c - 1)] - 4.0 * v[g.index(c, c)]) /
             h2;
    };
    f.lambda1 = lap(f.psi1);
    f.lambda2 = lap(f.psi2);
  }
  return f;
}

void write_polyline_csv(const std::filesystem::path& path, const std::vector<Vec2>& points) {
  std::string out = "x1,x2\n";
  for (const Vec2& p : points) out += format_double(p.x) + ',' + format_double(p.y) + '\n';
  write_text(path, out);
}

void write_trace_csv(const std::filesystem::path& path, const WeissTrace& trace) {
  std::string out = "r,W,dW\n";
  for (std::size_t i = 0; i < trace.r.size(); ++i) {
    out += format_double(trace.r[i]) + ',' + format_double(trace.w[i]) + ',';
    if (i + 1 < trace.r.size()) out += format_double(trace.w[i] - trace.w[i + 1]);
    out += '\n';
  }
  write_text(path, out);
}

}  // namespace dcone::io
