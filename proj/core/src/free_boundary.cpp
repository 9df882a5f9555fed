// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "dcone/classifier.hpp"
#include "dcone/error.hpp"

namespace dcone {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct LineFit {
  Vec2 direction;
  double residual = 0.0;
  int count = 0;
};

LineFit total_least_squares(const std::vector<Vec2>& pts) {
  LineFit fit;
  fit.count = static_cast<int>(pts.size());
  Vec2 c{0.0, 0.0};
  for (const Vec2& p : pts) c = c + p;
  c = c / static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Vec2& p : pts) {
    const Vec2 d = p - c;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  Vec2 dir = unit(0.5 * std::atan2(2.0 * sxy, sxx - syy));
  if (dot(dir, c) < 0.0) dir = -dir;
  double ss = 0.0;
  const Vec2 normal = perp(dir);
  for (const Vec2& p : pts) ss += dot(p - c, normal) * dot(p - c, normal);
  fit.direction = dir;
  fit.residual = std::sqrt(ss / static_cast<double>(pts.size()));
  return fit;
}

bool noncoincident_sector(const ScalarField& field, double from, double width) {
  const GridSpec& g = field.grid;
  const double h = g.h();
  int free = 0;
  int total = 0;
  for (double frac : {0.25, 0.5, 0.75}) {
    const Vec2 e = unit(from + frac * width);
    for (double rho = 8.0 * h; rho <= 0.2 * g.L; rho += 2.0 * h) {
      const Vec2 x = e * rho;
      const int i = static_cast<int>(std::lround((x.x + g.L) / h));
      const int j = static_cast<int>(std::lround((x.y + g.L) / h));
      if (i < 0 || j < 0 || i >= g.n || j >= g.n) continue;
      const std::size_t k = g.index(i, j);
      ++total;
      if (!field.lower[k] && !field.upper[k]) ++free;
    }
  }
  return total > 0 && 2 * free > total;
}

}  // namespace

const CurveBranch* FreeBoundaryCurves::gamma(Obstacle which, Branch branch) const {
  const auto& list = which == Obstacle::Lower ? lower : upper;
  const auto& index = which == Obstacle::Lower
                          ? (branch == Branch::Plus ? lower_plus : lower_minus)
                          : (branch == Branch::Plus ? upper_plus : upper_minus);
  return index ? &list[*index] : nullptr;
}

std::vector<CurveBranch> extract_branches(const ScalarField& field, Obstacle which) {
  const GridSpec& g = field.grid;
  const int n = g.n;
  const double h = g.h();
  const double level = h * h;
  std::vector<double> gap(g.size());
  for (std::size_t k = 0; k < gap.size(); ++k) {
    gap[k] = (which == Obstacle::Lower ? field.u[k] - field.psi1[k] : field.psi2[k] - field.u[k]) -
             level;
  }

  // Crossing points live on grid edges: 2k for the edge (i,j)-(i+1,j) and
  // 2k+1 for (i,j)-(i,j+1).
  std::unordered_map<std::size_t, Vec2> crossing;
  auto edge_point = [&](std::size_t id) -> std::size_t {
    if (crossing.count(id) == 0) {
      const std::size_t k = id / 2;
      const int i = static_cast<int>(k % n);
      const int j = static_cast<int>(k / n);
      const std::size_t k2 = (id % 2 == 0) ? k + 1 : k + n;
      const double t = gap[k] / (gap[k] - gap[k2]);
      const Vec2 a = g.node(i, j);
      const Vec2 b = (id % 2 == 0) ? g.node(i + 1, j) : g.node(i, j + 1);
      crossing.emplace(id, a + (b - a) * t);
    }
    return id;
  };
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  for (int j = 0; j < n - 1; ++j) {
    for (int i = 0; i < n - 1; ++i) {
      const std::size_t k0 = g.index(i, j), k1 = k0 + 1, k3 = k0 + n, k2 = k3 + 1;
      const bool in0 = gap[k0] < 0.0, in1 = gap[k1] < 0.0, in2 = gap[k2] < 0.0, in3 = gap[k3] < 0.0;
      const std::size_t e0 = 2 * k0, e1 = 2 * k1 + 1, e2 = 2 * k3, e3 = 2 * k0 + 1;
      std::vector<std::size_t> cut;
      if (in0 != in1) cut.push_back(edge_point(e0));
      if (in1 != in2) cut.push_back(edge_point(e1));
      if (in3 != in2) cut.push_back(edge_point(e2));
      if (in0 != in3) cut.push_back(edge_point(e3));
      if (cut.size() == 2) {
        segments.emplace_back(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const bool center_in = 0.25 * (gap[k0] + gap[k1] + gap[k2] + gap[k3]) < 0.0;
        if (center_in == in0) {
          segments.emplace_back(e0, e1);
          segments.emplace_back(e2, e3);
        } else {
          segments.emplace_back(e3, e0);
          segments.emplace_back(e1, e2);
        }
      }
    }
  }

  std::vector<std::size_t> ids;
  ids.reserve(crossing.size());
  for (const auto& [id, p] : crossing) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t s = 0; s < ids.size(); ++s) slot[ids[s]] = s;
  DisjointSets sets(ids.size());
  for (const auto& [a, b] : segments) sets.unite(slot[a], slot[b]);
  std::unordered_map<std::size_t, std::vector<Vec2>> components;
  for (std::size_t s = 0; s < ids.size(); ++s) components[sets.find(s)].push_back(crossing[ids[s]]);
  std::vector<std::size_t> roots;
  for (const auto& [root, pts] : components) roots.push_back(root);
  std::sort(roots.begin(), roots.end());

  const double near = 4.0 * h;
  constexpr double kGap = 0.2;
  std::vector<CurveBranch> branches;
  for (std::size_t root : roots) {
    const std::vector<Vec2>& pts = components[root];
    std::vector<std::pair<double, Vec2>> far;
    for (const Vec2& p : pts) {
      if (norm(p) >= near) far.emplace_back(wrap_angle(angle_of(p)), p);
    }
    if (far.size() < 3) continue;
    std::sort(far.begin(), far.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Split the sorted angles at gaps wider than kGap, on the circle.
    std::size_t start = 0;
    double widest = -1.0;
    for (std::size_t s = 0; s < far.size(); ++s) {
      const double next = s + 1 < far.size() ? far[s + 1].first : far[0].first + kTwoPi;
      if (next - far[s].first > widest) {
        widest = next - far[s].first;
        start = (s + 1) % far.size();
      }
    }
    std::vector<std::vector<Vec2>> clusters(1);
    for (std::size_t c = 0; c < far.size(); ++c) {
      const std::size_t s = (start + c) % far.size();
      if (c > 0) {
        const std::size_t prev = (start + c - 1) % far.size();
        if (ccw_distance(far[prev].first, far[s].first) > kGap) clusters.emplace_back();
      }
      clusters.back().push_back(far[s].second);
    }
    std::vector<Vec2> mean(clusters.size(), Vec2{0.0, 0.0});
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (const Vec2& p : clusters[c]) mean[c] = mean[c] + normalized(p);
    }
    for (const Vec2& p : pts) {
      const double r = norm(p);
      if (r >= near || r == 0.0) continue;
      std::size_t bestc = 0;
      for (std::size_t c = 1; c < clusters.size(); ++c) {
        if (dot(p, mean[c]) / norm(mean[c]) > dot(p, mean[bestc]) / norm(mean[bestc])) bestc = c;
      }
      clusters[bestc].push_back(p);
    }
    for (auto& cluster : clusters) {
      std::sort(cluster.begin(), cluster.end(),
                [](const Vec2& a, const Vec2& b) { return norm(a) < norm(b); });
      CurveBranch branch;
      branch.obstacle = which;
      for (const Vec2& p : cluster) {
        if (branch.points.empty() || norm(p) > norm(branch.points.back()))
          branch.points.push_back(p);
      }
      std::vector<Vec2> fit_pts;
      for (const Vec2& p : branch.points) {
        if (norm(p) >= near && norm(p) <= 0.2 * g.L) fit_pts.push_back(p);
      }
      if (fit_pts.size() < 3) {
        fit_pts.clear();
        for (const Vec2& p : branch.points) {
          if (norm(p) >= near) fit_pts.push_back(p);
        }
      }
      if (fit_pts.size() < 3) continue;
      const LineFit fit = total_least_squares(fit_pts);
      branch.tangent = fit.direction;
      branch.fit_residual = fit.residual;
      branch.fit_points = fit.count;
      branches.push_back(std::move(branch));
    }
  }
  if (branches.empty()) {
    std::ostringstream msg;
    msg << "no " << to_string(which) << " coincidence boundary reaches |x| >= 4h";
    throw Error(ErrorKind::NoCurve, msg.str());
  }
  std::sort(branches.begin(), branches.end(), [](const CurveBranch& a, const CurveBranch& b) {
    return wrap_angle(angle_of(a.tangent)) < wrap_angle(angle_of(b.tangent));
  });
  return branches;
}

FreeBoundaryCurves extract_free_boundary(const ScalarField& field) {
  FreeBoundaryCurves curves;
  for (Obstacle which : {Obstacle::Lower, Obstacle::Upper}) {
    try {
      (which == Obstacle::Lower ? curves.lower : curves.upper) = extract_branches(field, which);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCurve) throw;
    }
  }
  if (curves.lower.empty() && curves.upper.empty()) {
    throw Error(ErrorKind::NoCurve, "neither coincidence set has a free boundary");
  }
  struct Ray {
    double angle;
    Obstacle obstacle;
    std::size_t index;
  };
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < curves.lower.size(); ++i) {
    rays.push_back({wrap_angle(angle_of(curves.lower[i].tangent)), Obstacle::Lower, i});
  }
  for (std::size_t i = 0; i < curves.upper.size(); ++i) {
    rays.push_back({wrap_angle(angle_of(curves.upper[i].tangent)), Obstacle::Upper, i});
  }
  std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) { return a.angle < b.angle; });
  if (rays.size() < 2) return curves;
  for (std::size_t s = 0; s < rays.size(); ++s) {
    const Ray& a = rays[s];
    const Ray& b = rays[(s + 1) % rays.size()];
    if (a.obstacle == b.obstacle) continue;
    const double width = ccw_distance(a.angle, b.angle);
    if (!noncoincident_sector(field, a.angle, width)) continue;
    if (a.obstacle == Obstacle::Upper && !curves.upper_plus) {
      curves.upper_plus = a.index;
      curves.lower_plus = b.index;
    } else if (a.obstacle == Obstacle::Lower && !curves.lower_minus) {
      curves.lower_minus = a.index;
      curves.upper_minus = b.index;
    }
  }
  return curves;
}

const AngleMeasurement* AngleReport::find(std::string_view name) const {
  for (const auto& a : angles) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

AngleReport measure_angles(const FreeBoundaryCurves& curves, const NormalizedPair& pair) {
  const CurveBranch* l_plus = curves.gamma(Obstacle::Lower, Branch::Plus);
  const CurveBranch* l_minus = curves.gamma(Obstacle::Lower, Branch::Minus);
  const CurveBranch* u_plus = curves.gamma(Obstacle::Upper, Branch::Plus);
  const CurveBranch* u_minus = curves.gamma(Obstacle::Upper, Branch::Minus);
  if (!(l_plus && u_plus) && !(l_minus && u_minus)) {
    throw Error(ErrorKind::InsufficientCurves,
                "no labeled pair of lower and upper branches bounding a noncoincidence sector");
  }
  const CaseLabel label = classify(pair);
  std::vector<double> predictions;
  if (label.tag == CaseTag::Case1) predictions = {kPi / 2.0};
  if (label.tag == CaseTag::Case2) {
    const OpeningAngle opening = opening_angle(pair);
    predictions = {opening.acute, opening.supplement};
  }
  auto between = [](const CurveBranch* a, const CurveBranch* b) {
    return std::acos(std::clamp(dot(a->tangent, b->tangent), -1.0, 1.0));
  };
  AngleReport report;
  auto add = [&](std::string name, const CurveBranch* a, const CurveBranch* b, bool predicted) {
    if (!a || !b) return;
    AngleMeasurement m;
    m.name = std::move(name);
    m.measured = between(a, b);
    m.predicted = std::numeric_limits<double>::quiet_NaN();
    m.deviation_deg = std::numeric_limits<double>::quiet_NaN();
    if (predicted && !predictions.empty()) {
      m.predicted = predictions.front();
      for (double p : predictions) {
        if (std::abs(m.measured - p) < std::abs(m.measured - m.predicted)) m.predicted = p;
      }
      m.deviation_deg = std::abs(m.measured - m.predicted) * 180.0 / kPi;
      report.max_deviation_deg = std::max(report.max_deviation_deg, m.deviation_deg);
    }
    report.angles.push_back(std::move(m));
  };
  add("gamma1+_gamma2+", l_plus, u_plus, true);
  add("gamma1-_gamma2-", l_minus, u_minus, true);
  add("gamma1+_gamma1-", l_plus, l_minus, false);
  add("gamma2+_gamma2-", u_plus, u_minus, false);
  return report;
}

}  // namespace dcone
