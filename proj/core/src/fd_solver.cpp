// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include "dcone/fd_solver.hpp"

#include <algorithm>
#include <array>
#include <barrier>
#include <cmath>
#include <sstream>
#include <thread>

#include "dcone/error.hpp"

namespace dcone {

namespace {

class Relaxation {
 public:
  Relaxation(ScalarField& field, double omega)
      : n_(field.grid.n),
        u_(field.u.data()),
        lo_(field.psi1.data()),
        hi_(field.psi2.data()),
        omega_(omega) {}

  void update(std::size_t k) const {
    const double gs = 0.25 * (u_[k - 1] + u_[k + 1] + u_[k - n_] + u_[k + n_]);
    const double relaxed = u_[k] + omega_ * (gs - u_[k]);
    u_[k] = std::clamp(relaxed, lo_[k], hi_[k]);
  }

  void lexicographic() const {
    for (int j = 1; j < n_ - 1; ++j) {
      for (int i = 1; i < n_ - 1; ++i) update(static_cast<std::size_t>(j) * n_ + i);
    }
  }

  void color(int parity, int j0, int j1) const {
    for (int j = j0; j < j1; ++j) {
      for (int i = 1 + ((j + 1 + parity) & 1); i < n_ - 1; i += 2) {
        update(static_cast<std::size_t>(j) * n_ + i);
      }
    }
  }

  [[nodiscard]] double residual(int j0, int j1) const {
    double r = 0.0;
    for (int j = j0; j < j1; ++j) {
      for (int i = 1; i < n_ - 1; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * n_ + i;
        const double gs = 0.25 * (u_[k - 1] + u_[k + 1] + u_[k - n_] + u_[k + n_]);
        r = std::max(r, std::abs(u_[k] - std::clamp(gs, lo_[k], hi_[k])));
      }
    }
    return r;
  }

 private:
  int n_;
  double* u_;
  const double* lo_;
  const double* hi_;
  double omega_;
};

bool on_boundary(const GridSpec& g, int i, int j) {
  return i == 0 || j == 0 || i == g.n - 1 || j == g.n - 1;
}

}  // namespace

GridSpec validate(const GridSpec& grid) {
  if (grid.n < 33 || grid.n % 2 == 0) {
    std::ostringstream msg;
    msg << "grid resolution n = " << grid.n << " must be odd and >= 33";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!(grid.L > 0.0) || !std::isfinite(grid.L)) {
    throw Error(ErrorKind::InvalidArgument, "grid half-width L must be positive");
  }
  return grid;
}

double bilinear(const GridSpec& grid, const std::vector<double>& values, Vec2 x) {
  const double h = grid.h();
  const double fx = std::clamp((x.x + grid.L) / h, 0.0, grid.n - 1.0);
  const double fy = std::clamp((x.y + grid.L) / h, 0.0, grid.n - 1.0);
  const int i = std::min(static_cast<int>(fx), grid.n - 2);
  const int j = std::min(static_cast<int>(fy), grid.n - 2);
  const double tx = fx - i;
  const double ty = fy - j;
  const std::size_t k = grid.index(i, j);
  const std::size_t n = grid.n;
  return (1.0 - ty) * ((1.0 - tx) * values[k] + tx * values[k + 1]) +
         ty * ((1.0 - tx) * values[k + n] + tx * values[k + n + 1]);
}

namespace {

// Keys cubic convolution kernel with a = -1/2; reproduces quadratics.
std::array<double, 4> keys_weights(double t) {
  const double s = 1.0 - t;
  return {-0.5 * t * s * s, 1.0 - 2.5 * t * t + 1.5 * t * t * t,
          1.0 - 2.5 * s * s + 1.5 * s * s * s, -0.5 * s * t * t};
}

}  // namespace

double cubic_convolution(const GridSpec& grid, const std::vector<double>& values, Vec2 x) {
  const double h = grid.h();
  const double fx = std::clamp((x.x + grid.L) / h, 0.0, grid.n - 1.0);
  const double fy = std::clamp((x.y + grid.L) / h, 0.0, grid.n - 1.0);
  const int i = std::min(static_cast<int>(fx), grid.n - 2);
  const int j = std::min(static_cast<int>(fy), grid.n - 2);
  const auto wx = keys_weights(fx - i);
  const auto wy = keys_weights(fy - j);
  double acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    const int jj = std::clamp(j - 1 + b, 0, grid.n - 1);
    double row = 0.0;
    for (int a = 0; a < 4; ++a) {
      row += wx[a] * values[grid.index(std::clamp(i - 1 + a, 0, grid.n - 1), jj)];
    }
    acc += wy[b] * row;
  }
  return acc;
}

double ScalarField::interpolate(Vec2 x) const { return bilinear(grid, u, x); }
double ScalarField::interpolate_cubic(Vec2 x) const { return cubic_convolution(grid, u, x); }

double ScalarField::laplacian(int i, int j) const {
  const std::size_t k = grid.index(i, j);
  const std::size_t n = grid.n;
  const double h = grid.h();
  return (u[k - 1] + u[k + 1] + u[k - n] + u[k + n] - 4.0 * u[k]) / (h * h);
}

double optimal_omega(int n) { return 2.0 / (1.0 + std::sin(kPi / (n - 1))); }

ScalarField solve(const ObstaclePair& pair, const GridSpec& grid_in, const BoundaryData& boundary,
                  const SolveConfig& config) {
  const GridSpec grid = validate(grid_in);
  if (!(config.omega > 0.0 && config.omega < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "relaxation factor must lie in (0, 2)");
  }
  ScalarField field;
  field.grid = grid;
  field.lambda1 = pair.lambda1();
  field.lambda2 = pair.lambda2();
  field.u.assign(grid.size(), 0.0);
  field.psi1.resize(grid.size());
  field.psi2.resize(grid.size());
  const QuadForm p1 = pair.lower();
  const QuadForm p2 = pair.upper();
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const std::size_t k = grid.index(i, j);
      const Vec2 x = grid.node(i, j);
      field.psi1[k] = p1(x);
      field.psi2[k] = p2(x);
      if (on_boundary(grid, i, j)) {
        const double g = boundary(x);
        const double slack =
            1e-12 * (1.0 + std::max(std::abs(field.psi1[k]), std::abs(field.psi2[k])));
        if (!(g >= field.psi1[k] - slack && g <= field.psi2[k] + slack)) {
          std::ostringstream msg;
          msg << "boundary value " << g << " at (" << x.x << ", " << x.y << ") outside ["
              << field.psi1[k] << ", " << field.psi2[k] << "]";
          throw Error(ErrorKind::BoundaryViolation, msg.str());
        }
        field.u[k] = std::clamp(g, field.psi1[k], field.psi2[k]);
      } else {
        const double guess = config.initial ? config.initial(x) : 0.0;
        field.u[k] = std::clamp(guess, field.psi1[k], field.psi2[k]);
      }
    }
  }

  SolverMetadata& meta = field.meta;
  meta.omega = config.omega;
  meta.tolerance = config.tolerance > 0.0 ? config.tolerance : 1e-10 * pair.lambda2();
  const int max_iterations = config.max_iterations > 0 ? config.max_iterations : 200 * grid.n;
  const Relaxation relax(field, config.omega);
  const int rows = grid.n - 2;

  auto finish_iteration = [&](double residual) {
    ++meta.iterations;
    meta.residual = residual;
    if (config.record_history) meta.residual_history.push_back(residual);
    meta.converged = residual < meta.tolerance;
    return meta.converged || meta.iterations >= max_iterations;
  };

  const int threads = std::clamp(config.threads, 1, std::max(1, rows / 8));
  if (config.order == SweepOrder::Lexicographic) {
    while (true) {
      relax.lexicographic();
      if (finish_iteration(relax.residual(1, grid.n - 1))) break;
    }
  } else if (threads == 1) {
    while (true) {
      relax.color(0, 1, grid.n - 1);
      relax.color(1, 1, grid.n - 1);
      if (finish_iteration(relax.residual(1, grid.n - 1))) break;
    }
  } else {
    // Updates within one colour read only the other colour, so any row split
    // reproduces the serial result bit for bit.
    std::barrier sync(threads);
    std::vector<double> partial(threads, 0.0);
    bool stop = false;
    auto worker = [&](int t) {
      const int j0 = 1 + rows * t / threads;
      const int j1 = 1 + rows * (t + 1) / threads;
      while (true) {
        relax.color(0, j0, j1);
        sync.arrive_and_wait();
        relax.color(1, j0, j1);
        sync.arrive_and_wait();
        partial[t] = relax.residual(j0, j1);
        sync.arrive_and_wait();
        if (t == 0) stop = finish_iteration(*std::max_element(partial.begin(), partial.end()));
        sync.arrive_and_wait();
        if (stop) break;
      }
    };
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
  }

  apply_masks(field, coincidence_masks(field));
  return field;
}

double projected_residual(const ScalarField& field) {
  ScalarField copy = field;
  return Relaxation(copy, 1.0).residual(1, field.grid.n - 1);
}

ResidualReport residual_report(const ScalarField& field) {
  ResidualReport report;
  const GridSpec& g = field.grid;
  auto state = [&](int i, int j) {
    const std::size_t k = g.index(i, j);
    return (field.lower[k] ? 1 : 0) | (field.upper[k] ? 2 : 0);
  };
  for (int j = 1; j < g.n - 1; ++j) {
    for (int i = 1; i < g.n - 1; ++i) {
      const int s = state(i, j);
      if (s == 3) continue;
      if (s == 1) ++report.lower_nodes;
      if (s == 2) ++report.upper_nodes;
      const double expected = (s == 1 ? field.lambda1 : 0.0) + (s == 2 ? field.lambda2 : 0.0);
      const double dev = std::abs(field.laplacian(i, j) - expected);
      report.max_deviation_all = std::max(report.max_deviation_all, dev);
      bool uniform = true;
      for (int dj = -2; dj <= 2 && uniform; ++dj) {
        for (int di = -2; di <= 2 && uniform; ++di) {
          const int ii = std::clamp(i + di, 0, g.n - 1);
          const int jj = std::clamp(j + dj, 0, g.n - 1);
          uniform = state(ii, jj) == s;
        }
      }
      if (!uniform) continue;
      ++report.nodes_checked;
      report.max_deviation = std::max(report.max_deviation, dev);
    }
  }
  return report;
}

CoincidenceMasks coincidence_masks(const ScalarField& field, std::optional<double> lower_tol,
                                   std::optional<double> upper_tol) {
  const double h2 = field.grid.h() * field.grid.h();
  const double tl = lower_tol.value_or(0.1 * std::abs(field.lambda1)) * h2;
  const double tu = upper_tol.value_or(0.1 * std::abs(field.lambda2)) * h2;
  CoincidenceMasks masks;
  masks.lower.resize(field.u.size());
  masks.upper.resize(field.u.size());
  for (std::size_t k = 0; k < field.u.size(); ++k) {
    masks.lower[k] = field.u[k] - field.psi1[k] <= tl ? 1 : 0;
    masks.upper[k] = field.psi2[k] - field.u[k] <= tu ? 1 : 0;
  }
  return masks;
}

void apply_masks(ScalarField& field, const CoincidenceMasks& masks) {
  field.lower = masks.lower;
  field.upper = masks.upper;
}

ScalarField sample_field(const ObstaclePair& pair, const GridSpec& grid_in,
                         const std::function<double(Vec2)>& values) {
  const GridSpec grid = validate(grid_in);
  ScalarField field;
  field.grid = grid;
  field.lambda1 = pair.lambda1();
  field.lambda2 = pair.lambda2();
  field.u.resize(grid.size());
  field.psi1.resize(grid.size());
  field.psi2.resize(grid.size());
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const std::size_t k = grid.index(i, j);
      const Vec2 x = grid.node(i, j);
      field.u[k] = values(x);
      field.psi1[k] = pair.lower()(x);
      field.psi2[k] = pair.upper()(x);
    }
  }
  apply_masks(field, coincidence_masks(field));
  return field;
}

ScalarField sample_field(const ObstaclePair& pair, const GridSpec& grid,
                         const BlowupSolution& solution) {
  return sample_field(pair, grid, [&solution](Vec2 x) { return solution.value(x); });
}

}  // namespace dcone
