// Copyright 2026 The SMART Protocol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "smart/errors.hpp"
#include "smart/gates.hpp"

namespace smart {

namespace {

constexpr CoefficientEntry kPublished[] = {
    {GateName::sqrt_x, 1, 0.1515, 0.3336},   {GateName::sqrt_y, 1, -0.2154, 0.2224},
    {GateName::sqrt_x, 2, 0.0893, 0.1579},   {GateName::sqrt_y, 2, -0.1056, 0.1136},
    {GateName::sqrt_x, 3, 0.0620, 0.0921},   {GateName::sqrt_y, 3, -0.0701, 0.0760},
    {GateName::sqrt_x, 7, 0.0271, 0.0366},   {GateName::sqrt_y, 7, -0.0300, 0.0327},
    {GateName::sqrt_x, 10, 0.0190, 0.0254},  {GateName::sqrt_y, 10, -0.0210, 0.0229},
};

using Point = std::array<double, 2>;

class Objective {
 public:
  Objective(const Unitary& target, int n, const DriveSettings& drive, const PropagationConfig& cfg)
      : target_(target), n_(n), drive_(drive), cfg_(cfg) {
    frame_.reference_period = 1.0 / drive.mod_frequency();
    global_ = drive.envelope();
  }

  double infidelity(const Point& p) {
    ++evaluations;
    const Waveform local = Waveform::harmonic_sum(drive_.mod_frequency(), {p[0], p[1]}, true);
    const Unitary u = propagate(build_hamiltonian(frame_, global_, local), 0.0,
                                n_ / drive_.mod_frequency(), cfg_);
    return 1.0 - fidelity(u, target_);
  }

  Point gradient(const Point& p, double h) {
    Point g{};
    for (int k = 0; k < 2; ++k) {
      Point a = p, b = p;
      a[k] += h;
      b[k] -= h;
      g[k] = (infidelity(a) - infidelity(b)) / (2.0 * h);
    }
    return g;
  }

  int evaluations = 0;

 private:
  const Unitary& target_;
  int n_;
  DriveSettings drive_;
  PropagationConfig cfg_;
  QubitFrameSpec frame_;
  Waveform global_;
};

struct Descent {
  Point x;
  double value;
};

// BFGS with a backtracking line search on the infidelity. Trial steps are
// capped at `max_step`: the landscape is oscillatory in the coefficients, and
// an uncapped first step lands in an unrelated basin.
Descent minimize(Objective& obj, Point x, double h, double max_step, int max_iterations,
                 double stop) {
  double f = obj.infidelity(x);
  Point g = obj.gradient(x, h);
  std::array<std::array<double, 2>, 2> inv{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int it = 0; it < max_iterations && f > stop; ++it) {
    Point d{-(inv[0][0] * g[0] + inv[0][1] * g[1]), -(inv[1][0] * g[0] + inv[1][1] * g[1])};
    double slope = d[0] * g[0] + d[1] * g[1];
    if (slope >= 0.0) {
      inv = {{{1.0, 0.0}, {0.0, 1.0}}};
      d = {-g[0], -g[1]};
      slope = -(g[0] * g[0] + g[1] * g[1]);
    }
    const double length = std::hypot(d[0], d[1]);
    double step = length > max_step ? max_step / length : 1.0;
    Point xn{};
    double fn = f;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      xn = {x[0] + step * d[0], x[1] + step * d[1]};
      fn = obj.infidelity(xn);
      if (fn <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Point gn = obj.gradient(xn, h);
    const Point s{xn[0] - x[0], xn[1] - x[1]};
    const Point y{gn[0] - g[0], gn[1] - g[1]};
    const double sy = s[0] * y[0] + s[1] * y[1];
    if (sy > 1e-300 && it == 0) {
      // Rescale the identity guess to the observed curvature before the first update.
      const double yy = y[0] * y[0] + y[1] * y[1];
      inv = {{{sy / yy, 0.0}, {0.0, sy / yy}}};
    }
    if (sy > 1e-300) {
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      std::array<std::array<double, 2>, 2> a{};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - rho * s[i] * y[j];
      std::array<std::array<double, 2>, 2> ah{}, next{};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ah[i][j] = a[i][0] * inv[0][j] + a[i][1] * inv[1][j];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          next[i][j] = ah[i][0] * a[j][0] + ah[i][1] * a[j][1] + rho * s[i] * s[j];
      inv = next;
    }
    const double moved = std::hypot(s[0], s[1]);
    x = xn;
    f = fn;
    g = gn;
    if (moved < 1e-13) break;
  }
  return {x, f};
}

}  // namespace

std::span<const CoefficientEntry> published_coefficients() { return kPublished; }

GrapeResult grape_optimize(const Unitary& target, int n_periods, const DriveSettings& drive,
                           const GrapeOptions& options) {
  if (target.dim() != 2) {
    throw DomainError("grape_optimize: target must be a single-qubit unitary");
  }
  if (n_periods < 1) {
    throw DomainError("grape_optimize: n_periods must be >= 1");
  }
  Objective obj(target, n_periods, drive, options.propagation);

  // Coefficients scale roughly as f_mod / n; this sets the start radius.
  const double scale = 0.4 * drive.mod_frequency() / (0.588074 * n_periods);
  const double h = 1e-6 * scale;
  // Keep polishing past the convergence threshold so the coefficients
  // themselves settle, not only the fidelity.
  const double polish = std::min(options.target_infidelity, 1e-8) * 1e-5;

  std::vector<Point> starts;
  for (const auto& [v, w] : options.initial_guesses) starts.push_back({v, w});
  std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(n_periods));
  std::uniform_real_distribution<double> radius(0.15, 1.2);
  constexpr int kSigns[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (int q = 0; q < 4; ++q) {
    for (int s = 0; s < options.starts_per_quadrant; ++s) {
      const double a = radius(rng) * scale;
      const double b = radius(rng) * scale;
      starts.push_back({kSigns[q][0] * a, kSigns[q][1] * b});
    }
  }

  GrapeResult result;
  Descent best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
  bool have_converged = false;
  double best_power = std::numeric_limits<double>::infinity();
  for (const Point& start : starts) {
    const Descent d = minimize(obj, start, h, 0.5 * scale, options.max_iterations, polish);
    const bool converged = d.value < options.target_infidelity;
    const double power = d.x[0] * d.x[0] + d.x[1] * d.x[1];
    if (converged) {
      ++result.converged_starts;
      // Distinct solutions differ by far more than the tolerance; ties keep
      // the earlier start.
      if (!have_converged || power < best_power - 1e-10) {
        best = d;
        best_power = power;
      }
      have_converged = true;
    } else if (!have_converged && d.value < best.value) {
      best = d;
    }
  }
  result.nu_v = best.x[0];
  result.nu_w = best.x[1];
  result.fidelity = 1.0 - best.value;
  result.evaluations = obj.evaluations;
  if (!have_converged && best.value > options.failure_infidelity) {
    throw OptimizationFailure("GRAPE did not reach fidelity 1 - " +
                                  std::to_string(options.failure_infidelity) + " for n=" +
                                  std::to_string(n_periods),
                              {best.x[0], best.x[1]}, result.fidelity);
  }
  return result;
}

}  // namespace smart
