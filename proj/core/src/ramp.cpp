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
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "smart/errors.hpp"
#include "smart/parallel.hpp"
#include "smart/twoqubit.hpp"

namespace smart {

namespace {

constexpr double kMhzPerGhz = 1000.0;
// Largest change of eps per step inside the slow ramp, relative to t_c.
constexpr double kRampStepFraction = 0.02;

}  // namespace

Matrix STSystem::hamiltonian(double t, double eps_ghz) const {
  Matrix h = Matrix::Zero(5, 5);
  const double omega = global(t);
  const double coupling = omega / std::sqrt(2.0);
  const double sum = 0.5 * (dnu1 + dnu2);
  const double diff = 0.5 * (dnu1 - dnu2);
  h(0, 0) = sum;
  h(2, 2) = -sum;
  h(0, 1) = h(1, 0) = coupling;
  h(1, 2) = h(2, 1) = coupling;
  h(1, 3) = h(3, 1) = diff;
  h(3, 4) = h(4, 3) = t_c * kMhzPerGhz;
  h(4, 4) = -eps_ghz * kMhzPerGhz;
  return h;
}

RampSpec RampSpec::smart(RampCentering centering, const DriveSettings& drive) {
  if (centering == RampCentering::dressed) {
    return dressed(drive.omega_r);
  }
  RampSpec r;
  const double period = drive.period();
  r.window = 2.0 * period;
  r.center = centering == RampCentering::a ? period : 1.25 * period;
  r.reference_period = period;
  r.centering = centering;
  return r;
}

RampSpec RampSpec::dressed(double omega_r) {
  if (!(omega_r > 0.0)) {
    throw DomainError("omega_r must be positive");
  }
  RampSpec r;
  r.window = 2.0 / omega_r;
  r.center = 1.0 / omega_r;
  r.reference_period = 1.0 / omega_r;
  r.centering = RampCentering::dressed;
  return r;
}

void RampSpec::validate() const {
  if (!(window > 0.0)) {
    throw DomainError("ramp window must be positive");
  }
  if (!(ramp_time >= 0.0)) {
    throw DomainError("ramp_time must be >= 0");
  }
  if (pre_step_fraction < 0.0 || post_step_fraction < 0.0 ||
      pre_step_fraction + post_step_fraction > 1.0) {
    throw DomainError("step fractions must be >= 0 and sum to at most 1");
  }
  const double t0 = center - 0.5 * ramp_time;
  const double t1 = center + 0.5 * ramp_time;
  if (t0 < -1e-12 || t1 > window + 1e-12) {
    throw DomainError("ramp_time " + std::to_string(ramp_time) +
                      " us does not fit in the " + std::to_string(window) +
                      " us window around " + std::to_string(center) + " us");
  }
}

Waveform RampSpec::profile() const {
  validate();
  const double range = eps_start - eps_end;
  const double hi = eps_start - pre_step_fraction * range;
  const double lo = eps_end + post_step_fraction * range;
  const double t0 = std::max(0.0, center - 0.5 * ramp_time);
  const double t1 = std::min(window, center + 0.5 * ramp_time);
  return Waveform::piecewise_linear(
      {{0.0, eps_start}, {t0, eps_start}, {t0, hi}, {t1, lo}, {t1, eps_end}, {window, eps_end}});
}

STSystem st_system(const RampSpec& ramp, const DriveSettings& drive) {
  STSystem sys;
  sys.global = ramp.centering == RampCentering::dressed ? dressed_envelope(drive.omega_r)
                                                         : drive.envelope();
  return sys;
}

StEvolution st_evolve(const STSystem& sys, const RampSpec& ramp, StState initial, bool reverse,
                      const PropagationConfig& cfg) {
  Waveform eps = ramp.profile();
  if (reverse) {
    std::vector<std::pair<double, double>> knots;
    const auto& k = eps.knots();
    for (auto it = k.rbegin(); it != k.rend(); ++it) {
      knots.emplace_back(ramp.window - it->first, it->second);
    }
    eps = Waveform::piecewise_linear(std::move(knots));
  }
  auto fn = [sys, eps](double t) { return sys.hamiltonian(t, eps(t)); };
  HamiltonianSpec h = HamiltonianSpec::dense(5, fn, Frame::rotating, ramp.reference_period);
  h.with_breakpoints(eps.breakpoints());

  std::vector<Segment> plan = plan_segments(h, 0.0, ramp.window, cfg);
  const double max_step = kRampStepFraction * sys.t_c * kMhzPerGhz;
  for (Segment& s : plan) {
    const double change = std::abs(eps(s.t1) - eps(s.t0)) * kMhzPerGhz;
    s.steps = std::max(s.steps, static_cast<int>(std::ceil(change / max_step)));
  }
  const Unitary u = propagate_segments(h, plan, cfg);

  StEvolution out;
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    out.populations[static_cast<std::size_t>(i)] = std::norm(u(i, static_cast<int>(initial)));
    total += out.populations[static_cast<std::size_t>(i)];
  }
  out.norm_defect = std::abs(total - 1.0);
  return out;
}

std::vector<std::pair<double, double>> default_st_offsets() {
  const double values[] = {-0.1, -0.05, 0.0, 0.05, 0.1};
  std::vector<std::pair<double, double>> out;
  for (double a : values) {
    for (double b : values) out.emplace_back(a, b);
  }
  return out;
}

namespace {

std::vector<RampPoint> sweep(const STSystem& sys, const RampSpec& ramp,
                             std::span<const double> ramp_times,
                             std::span<const std::pair<double, double>> offsets,
                             StState initial, bool reverse, const PropagationConfig& cfg,
                             int workers) {
  for (double t : ramp_times) {
    RampSpec r = ramp;
    r.ramp_time = t;
    r.validate();
  }
  std::vector<RampPoint> out(ramp_times.size() * offsets.size());
  parallel_for(out.size(), workers, [&](std::size_t idx) {
    const std::size_t i = idx / offsets.size();
    const std::size_t j = idx % offsets.size();
    RampSpec r = ramp;
    r.ramp_time = ramp_times[i];
    STSystem s = sys;
    s.dnu1 = offsets[j].first;
    s.dnu2 = offsets[j].second;
    out[idx] = {r.ramp_time, s.dnu1, s.dnu2, st_evolve(s, r, initial, reverse, cfg)};
  });
  return out;
}

}  // namespace

std::vector<RampPoint> ramp_initialisation(const STSystem& sys, const RampSpec& ramp,
                                           std::span<const double> ramp_times,
                                           std::span<const std::pair<double, double>> offsets,
                                           const PropagationConfig& cfg, int workers) {
  return sweep(sys, ramp, ramp_times, offsets, StState::s02, false, cfg, workers);
}

std::vector<RampPoint> ramp_readout(const STSystem& sys, const RampSpec& ramp,
                                    std::span<const double> ramp_times,
                                    std::span<const std::pair<double, double>> offsets,
                                    StState initial, const PropagationConfig& cfg, int workers) {
  return sweep(sys, ramp, ramp_times, offsets, initial, true, cfg, workers);
}

double init_threshold_time(const std::vector<RampPoint>& points, double threshold) {
  std::map<double, double> worst;
  for (const RampPoint& p : points) {
    auto [it, inserted] = worst.emplace(p.ramp_time, p.result.p(StState::s11));
    if (!inserted) it->second = std::min(it->second, p.result.p(StState::s11));
  }
  double answer = std::numeric_limits<double>::quiet_NaN();
  for (auto it = worst.rbegin(); it != worst.rend(); ++it) {
    if (it->second <= threshold) break;
    answer = it->first;
  }
  return answer;
}

namespace {

std::array<double, 5> levels_at(const STSystem& sys, double eps, double time) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.hamiltonian(time, eps), Eigen::EigenvaluesOnly);
  std::array<double, 5> out{};
  for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i) / kMhzPerGhz;
  return out;
}

}  // namespace

EnergyDiagram st_energy_diagram(const STSystem& sys, std::span<const double> eps_grid,
                                double time) {
  EnergyDiagram d;
  d.time = time;
  d.eps.assign(eps_grid.begin(), eps_grid.end());
  for (double e : eps_grid) d.levels.push_back(levels_at(sys, e, time));
  return d;
}

double st_min_gap(const STSystem& sys, double eps_lo, double eps_hi, double time,
                  int coarse_points) {
  if (!(eps_hi > eps_lo) || coarse_points < 3) {
    throw DomainError("st_min_gap: need eps_hi > eps_lo and at least 3 points");
  }
  auto gap = [&](double eps, std::size_t k) {
    const auto l = levels_at(sys, eps, time);
    return l[k + 1] - l[k];
  };
  const double h = (eps_hi - eps_lo) / (coarse_points - 1);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 4; ++k) {
    int arg = 0;
    double coarse = std::numeric_limits<double>::infinity();
    for (int i = 0; i < coarse_points; ++i) {
      const double g = gap(eps_lo + i * h, k);
      if (g < coarse) {
        coarse = g;
        arg = i;
      }
    }
    double a = eps_lo + std::max(0, arg - 1) * h;
    double b = eps_lo + std::min(coarse_points - 1, arg + 1) * h;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = gap(c, k);
    double fd = gap(d, k);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = gap(c, k);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = gap(d, k);
      }
    }
    best = std::min({best, coarse, fc, fd});
  }
  return best;
}

}  // namespace smart
