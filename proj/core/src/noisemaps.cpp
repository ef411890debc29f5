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

#include "smart/noisemaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smart/errors.hpp"
#include "smart/parallel.hpp"

namespace smart {

namespace {

void validate_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw DomainError(std::string(name) + " axis is empty");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw DomainError(std::string(name) + " axis must be strictly increasing");
    }
  }
  const double scale = std::max(std::abs(axis.front()), std::abs(axis.back()));
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (std::abs(axis[i] + axis[axis.size() - 1 - i]) > 1e-9 * std::max(scale, 1.0)) {
      throw DomainError(std::string(name) + " axis must be symmetric about zero");
    }
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = 0.5 * (lo + hi);
    return v;
  }
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  // Exact symmetry keeps the centre point at exactly zero.
  for (int i = 0; i < n / 2; ++i) {
    v[static_cast<std::size_t>(n - 1 - i)] = -v[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) v[static_cast<std::size_t>(n / 2)] = 0.0;
  return v;
}

// Normalised quadrature weights of a centred Gaussian on a (possibly
// non-uniform) axis. sigma = 0 gives the interpolation weights at zero.
std::vector<double> gaussian_weights(const std::vector<double>& axis, double sigma) {
  const std::size_t n = axis.size();
  std::vector<double> w(n, 0.0);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  if (sigma == 0.0) {
    auto hi = std::lower_bound(axis.begin(), axis.end(), 0.0);
    if (hi == axis.end()) {
      w[n - 1] = 1.0;
    } else if (*hi == 0.0 || hi == axis.begin()) {
      w[static_cast<std::size_t>(hi - axis.begin())] = 1.0;
    } else {
      const std::size_t j = static_cast<std::size_t>(hi - axis.begin());
      const double frac = (0.0 - axis[j - 1]) / (axis[j] - axis[j - 1]);
      w[j - 1] = 1.0 - frac;
      w[j] = frac;
    }
    return w;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? axis[i] - axis[i - 1] : 0.0;
    const double right = i + 1 < n ? axis[i + 1] - axis[i] : 0.0;
    const double x = axis[i] / sigma;
    w[i] = 0.5 * (left + right) * std::exp(-0.5 * x * x);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

bool truncated(const std::vector<double>& axis, double sigma) {
  const double half = 0.5 * (axis.back() - axis.front());
  return sigma > 0.5 * half;
}

void check_sigma(double sigma_nu, double sigma_omega) {
  if (!(sigma_nu >= 0.0) || !(sigma_omega >= 0.0) || !std::isfinite(sigma_nu) ||
      !std::isfinite(sigma_omega)) {
    throw DomainError("noise sigma must be finite and >= 0");
  }
}

}  // namespace

OffsetGrid OffsetGrid::uniform(double nu_half_width, int nu_points, double omega_half_width,
                               int omega_points) {
  if (nu_points < 1 || omega_points < 1) {
    throw DomainError("offset grid needs at least one point per axis");
  }
  if (!(nu_half_width >= 0.0) || !(omega_half_width >= 0.0)) {
    throw DomainError("offset grid half-widths must be >= 0");
  }
  OffsetGrid g;
  g.delta_nu = linspace(-nu_half_width, nu_half_width, nu_points);
  g.delta_omega = linspace(-omega_half_width, omega_half_width, omega_points);
  return g;
}

OffsetGrid OffsetGrid::defaults(double omega_r) { return uniform(omega_r, 81, 0.5, 81); }

void OffsetGrid::validate() const {
  validate_axis(delta_nu, "delta_nu");
  validate_axis(delta_omega, "delta_omega");
  if (std::abs(delta_omega.front()) >= 1.0 || std::abs(delta_omega.back()) >= 1.0) {
    throw DomainError("delta_omega offsets must satisfy |delta_omega| < 1");
  }
}

double FidelityGrid::center() const {
  auto closest = [](const std::vector<double>& axis) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (std::abs(axis[i]) < std::abs(axis[best])) best = i;
    }
    return best;
  };
  return at(closest(delta_nu_axis), closest(delta_omega_axis));
}

FidelityGrid offset_fidelity_map(const NoisyEvolution& evolve, const Unitary& target,
                                 const OffsetGrid& grid, std::string gate_name, int workers) {
  grid.validate();
  FidelityGrid out;
  out.delta_nu_axis = grid.delta_nu;
  out.delta_omega_axis = grid.delta_omega;
  out.gate_name = std::move(gate_name);
  out.qubit_count = target.dim() == 4 ? 2 : 1;
  out.values.resize(grid.delta_nu.size() * grid.delta_omega.size());
  const std::size_t m = grid.delta_omega.size();
  parallel_for(out.values.size(), workers, [&](std::size_t idx) {
    const NoiseOffset noise{grid.delta_nu[idx / m], grid.delta_omega[idx % m]};
    try {
      out.values[idx] = fidelity(evolve(noise), target);
    } catch (const EvaluationError& e) {
      throw EvaluationError(std::string(e.what()) + " at delta_nu=" +
                                std::to_string(noise.delta_nu) +
                                ", delta_omega=" + std::to_string(noise.delta_omega),
                            e.time());
    }
  });
  return out;
}

FidelityGrid offset_fidelity_map(const ControlProgram& program, const OffsetGrid& grid,
                                 const PropagationConfig& cfg, int workers) {
  return offset_fidelity_map(
      [&](const NoiseOffset& noise) { return program.evolve(noise, cfg); }, program.target,
      grid, std::string(to_string(program.gate)), workers);
}

ControlProgram dressed_identity(double omega_r, int n_periods) {
  if (!(omega_r > 0.0) || n_periods < 1) {
    throw DomainError("dressed_identity: need omega_r > 0 and n_periods >= 1");
  }
  ControlProgram p;
  p.gate = GateName::identity;
  p.n_periods = n_periods;
  p.omega_r = omega_r;
  p.f_mod = omega_r;  // one Rabi period per "period"
  p.global = dressed_envelope(omega_r);
  p.local = Waveform::constant(0.0);
  p.target = Unitary::identity(2);
  return p;
}

ControlProgram bare_identity(double duration) {
  if (!(duration > 0.0)) {
    throw DomainError("bare_identity: duration must be positive");
  }
  ControlProgram p;
  p.gate = GateName::identity;
  p.n_periods = 1;
  p.omega_r = 0.0;
  p.f_mod = 1.0 / duration;
  p.global = Waveform::constant(0.0);
  p.local = Waveform::constant(0.0);
  p.target = Unitary::identity(2);
  return p;
}

double detuning_half_width(const FidelityGrid& grid, double threshold) {
  const auto& nu = grid.delta_nu_axis;
  std::size_t j0 = 0;
  for (std::size_t j = 1; j < grid.delta_omega_axis.size(); ++j) {
    if (std::abs(grid.delta_omega_axis[j]) < std::abs(grid.delta_omega_axis[j0])) j0 = j;
  }
  std::size_t c = 0;
  for (std::size_t i = 1; i < nu.size(); ++i) {
    if (std::abs(nu[i]) < std::abs(nu[c])) c = i;
  }
  if (grid.at(c, j0) < threshold) return 0.0;

  auto edge = [&](int dir) {
    std::size_t i = c;
    while (true) {
      const long next = static_cast<long>(i) + dir;
      if (next < 0 || next >= static_cast<long>(nu.size())) return std::abs(nu[i]);
      const std::size_t k = static_cast<std::size_t>(next);
      const double fi = grid.at(i, j0);
      const double fk = grid.at(k, j0);
      if (fk < threshold) {
        const double frac = (fi - threshold) / (fi - fk);
        return std::abs(nu[i] + frac * (nu[k] - nu[i]));
      }
      i = k;
    }
  };
  return std::min(edge(+1), edge(-1));
}

AveragedFidelity gaussian_average(const FidelityGrid& grid, double sigma_nu,
                                  double sigma_omega) {
  check_sigma(sigma_nu, sigma_omega);
  const auto a = gaussian_weights(grid.delta_nu_axis, sigma_nu);
  const auto b = gaussian_weights(grid.delta_omega_axis, sigma_omega);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) row += b[j] * grid.at(i, j);
    sum += a[i] * row;
  }
  return {sum, truncated(grid.delta_nu_axis, sigma_nu) ||
                   truncated(grid.delta_omega_axis, sigma_omega)};
}

NoiseLevelMap noise_level_map(const FidelityGrid& grid, std::span<const double> sigma_nu,
                              std::span<const double> sigma_omega) {
  NoiseLevelMap m;
  m.sigma_nu_axis.assign(sigma_nu.begin(), sigma_nu.end());
  m.sigma_omega_axis.assign(sigma_omega.begin(), sigma_omega.end());
  for (double sn : sigma_nu) {
    for (double so : sigma_omega) {
      const AveragedFidelity r = gaussian_average(grid, sn, so);
      m.values.push_back(r.value);
      m.truncation_warning.push_back(r.truncation_warning ? 1 : 0);
    }
  }
  return m;
}

std::vector<double> default_sigma_nu_axis(double omega_r, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = 0.5 * omega_r * i / (points - 1);
  return v;
}

std::vector<double> default_sigma_omega_axis(int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = 0.25 * i / (points - 1);
  return v;
}

AveragedFidelity two_qubit_noise_average(const FidelityTensor4& tensor, double sigma_nu,
                                         double sigma_omega) {
  check_sigma(sigma_nu, sigma_omega);
  const auto a = gaussian_weights(tensor.delta_nu_axis, sigma_nu);
  const auto b = gaussian_weights(tensor.delta_omega_axis, sigma_omega);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  double sum = 0.0;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    if (a[i1] == 0.0) continue;
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (a[i2] == 0.0) continue;
      double inner = 0.0;
      for (std::size_t k1 = 0; k1 < m; ++k1) {
        if (b[k1] == 0.0) continue;
        double row = 0.0;
        for (std::size_t k2 = 0; k2 < m; ++k2) row += b[k2] * tensor.at(i1, i2, k1, k2);
        inner += b[k1] * row;
      }
      sum += a[i1] * a[i2] * inner;
    }
  }
  return {sum, truncated(tensor.delta_nu_axis, sigma_nu) ||
                   truncated(tensor.delta_omega_axis, sigma_omega)};
}

NoiseLevelMap two_qubit_noise_level_map(const FidelityTensor4& tensor,
                                        std::span<const double> sigma_nu,
                                        std::span<const double> sigma_omega) {
  NoiseLevelMap m;
  m.sigma_nu_axis.assign(sigma_nu.begin(), sigma_nu.end());
  m.sigma_omega_axis.assign(sigma_omega.begin(), sigma_omega.end());
  for (double sn : sigma_nu) {
    for (double so : sigma_omega) {
      const AveragedFidelity r = two_qubit_noise_average(tensor, sn, so);
      m.values.push_back(r.value);
      m.truncation_warning.push_back(r.truncation_warning ? 1 : 0);
    }
  }
  return m;
}

}  // namespace smart
