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

#pragma once

// Fixed-offset fidelity grids over (detuning, amplitude) noise and their
// Gaussian averages. One- and two-qubit variants.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smart/gates.hpp"
#include "smart/numerics.hpp"

namespace smart {

// Offset axes. Both must be strictly increasing and symmetric about zero.
struct OffsetGrid {
  std::vector<double> delta_nu;     // MHz
  std::vector<double> delta_omega;  // fraction of the drive amplitude

  // `points` samples on [-half, half] for each axis.
  static OffsetGrid uniform(double nu_half_width, int nu_points, double omega_half_width,
                            int omega_points);
  // delta_nu in [-Omega_R, Omega_R], delta_omega in [-0.5, 0.5], 81 x 81.
  static OffsetGrid defaults(double omega_r = 1.0);

  // Throws DomainError naming the offending axis.
  void validate() const;
};

struct FidelityGrid {
  std::vector<double> delta_nu_axis;
  std::vector<double> delta_omega_axis;
  std::vector<double> values;  // row-major, delta_nu outer
  std::string gate_name;
  int qubit_count = 1;

  double at(std::size_t i_nu, std::size_t i_omega) const {
    return values[i_nu * delta_omega_axis.size() + i_omega];
  }
  // Value at the grid point closest to (0, 0).
  double center() const;
};

using NoisyEvolution = std::function<Unitary(const NoiseOffset&)>;

FidelityGrid offset_fidelity_map(const NoisyEvolution& evolve, const Unitary& target,
                                 const OffsetGrid& grid, std::string gate_name,
                                 int workers = 1);

FidelityGrid offset_fidelity_map(const ControlProgram& program, const OffsetGrid& grid,
                                 const PropagationConfig& cfg = {}, int workers = 1);

// Idle programs used as robustness references. The dressed idle runs
// n_periods Rabi periods of a constant drive with the same RMS amplitude as
// the SMART envelope; the bare idle has no drive at all.
ControlProgram dressed_identity(double omega_r, int n_periods);
ControlProgram bare_identity(double duration);

// Contiguous half-width around delta_nu = 0 of the delta_omega = 0 slice with
// fidelity >= threshold, linearly interpolated between grid points. Returns
// the axis half-width when the band reaches the grid edge.
double detuning_half_width(const FidelityGrid& grid, double threshold = 0.99);

struct AveragedFidelity {
  double value = 0.0;
  // Set when a sigma exceeds half the grid half-width, so truncation of the
  // Gaussian dominates the result.
  bool truncation_warning = false;
};

AveragedFidelity gaussian_average(const FidelityGrid& grid, double sigma_nu,
                                  double sigma_omega);

struct NoiseLevelMap {
  std::vector<double> sigma_nu_axis;
  std::vector<double> sigma_omega_axis;
  std::vector<double> values;  // row-major, sigma_nu outer
  std::vector<char> truncation_warning;

  double at(std::size_t i_nu, std::size_t i_omega) const {
    return values[i_nu * sigma_omega_axis.size() + i_omega];
  }
  double infidelity(std::size_t i_nu, std::size_t i_omega) const { return 1.0 - at(i_nu, i_omega); }
};

NoiseLevelMap noise_level_map(const FidelityGrid& grid, std::span<const double> sigma_nu,
                              std::span<const double> sigma_omega);

// [0, 0.5 Omega_R] x [0, 0.25] with `points` samples per axis.
std::vector<double> default_sigma_nu_axis(double omega_r = 1.0, int points = 21);
std::vector<double> default_sigma_omega_axis(int points = 21);

// Fidelity over the four offsets (dnu1, dnu2, dOmega1, dOmega2). Both qubits
// share the same axes.
struct FidelityTensor4 {
  std::vector<double> delta_nu_axis;
  std::vector<double> delta_omega_axis;
  std::vector<double> values;  // index ((i_nu1 * N + i_nu2) * M + i_om1) * M + i_om2
  std::string gate_name;

  double at(std::size_t i_nu1, std::size_t i_nu2, std::size_t i_om1, std::size_t i_om2) const {
    const std::size_t n = delta_nu_axis.size();
    const std::size_t m = delta_omega_axis.size();
    return values[((i_nu1 * n + i_nu2) * m + i_om1) * m + i_om2];
  }
};

// Separable Gaussian average with the same sigma on both qubits. Exchange is
// noiseless.
AveragedFidelity two_qubit_noise_average(const FidelityTensor4& tensor, double sigma_nu,
                                         double sigma_omega);

NoiseLevelMap two_qubit_noise_level_map(const FidelityTensor4& tensor,
                                        std::span<const double> sigma_nu,
                                        std::span<const double> sigma_omega);

}  // namespace smart
