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

// Rotation extraction, rotation efficiency, the SMART single-qubit gate
// library and the two-parameter GRAPE search for x/y coefficients.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smart/model.hpp"
#include "smart/numerics.hpp"

namespace smart {

struct RotationDecomposition {
  double chi = 0.0;              // rotation angle in [0, 2 pi)
  std::optional<Vector3> axis;   // unit axis; empty for the identity
  double azimuth = 0.0;          // atan2(r_y, r_x)
  double elevation = 0.0;        // atan2(r_z, sqrt(r_x^2 + r_y^2))

  // Angle from +z, pi/2 - elevation.
  double polar() const;
  // cos(chi/2) I - i sin(chi/2) r.sigma
  Matrix2 reconstruct() const;
};

// Removes the global phase (SU(2) representative closest to det^(1/2) = 1),
// takes chi from the identity component and the axis from the traceless part.
RotationDecomposition extract_rotation(const Unitary& u);

// cos(chi/2) I - i sin(chi/2) axis.sigma; the axis is normalized.
Unitary rotation(const Vector3& axis, double chi);

// 100 chi^2 / ((2 pi n T_mod)^2 (nu / sqrt 2)^2), in percent.
double rotation_efficiency(double chi, double nu, int n_periods, double f_mod);

enum class GateName {
  identity,
  sqrt_x,
  sqrt_y,
  sqrt_v,
  sqrt_w,
  sqrt_x_dag,
  sqrt_y_dag,
  sqrt_v_dag,
  sqrt_w_dag,
};

std::string_view to_string(GateName gate);
GateName parse_gate_name(std::string_view name);
bool is_inverse(GateName gate);
GateName inverse_of(GateName gate);

// Global drive shared by every qubit.
struct DriveSettings {
  double omega_r = 1.0;                 // MHz
  std::optional<double> f_mod;          // MHz; defaults to the first Bessel optimum
  ModulationVariant variant = ModulationVariant::sine;

  double mod_frequency() const;
  double period() const { return 1.0 / mod_frequency(); }
  Waveform envelope() const;
};

struct ControlProgram {
  GateName gate = GateName::identity;
  int n_periods = 1;
  ModulationVariant variant = ModulationVariant::sine;
  double omega_r = 1.0;
  double f_mod = 1.0;
  Waveform global;
  Waveform local;
  Unitary target = Unitary::identity(2);
  // Control amplitudes that define `local`: (nu_v, nu_w) for x/y gates,
  // (nu, 0) for single-harmonic gates.
  std::pair<double, double> coefficients{0.0, 0.0};
  double zero_noise_fidelity = 1.0;

  double duration() const { return n_periods / f_mod; }
  HamiltonianSpec hamiltonian(const NoiseOffset& noise = {}) const;
  Unitary evolve(const NoiseOffset& noise = {}, const PropagationConfig& cfg = {}) const;
};

struct AxisMapPoint {
  double nu = 0.0;
  double phi_mod = 0.0;
  RotationDecomposition rotation;
  double efficiency = 0.0;  // percent; 0 where nu == 0
};

struct AxisMaps {
  int harmonic = 1;
  std::vector<double> nu_grid;
  std::vector<double> phi_grid;
  std::vector<AxisMapPoint> points;  // row-major, nu outer

  const AxisMapPoint& at(std::size_t i_nu, std::size_t i_phi) const {
    return points[i_nu * phi_grid.size() + i_phi];
  }
};

// One T_mod under the global drive plus nu sin(2 pi k f_mod t + phi_mod) sigma_x.
AxisMaps axis_maps(std::span<const double> nu_grid, std::span<const double> phi_grid,
                   int harmonic, const DriveSettings& drive = {},
                   const PropagationConfig& cfg = {}, int workers = 1);

struct GrapeOptions {
  std::uint64_t seed = 20220611;
  int starts_per_quadrant = 2;
  int max_iterations = 300;
  double target_infidelity = 1e-8;   // converged when 1 - F drops below
  double failure_infidelity = 1e-6;  // OptimizationFailure above this
  std::vector<std::pair<double, double>> initial_guesses;  // tried first
  PropagationConfig propagation;
};

struct GrapeResult {
  double nu_v = 0.0;
  double nu_w = 0.0;
  double fidelity = 0.0;
  int evaluations = 0;
  int converged_starts = 0;
};

// Two-harmonic x/y program for (nu_v, nu_w): the local term
// nu_v (cos(2 pi f t) - 1) + nu_w (cos(4 pi f t) - 1).
ControlProgram xy_program(GateName gate, int n_periods, double nu_v, double nu_w,
                          const DriveSettings& drive);

// Multi-start gradient ascent (central differences, BFGS curvature) of the
// zero-noise fidelity over (nu_v, nu_w). Among converged starts the
// lowest-power solution nu_v^2 + nu_w^2 is returned.
GrapeResult grape_optimize(const Unitary& target, int n_periods, const DriveSettings& drive,
                           const GrapeOptions& options = {});

struct CoefficientEntry {
  GateName gate;
  int n_periods;
  double nu_v;
  double nu_w;
};

// Published sqrt(X) / sqrt(Y) coefficients for Omega_R = 1 MHz, sine variant.
std::span<const CoefficientEntry> published_coefficients();

// Builds and caches calibrated programs for one drive setting. Thread-safe.
class GateLibrary {
 public:
  explicit GateLibrary(DriveSettings drive = {}, PropagationConfig cfg = {},
                       GrapeOptions grape = {});

  const DriveSettings& drive() const noexcept { return drive_; }

  ControlProgram build(GateName gate, int n_periods);

 private:
  ControlProgram build_xy(GateName gate, int n_periods);
  ControlProgram build_single_harmonic(GateName gate, int n_periods);

  DriveSettings drive_;
  PropagationConfig cfg_;
  GrapeOptions grape_;
  std::mutex mutex_;
  std::map<std::pair<GateName, int>, ControlProgram> cache_;
};

// Zero-noise fidelity floors enforced by the library.
inline constexpr double kSineGateFloor = 1.0 - 1e-6;
inline constexpr double kCosineGateFloor = 0.99;

ControlProgram build_gate(GateName gate, int n_periods,
                          ModulationVariant variant = ModulationVariant::sine,
                          double omega_r = 1.0);

}  // namespace smart
