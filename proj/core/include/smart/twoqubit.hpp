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

// Exchange-coupled SMART qubit pairs: sqrt(SWAP), CNOT and CNOT_X programs
// under the shared global field, and the five-level singlet-triplet model
// used for initialisation and readout ramps.

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smart/gates.hpp"
#include "smart/model.hpp"
#include "smart/noisemaps.hpp"
#include "smart/numerics.hpp"

namespace smart {

// Heisenberg exchange (J(t)/4) sigma.sigma. J in MHz.
struct ExchangeSpec {
  Waveform j;
  double pulse_center = 0.0;    // us
  double pulse_duration = 0.0;  // us

  static ExchangeSpec none() { return {}; }
  // J = j0 on [center - duration/2, center + duration/2], zero elsewhere.
  static ExchangeSpec square(double j0, double center, double duration);
  bool active() const { return !j.is_zero(); }
};

struct QubitTerms {
  Waveform global;
  Waveform local;
  double f_mod = 1.0;
};

// Sum of two dressed-frame single-qubit terms plus exchange. The qubits must
// share f_mod (one global field).
HamiltonianSpec two_qubit_hamiltonian(const QubitTerms& q1, const QubitTerms& q2,
                                      const ExchangeSpec& exchange,
                                      const std::pair<NoiseOffset, NoiseOffset>& noise = {});

// Matrix (P_T + i P_S), the square root of SWAP produced by a positive
// exchange pulse with integral 1/4.
const Matrix& sqrt_swap_matrix();
const Matrix& swap_matrix();

// A stretch of an integer number of modulation periods. Time restarts at 0
// in each block, which is exact because the global field is T_mod-periodic.
struct TwoQubitBlock {
  std::string label;
  int n_periods = 1;
  Waveform local1;
  Waveform local2;
  ExchangeSpec exchange;
};

struct TwoQubitProgram {
  std::string name;
  double omega_r = 1.0;
  double f_mod = 1.0;
  ModulationVariant variant = ModulationVariant::sine;
  Waveform global;
  std::vector<TwoQubitBlock> blocks;  // in time order
  Unitary target = Unitary::identity(4);
  double zero_noise_fidelity = 1.0;
  // Exchange amplitude is not large compared with the drive.
  bool slow_exchange_warning = false;

  double duration() const;
  Unitary evolve(const std::pair<NoiseOffset, NoiseOffset>& noise = {},
                 const PropagationConfig& cfg = {}) const;
};

inline constexpr double kDefaultExchange = 20.0;  // MHz
inline constexpr double kSqrtSwapFloor = 0.999;

// One T_mod with a square J pulse of area 1/4 centred on the mid-period zero
// crossing of the sine envelope.
TwoQubitProgram sqrt_swap_program(double j0 = kDefaultExchange, const DriveSettings& drive = {},
                                  const PropagationConfig& cfg = {});

// (sqrt_y_dag x I) sqrt_swap (sqrt_x_dag x sqrt_x) sqrt_swap (sqrt_y x I).
// The target is the product of the ideal factors.
TwoQubitProgram compose_cnot(GateLibrary& library, int single_qubit_periods = 7,
                             double j0 = kDefaultExchange, const PropagationConfig& cfg = {});
// sqrt_swap (sqrt_x_dag x sqrt_x) sqrt_swap.
TwoQubitProgram compose_cnot_x(GateLibrary& library, int single_qubit_periods = 7,
                               double j0 = kDefaultExchange, const PropagationConfig& cfg = {});

// Identity idle of both qubits, optionally with constant exchange j0 over the
// whole block (used for the decoupling limit).
TwoQubitProgram two_qubit_idle(int n_periods, double j = 0.0, const DriveSettings& drive = {});

// 4D fidelity tensor over the grid. Stretches without exchange are evaluated
// once per (qubit, offset pair) and reused.
FidelityTensor4 two_qubit_fidelity_tensor(const TwoQubitProgram& program, const OffsetGrid& grid,
                                          const PropagationConfig& cfg = {}, int workers = 1);

// 15 x 15 points per qubit on the default single-qubit extents.
OffsetGrid default_two_qubit_grid(double omega_r = 1.0);

// ---------------------------------------------------------------------------
// Singlet-triplet model. Basis order T+, T0, T-, S(1,1), S(0,2).

enum class StState { t_plus = 0, t_zero = 1, t_minus = 2, s11 = 3, s02 = 4 };

struct STSystem {
  double t_c = 0.5;    // GHz
  double dnu1 = 0.0;   // MHz
  double dnu2 = 0.0;   // MHz
  Waveform global;     // collective drive envelope, MHz

  // 5x5 Hamiltonian in MHz at time t and charge detuning eps (GHz).
  Matrix hamiltonian(double t, double eps_ghz) const;
};

enum class RampCentering { a, b, dressed };

struct RampSpec {
  double ramp_time = 0.1;       // us
  double eps_start = 50.0;      // GHz
  double eps_end = -50.0;       // GHz
  double pre_step_fraction = 0.4;
  double post_step_fraction = 0.4;
  double window = 0.0;          // us
  double center = 0.0;          // us
  double reference_period = 1.0;
  RampCentering centering = RampCentering::a;

  // Window 2 T_mod; A centred on the envelope zero at T_mod, B on the
  // envelope maximum at 1.25 T_mod.
  static RampSpec smart(RampCentering centering, const DriveSettings& drive = {});
  // Constant drive, window 2 / Omega_R, ramp centred in the window.
  static RampSpec dressed(double omega_r = 1.0);

  // Piecewise-linear eps(t) in GHz: step, slow linear ramp, step.
  Waveform profile() const;
  // Throws DomainError if the ramp does not fit in the window.
  void validate() const;
};

// Envelope matching a RampSpec: SMART sine for a/b, constant for dressed.
STSystem st_system(const RampSpec& ramp, const DriveSettings& drive = {});

struct StEvolution {
  std::array<double, 5> populations{};
  double norm_defect = 0.0;  // | sum p - 1 |

  double p(StState s) const { return populations[static_cast<std::size_t>(s)]; }
};

// Evolves `initial` through the ramp (or its time reverse when `reverse`).
StEvolution st_evolve(const STSystem& sys, const RampSpec& ramp, StState initial,
                      bool reverse = false, const PropagationConfig& cfg = {});

struct RampPoint {
  double ramp_time = 0.0;
  double dnu1 = 0.0;
  double dnu2 = 0.0;
  StEvolution result;
};

// (dnu1, dnu2) over {0, +-0.05, +-0.1} MHz.
std::vector<std::pair<double, double>> default_st_offsets();

// Starts in S(0,2) and ramps eps from eps_start to eps_end.
std::vector<RampPoint> ramp_initialisation(const STSystem& sys, const RampSpec& ramp,
                                           std::span<const double> ramp_times,
                                           std::span<const std::pair<double, double>> offsets,
                                           const PropagationConfig& cfg = {}, int workers = 1);

// Time-reversed profile from `initial` (S(1,1) by default); the result's
// p(s02) is the return probability.
std::vector<RampPoint> ramp_readout(const STSystem& sys, const RampSpec& ramp,
                                    std::span<const double> ramp_times,
                                    std::span<const std::pair<double, double>> offsets,
                                    StState initial = StState::s11,
                                    const PropagationConfig& cfg = {}, int workers = 1);

// Smallest ramp time in the (sorted) sweep from which the worst-offset
// P_S(1,1) stays above threshold; NaN if never.
double init_threshold_time(const std::vector<RampPoint>& points, double threshold = 0.99);

struct EnergyDiagram {
  std::vector<double> eps;                    // GHz
  std::vector<std::array<double, 5>> levels;  // GHz, ascending
  double time = 0.0;                          // us, envelope evaluation time
};

EnergyDiagram st_energy_diagram(const STSystem& sys, std::span<const double> eps_grid,
                                double time);

// Smallest splitting between adjacent levels over [eps_lo, eps_hi], refined
// by golden-section search around the coarse minimum. GHz.
double st_min_gap(const STSystem& sys, double eps_lo, double eps_hi, double time,
                  int coarse_points = 2001);

}  // namespace smart
