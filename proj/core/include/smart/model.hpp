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

// Control envelopes and single-qubit Hamiltonians in the lab, rotating and
// dressed frames.

#include <optional>
#include <utility>
#include <vector>

#include "smart/numerics.hpp"

namespace smart {

// Real control envelope with closed-form value and antiderivative. All
// amplitudes are in MHz, frequencies in MHz, times in us, phases in rad.
class Waveform {
 public:
  enum class Kind { constant, sine, cosine, harmonic_sum, piecewise_linear };

  Waveform() = default;  // constant zero

  static Waveform constant(double value);
  // amplitude * sin(2 pi frequency t + phase)
  static Waveform sine(double amplitude, double frequency, double phase = 0.0);
  // amplitude * cos(2 pi frequency t + phase)
  static Waveform cosine(double amplitude, double frequency, double phase = 0.0);
  // sum_k a_k (cos(2 pi k f t) - 1) with dc_offsets, sum_k a_k cos(2 pi k f t)
  // without. amplitudes[0] belongs to k = 1.
  static Waveform harmonic_sum(double fundamental, std::vector<double> amplitudes,
                               bool dc_offsets = true);
  // Linear interpolation between (t, value) knots, constant outside. Repeated
  // knot times produce an instantaneous step.
  static Waveform piecewise_linear(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;
  // Integral of the waveform from 0 to t.
  double integral(double t) const;

  Waveform scaled(double factor) const;

  Kind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return amplitude_; }
  double frequency() const noexcept { return frequency_; }
  double phase() const noexcept { return phase_; }
  const std::vector<double>& harmonic_amplitudes() const noexcept { return harmonics_; }
  bool dc_offsets() const noexcept { return dc_offsets_; }
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
  // Knot times where the waveform is not smooth.
  std::vector<double> breakpoints() const;
  bool is_zero() const;

 private:
  Kind kind_ = Kind::constant;
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
  double phase_ = 0.0;
  std::vector<double> harmonics_;
  bool dc_offsets_ = true;
  std::vector<std::pair<double, double>> knots_;
};

struct NoiseOffset {
  double delta_nu = 0.0;     // MHz, adds to the detuning term
  double delta_omega = 0.0;  // fraction, drive scales by (1 + delta_omega)
};

struct QubitFrameSpec {
  Frame frame = Frame::dressed;
  // Carrier frequency, lab frame only.
  std::optional<double> f_mw;
  // Lab-frame Larmor frequency. When absent the lab builder uses
  // f_mw + local(t), i.e. the local term is the detuning from the carrier.
  std::optional<Waveform> larmor;
  // Period used to size propagation steps; defaults to the drive period.
  std::optional<double> reference_period;
};

enum class ModulationVariant { sine, cosine };

// Omega_R sqrt(2) sin(2 pi f_mod t) or the cosine counterpart.
Waveform smart_envelope(double omega_r, double f_mod, ModulationVariant variant);

// Constant dressed envelope with the same RMS as smart_envelope.
Waveform dressed_envelope(double omega_r);

// nu sin(2 pi k f_mod t + phi_mod), k in {1, 2}.
Waveform local_control_term(int harmonic, double amplitude, double phase, double f_mod);

// dressed:  H/h = 1/2 [(1+dO) global(t) sz + (local(t) + dnu) sx]
// rotating: H/h = 1/2 [(local(t) + dnu) sz + (1+dO) global(t) sx]
// lab:      H/h = 1/2 [nu(t) sz + (1+dO) global(t) 2 cos(2 pi f_mw t) sx]
HamiltonianSpec build_hamiltonian(const QubitFrameSpec& frame, const Waveform& global,
                                  const Waveform& local, const NoiseOffset& noise = {});

// Hadamard, the rotating-to-dressed basis change.
const Matrix2& hadamard();

}  // namespace smart
