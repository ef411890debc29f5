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

// Magnus-expansion diagnostics for a global drive acting on sigma_z in the
// dressed basis: first-order term, space curve, projected areas (second
// order), the Bessel-root modulation condition and the filter function.

#include <span>
#include <vector>

#include "smart/model.hpp"
#include "smart/numerics.hpp"

namespace smart {

enum class NoiseAxis { x, y, z };

// f_mod = Omega_R sqrt(2) / j_i with j_i the i-th zero of J0.
double optimal_mod_frequency(double omega_r, int root_index = 1);

struct CurveSample {
  double t;
  double x;
  double y;
  double z;
};

struct SpaceCurve {
  std::vector<CurveSample> samples;
  double total_time = 0.0;

  Vector3 point(std::size_t i) const {
    return {samples[i].x, samples[i].y, samples[i].z};
  }
  // |s(T) - s(0)|
  double closure_defect() const;
};

struct ProjectedAreas {
  double xy = 0.0;
  double xz = 0.0;
  double yz = 0.0;

  double max_abs() const;
};

struct MagnusReport {
  Vector3 a1 = Vector3::Zero();  // sigma_x, sigma_y, sigma_z coefficients of A1(T)
  double a2_norm = 0.0;          // 2 |area vector|, the A2 coefficient norm of a closed curve
  double closure_defect = 0.0;
  ProjectedAreas projected_areas;
};

inline constexpr int kDefaultQuadratureIntervals = 16384;

// A1(T) / delta_beta on the Pauli basis: integral over [0, T] of
// U^dagger sigma_axis U, U(t) = exp(-i pi int_0^t Omega sigma_z).
Vector3 magnus_first_order(const Waveform& envelope, NoiseAxis axis, double total_time,
                           int intervals = kDefaultQuadratureIntervals);

// s(t) = cumulative A1(t), sampled at n_samples equally spaced times
// including 0 and T.
SpaceCurve space_curve(const Waveform& envelope, double total_time, int n_samples,
                       NoiseAxis axis = NoiseAxis::x);

// Signed shoelace areas of the curve projected on the xy, xz and yz planes.
ProjectedAreas projected_areas(const SpaceCurve& curve);

MagnusReport magnus_report(const Waveform& envelope, NoiseAxis axis, double total_time,
                           int n_samples = 4001);

// Pointwise curvature |s' x s''| / |s'|^3 from central differences; the two
// end samples reuse their neighbours' values.
std::vector<double> curvature(const SpaceCurve& curve);

// Susceptibility to a single noise tone exp(-2 pi i f t) on sigma_x: the
// Frobenius norm of the tone-weighted A1 integral, divided by T.
std::vector<double> filter_function(const Waveform& envelope, std::span<const double> freqs,
                                    double total_time);

// max over t in [0, T] of |2 pi int_0^t Omega|.
double peak_rotation_angle(const Waveform& envelope, double total_time);

}  // namespace smart
