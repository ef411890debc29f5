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

#include "smart/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "smart/bessel.hpp"
#include "smart/errors.hpp"

namespace smart {

double optimal_mod_frequency(double omega_r, int root_index) {
  if (!(omega_r > 0.0)) {
    throw DomainError("optimal_mod_frequency: omega_r must be positive");
  }
  return omega_r * std::sqrt(2.0) / bessel_j0_zero(root_index);
}

namespace {

int axis_index(NoiseAxis axis) {
  switch (axis) {
    case NoiseAxis::x: return 0;
    case NoiseAxis::y: return 1;
    case NoiseAxis::z: return 2;
  }
  return 0;
}

// U^dagger sigma_axis U for the sigma_z drive, as a 2x2 matrix.
Matrix2 toggled_operator(const Waveform& envelope, int axis, double t) {
  const double phase = kPi * envelope.integral(t);
  Matrix2 u = Matrix2::Zero();
  u(0, 0) = std::polar(1.0, -phase);
  u(1, 1) = std::polar(1.0, phase);
  return u.adjoint() * pauli::by_index(axis) * u;
}

Vector3 pauli_coefficients(const Matrix2& m) {
  return {0.5 * (pauli::x() * m).trace().real(), 0.5 * (pauli::y() * m).trace().real(),
          0.5 * (pauli::z() * m).trace().real()};
}

Vector3 toggled_vector(const Waveform& envelope, int axis, double t) {
  return pauli_coefficients(toggled_operator(envelope, axis, t));
}

int even_at_least(int n) { return n % 2 == 0 ? n : n + 1; }

}  // namespace

Vector3 magnus_first_order(const Waveform& envelope, NoiseAxis axis, double total_time,
                           int intervals) {
  if (!(total_time > 0.0)) {
    throw DomainError("magnus_first_order: T must be positive");
  }
  const int n = even_at_least(std::max(intervals, 2));
  const int ax = axis_index(axis);
  const double h = total_time / n;
  Vector3 acc = toggled_vector(envelope, ax, 0.0) + toggled_vector(envelope, ax, total_time);
  for (int k = 1; k < n; ++k) {
    acc += (k % 2 == 1 ? 4.0 : 2.0) * toggled_vector(envelope, ax, k * h);
  }
  return acc * (h / 3.0);
}

SpaceCurve space_curve(const Waveform& envelope, double total_time, int n_samples,
                       NoiseAxis axis) {
  if (n_samples < 100) {
    throw DomainError("space_curve: n_samples must be >= 100");
  }
  if (!(total_time > 0.0)) {
    throw DomainError("space_curve: T must be positive");
  }
  const int ax = axis_index(axis);
  const int segments = n_samples - 1;
  const int sub = even_at_least(std::max(
      2, static_cast<int>(std::ceil(double(kDefaultQuadratureIntervals) / segments))));
  const double dt = total_time / segments;
  const double h = dt / sub;

  SpaceCurve curve;
  curve.total_time = total_time;
  curve.samples.reserve(n_samples);
  curve.samples.push_back({0.0, 0.0, 0.0, 0.0});
  Vector3 s = Vector3::Zero();
  Vector3 left = toggled_vector(envelope, ax, 0.0);
  for (int i = 0; i < segments; ++i) {
    const double t0 = i * dt;
    Vector3 acc = left;
    for (int k = 1; k < sub; ++k) {
      acc += (k % 2 == 1 ? 4.0 : 2.0) * toggled_vector(envelope, ax, t0 + k * h);
    }
    const double t1 = (i + 1 == segments) ? total_time : (i + 1) * dt;
    const Vector3 right = toggled_vector(envelope, ax, t1);
    acc += right;
    s += acc * (h / 3.0);
    left = right;
    curve.samples.push_back({t1, s[0], s[1], s[2]});
  }
  return curve;
}

double SpaceCurve::closure_defect() const {
  if (samples.empty()) return 0.0;
  return (point(samples.size() - 1) - point(0)).norm();
}

double ProjectedAreas::max_abs() const {
  return std::max({std::abs(xy), std::abs(xz), std::abs(yz)});
}

ProjectedAreas projected_areas(const SpaceCurve& curve) {
  ProjectedAreas a;
  const auto& s = curve.samples;
  if (s.size() < 2) return a;
  // Shoelace over the polyline, closed implicitly from the last sample back
  // to the first.
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& p = s[i];
    const auto& q = s[(i + 1) % s.size()];
    a.xy += p.x * q.y - q.x * p.y;
    a.xz += p.x * q.z - q.x * p.z;
    a.yz += p.y * q.z - q.y * p.z;
  }
  a.xy *= 0.5;
  a.xz *= 0.5;
  a.yz *= 0.5;
  return a;
}

MagnusReport magnus_report(const Waveform& envelope, NoiseAxis axis, double total_time,
                           int n_samples) {
  MagnusReport r;
  r.a1 = magnus_first_order(envelope, axis, total_time);
  const SpaceCurve curve = space_curve(envelope, total_time, n_samples, axis);
  r.closure_defect = curve.closure_defect();
  r.projected_areas = projected_areas(curve);
  const auto& pa = r.projected_areas;
  r.a2_norm = 2.0 * std::sqrt(pa.xy * pa.xy + pa.xz * pa.xz + pa.yz * pa.yz);
  return r;
}

std::vector<double> curvature(const SpaceCurve& curve) {
  const auto& s = curve.samples;
  std::vector<double> kappa(s.size(), 0.0);
  if (s.size() < 3) return kappa;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h = s[i + 1].t - s[i].t;
    const Vector3 d1 = (curve.point(i + 1) - curve.point(i - 1)) / (2.0 * h);
    const Vector3 d2 =
        (curve.point(i + 1) - 2.0 * curve.point(i) + curve.point(i - 1)) / (h * h);
    const double speed = d1.norm();
    kappa[i] = speed > 0.0 ? d1.cross(d2).norm() / (speed * speed * speed) : 0.0;
  }
  kappa.front() = kappa[1];
  kappa.back() = kappa[s.size() - 2];
  return kappa;
}

std::vector<double> filter_function(const Waveform& envelope, std::span<const double> freqs,
                                    double total_time) {
  if (!(total_time > 0.0)) {
    throw DomainError("filter_function: T must be positive");
  }
  // Peak drive magnitude bounds the toggling-frame oscillation rate.
  double peak = 0.0;
  for (int k = 0; k <= 1024; ++k) {
    peak = std::max(peak, std::abs(envelope(total_time * k / 1024.0)));
  }
  std::vector<double> out;
  out.reserve(freqs.size());
  for (double f : freqs) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw DomainError("filter_function: frequencies must be non-negative");
    }
    const double cycles = (f + peak) * total_time;
    const int n = even_at_least(
        std::max(kDefaultQuadratureIntervals / 4, static_cast<int>(64.0 * cycles)));
    const double h = total_time / n;
    Matrix2 acc = Matrix2::Zero();
    for (int k = 0; k <= n; ++k) {
      const double t = k * h;
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      acc += (w * std::polar(1.0, -kTwoPi * f * t)) * toggled_operator(envelope, 0, t);
    }
    acc *= h / 3.0;
    out.push_back(acc.norm() / total_time);
  }
  return out;
}

double peak_rotation_angle(const Waveform& envelope, double total_time) {
  if (!(total_time > 0.0)) {
    throw DomainError("peak_rotation_angle: T must be positive");
  }
  constexpr int kSamples = 4096;
  auto angle = [&](double t) { return std::abs(kTwoPi * envelope.integral(t)); };
  int best = 0;
  double best_val = -1.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double v = angle(total_time * k / kSamples);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  // Golden-section refinement inside the neighbouring cells.
  double lo = total_time * std::max(0, best - 1) / kSamples;
  double hi = total_time * std::min(kSamples, best + 1) / kSamples;
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double fa = angle(a);
  double fb = angle(b);
  for (int it = 0; it < 100 && hi - lo > 1e-14 * total_time; ++it) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = angle(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = angle(b);
    }
  }
  return std::max({best_val, fa, fb});
}

}  // namespace smart
