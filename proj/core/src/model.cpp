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

#include "smart/model.hpp"

#include <algorithm>
#include <cmath>

#include "smart/errors.hpp"

namespace smart {

Waveform Waveform::constant(double value) {
  Waveform w;
  w.kind_ = Kind::constant;
  w.amplitude_ = value;
  return w;
}

Waveform Waveform::sine(double amplitude, double frequency, double phase) {
  Waveform w;
  w.kind_ = Kind::sine;
  w.amplitude_ = amplitude;
  w.frequency_ = frequency;
  w.phase_ = phase;
  return w;
}

Waveform Waveform::cosine(double amplitude, double frequency, double phase) {
  Waveform w = sine(amplitude, frequency, phase);
  w.kind_ = Kind::cosine;
  return w;
}

Waveform Waveform::harmonic_sum(double fundamental, std::vector<double> amplitudes,
                                bool dc_offsets) {
  if (!(fundamental > 0.0)) {
    throw DomainError("harmonic_sum: fundamental frequency must be positive");
  }
  Waveform w;
  w.kind_ = Kind::harmonic_sum;
  w.frequency_ = fundamental;
  w.harmonics_ = std::move(amplitudes);
  w.dc_offsets_ = dc_offsets;
  return w;
}

Waveform Waveform::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) {
    throw DomainError("piecewise_linear: at least one knot required");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].first < knots[i - 1].first) {
      throw DomainError("piecewise_linear: knot times must be non-decreasing");
    }
  }
  Waveform w;
  w.kind_ = Kind::piecewise_linear;
  w.knots_ = std::move(knots);
  return w;
}

double Waveform::operator()(double t) const {
  switch (kind_) {
    case Kind::constant:
      return amplitude_;
    case Kind::sine:
      return amplitude_ * std::sin(kTwoPi * frequency_ * t + phase_);
    case Kind::cosine:
      return amplitude_ * std::cos(kTwoPi * frequency_ * t + phase_);
    case Kind::harmonic_sum: {
      double v = 0.0;
      for (std::size_t k = 0; k < harmonics_.size(); ++k) {
        const double c = std::cos(kTwoPi * static_cast<double>(k + 1) * frequency_ * t);
        v += harmonics_[k] * (dc_offsets_ ? c - 1.0 : c);
      }
      return v;
    }
    case Kind::piecewise_linear: {
      if (t <= knots_.front().first) return knots_.front().second;
      if (t >= knots_.back().first) return knots_.back().second;
      // first knot strictly after t
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double x, const auto& k) { return x < k.first; });
      const auto& [t1, v1] = *it;
      const auto& [t0, v0] = *(it - 1);
      if (t1 == t0) return v1;
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return 0.0;
}

namespace {

// Integral of a piecewise-linear function from -inf-anchored knots: returns
// the primitive P(t) with P(knots.front().first) = 0.
double pwl_primitive(const std::vector<std::pair<double, double>>& knots, double t) {
  const double ta = knots.front().first;
  if (t <= ta) return knots.front().second * (t - ta);
  double acc = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto [t0, v0] = knots[i - 1];
    const auto [t1, v1] = knots[i];
    if (t1 == t0) continue;
    if (t <= t1) {
      const double vt = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      return acc + 0.5 * (v0 + vt) * (t - t0);
    }
    acc += 0.5 * (v0 + v1) * (t1 - t0);
  }
  return acc + knots.back().second * (t - knots.back().first);
}

}  // namespace

double Waveform::integral(double t) const {
  switch (kind_) {
    case Kind::constant:
      return amplitude_ * t;
    case Kind::sine: {
      if (frequency_ == 0.0) return amplitude_ * std::sin(phase_) * t;
      const double w = kTwoPi * frequency_;
      return amplitude_ * (std::cos(phase_) - std::cos(w * t + phase_)) / w;
    }
    case Kind::cosine: {
      if (frequency_ == 0.0) return amplitude_ * std::cos(phase_) * t;
      const double w = kTwoPi * frequency_;
      return amplitude_ * (std::sin(w * t + phase_) - std::sin(phase_)) / w;
    }
    case Kind::harmonic_sum: {
      double v = 0.0;
      for (std::size_t k = 0; k < harmonics_.size(); ++k) {
        const double w = kTwoPi * static_cast<double>(k + 1) * frequency_;
        v += harmonics_[k] * (std::sin(w * t) / w - (dc_offsets_ ? t : 0.0));
      }
      return v;
    }
    case Kind::piecewise_linear:
      return pwl_primitive(knots_, t) - pwl_primitive(knots_, 0.0);
  }
  return 0.0;
}

Waveform Waveform::scaled(double factor) const {
  Waveform w = *this;
  w.amplitude_ *= factor;
  for (double& a : w.harmonics_) a *= factor;
  for (auto& k : w.knots_) k.second *= factor;
  return w;
}

std::vector<double> Waveform::breakpoints() const {
  std::vector<double> out;
  if (kind_ == Kind::piecewise_linear) {
    for (const auto& k : knots_) out.push_back(k.first);
  }
  return out;
}

bool Waveform::is_zero() const {
  switch (kind_) {
    case Kind::constant:
    case Kind::sine:
    case Kind::cosine:
      return amplitude_ == 0.0;
    case Kind::harmonic_sum:
      return std::all_of(harmonics_.begin(), harmonics_.end(),
                         [](double a) { return a == 0.0; });
    case Kind::piecewise_linear:
      return std::all_of(knots_.begin(), knots_.end(),
                         [](const auto& k) { return k.second == 0.0; });
  }
  return false;
}

Waveform smart_envelope(double omega_r, double f_mod, ModulationVariant variant) {
  if (!(omega_r > 0.0) || !(f_mod > 0.0)) {
    throw DomainError("smart_envelope: omega_r and f_mod must be positive");
  }
  const double peak = omega_r * std::sqrt(2.0);
  return variant == ModulationVariant::sine ? Waveform::sine(peak, f_mod)
                                            : Waveform::cosine(peak, f_mod);
}

Waveform dressed_envelope(double omega_r) {
  if (!(omega_r > 0.0)) {
    throw DomainError("dressed_envelope: omega_r must be positive");
  }
  return Waveform::constant(omega_r);
}

Waveform local_control_term(int harmonic, double amplitude, double phase, double f_mod) {
  if (harmonic != 1 && harmonic != 2) {
    throw DomainError("local_control_term: harmonic must be 1 or 2, got " +
                      std::to_string(harmonic));
  }
  if (!(f_mod > 0.0)) {
    throw DomainError("local_control_term: f_mod must be positive");
  }
  return Waveform::sine(amplitude, harmonic * f_mod, phase);
}

const Matrix2& hadamard() {
  static const Matrix2 h = (Matrix2() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
  return h;
}

namespace {

double natural_period(const Waveform& w) {
  switch (w.kind()) {
    case Waveform::Kind::sine:
    case Waveform::Kind::cosine:
    case Waveform::Kind::harmonic_sum:
      if (w.frequency() > 0.0) return 1.0 / w.frequency();
      break;
    case Waveform::Kind::constant:
      if (w.amplitude() != 0.0) return 1.0 / std::abs(w.amplitude());
      break;
    case Waveform::Kind::piecewise_linear:
      break;
  }
  return 0.0;
}

}  // namespace

HamiltonianSpec build_hamiltonian(const QubitFrameSpec& frame, const Waveform& global,
                                  const Waveform& local, const NoiseOffset& noise) {
  if (!std::isfinite(noise.delta_nu) || !std::isfinite(noise.delta_omega)) {
    throw DomainError("noise offsets must be finite");
  }
  const double drive_scale = 1.0 + noise.delta_omega;
  const double dnu = noise.delta_nu;

  double period = frame.reference_period.value_or(0.0);
  if (period <= 0.0) period = natural_period(global);
  if (period <= 0.0) period = natural_period(local);
  if (period <= 0.0) period = 1.0;

  std::vector<double> breaks = global.breakpoints();
  for (double b : local.breakpoints()) breaks.push_back(b);

  HamiltonianSpec h = [&]() {
    switch (frame.frame) {
      case Frame::dressed:
        return HamiltonianSpec::qubit(
            [global, local, drive_scale, dnu](double t) {
              return Vector3(local(t) + dnu, 0.0, drive_scale * global(t));
            },
            Frame::dressed, period);
      case Frame::rotating:
        return HamiltonianSpec::qubit(
            [global, local, drive_scale, dnu](double t) {
              return Vector3(drive_scale * global(t), 0.0, local(t) + dnu);
            },
            Frame::rotating, period);
      case Frame::lab: {
        if (!frame.f_mw || !(*frame.f_mw > 0.0)) {
          throw ConfigurationError("lab frame requires a positive f_mw");
        }
        const double f_mw = *frame.f_mw;
        const std::optional<Waveform> larmor = frame.larmor;
        const double lab_period = frame.reference_period.value_or(1.0 / f_mw);
        return HamiltonianSpec::qubit(
            [global, local, larmor, f_mw, drive_scale, dnu](double t) {
              const double nu = larmor ? (*larmor)(t) : f_mw + local(t);
              const double carrier = 2.0 * std::cos(kTwoPi * f_mw * t);
              return Vector3(drive_scale * global(t) * carrier, 0.0, nu + dnu);
            },
            Frame::lab, lab_period);
      }
    }
    throw ConfigurationError("unknown frame");
  }();
  h.with_breakpoints(std::move(breaks));
  return h;
}

}  // namespace smart
