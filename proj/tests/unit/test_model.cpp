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


#include <gtest/gtest.h>

#include <cmath>

#include "smart/errors.hpp"
#include "smart/geometry.hpp"
#include "smart/model.hpp"
#include "smart/numerics.hpp"

namespace smart {
namespace {

const double kFmod = optimal_mod_frequency(1.0);

double rms(const Waveform& w, double period, int n = 20000) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = w((i + 0.5) * period / n);
    acc += v * v;
  }
  return std::sqrt(acc / n);
}

TEST(Model, SmartEnvelopeShape) {
  const Waveform s = smart_envelope(1.0, kFmod, ModulationVariant::sine);
  EXPECT_EQ(s(0.0), 0.0);
  EXPECT_NEAR(s(0.25 / kFmod), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(rms(s, 1.0 / kFmod), 1.0, 1e-9);
  const Waveform c = smart_envelope(1.0, kFmod, ModulationVariant::cosine);
  EXPECT_NEAR(c(0.0), std::sqrt(2.0), 1e-12);
  // Equal RMS power with the constant dressed drive over integer periods.
  EXPECT_NEAR(rms(c, 3.0 / kFmod), rms(dressed_envelope(1.0), 3.0 / kFmod), 1e-9);
}

TEST(Model, EnvelopeErrors) {
  EXPECT_THROW(smart_envelope(0.0, kFmod, ModulationVariant::sine), DomainError);
  EXPECT_THROW(smart_envelope(1.0, -1.0, ModulationVariant::sine), DomainError);
  EXPECT_THROW(local_control_term(3, 0.1, 0.0, kFmod), DomainError);
}

TEST(Model, LocalControlTerm) {
  const Waveform v = local_control_term(1, 0.2, kPi / 2, kFmod);
  const Waveform w = local_control_term(2, 0.2, 0.0, kFmod);
  for (double t : {0.0, 0.3, 1.1}) {
    EXPECT_NEAR(v(t), 0.2 * std::cos(kTwoPi * kFmod * t), 1e-14);
    EXPECT_NEAR(w(t), 0.2 * std::sin(2 * kTwoPi * kFmod * t), 1e-14);
  }
  EXPECT_TRUE(local_control_term(1, 0.0, 0.3, kFmod).is_zero());
}

TEST(Model, HarmonicSumStartsAndEndsAtZero) {
  const Waveform h = Waveform::harmonic_sum(kFmod, {0.15, 0.33});
  EXPECT_NEAR(h(0.0), 0.0, 1e-15);
  EXPECT_NEAR(h(7.0 / kFmod), 0.0, 1e-12);
  const double t = 0.31;
  EXPECT_NEAR(h(t), 0.15 * (std::cos(kTwoPi * kFmod * t) - 1) +
                        0.33 * (std::cos(2 * kTwoPi * kFmod * t) - 1),
              1e-14);
}

TEST(Model, WaveformIntegrals) {
  const Waveform s = Waveform::sine(1.3, 0.7, 0.2);
  const double t = 0.9;
  const double expected =
      1.3 * (std::cos(0.2) - std::cos(kTwoPi * 0.7 * t + 0.2)) / (kTwoPi * 0.7);
  EXPECT_NEAR(s.integral(t), expected, 1e-14);
  const Waveform p = Waveform::piecewise_linear({{0.0, 0.0}, {1.0, 2.0}, {1.0, 4.0}, {2.0, 4.0}});
  EXPECT_NEAR(p(0.5), 1.0, 1e-15);
  EXPECT_NEAR(p(1.5), 4.0, 1e-15);
  EXPECT_NEAR(p.integral(2.0), 1.0 + 4.0, 1e-14);
}

TEST(Model, DressedNoiseScalesOnlyDrive) {
  const Waveform g = smart_envelope(1.0, kFmod, ModulationVariant::sine);
  const Waveform l = local_control_term(1, 0.1, 0.0, kFmod);
  const auto clean = build_hamiltonian({}, g, l);
  const auto noisy = build_hamiltonian({}, g, l, {0.0, 0.1});
  const auto detuned = build_hamiltonian({}, g, l, {0.05, 0.0});
  for (double t : {0.2, 0.5, 1.3}) {
    EXPECT_NEAR(noisy.field(t)[2], 1.1 * clean.field(t)[2], 1e-14);
    EXPECT_EQ(noisy.field(t)[0], clean.field(t)[0]);
    EXPECT_NEAR(detuned.field(t)[0], clean.field(t)[0] + 0.05, 1e-15);
    EXPECT_EQ(clean.field(t)[2], g(t));
    EXPECT_EQ(clean.field(t)[0], l(t));
  }
}

TEST(Model, DressedIsHadamardConjugateOfRotating) {
  const Waveform g = smart_envelope(1.0, kFmod, ModulationVariant::sine);
  const Waveform l = Waveform::harmonic_sum(kFmod, {0.15, 0.33});
  const NoiseOffset noise{0.03, -0.02};
  QubitFrameSpec rot;
  rot.frame = Frame::rotating;
  const Unitary ud = propagate(build_hamiltonian({}, g, l, noise), 0.0, 1.0 / kFmod);
  const Unitary ur = propagate(build_hamiltonian(rot, g, l, noise), 0.0, 1.0 / kFmod);
  const Matrix h = hadamard();
  EXPECT_LT(max_abs_diff(ud.matrix(), h * ur.matrix() * h), 1e-12);
}

TEST(Model, LabFrameAgreesWithRotatingFrame) {
  QubitFrameSpec lab;
  lab.frame = Frame::lab;
  lab.f_mw = 100.0;
  QubitFrameSpec rot;
  rot.frame = Frame::rotating;
  const Waveform g = Waveform::constant(1.0);
  const Waveform l = Waveform::constant(0.0);
  const double t = 10.0 / *lab.f_mw;  // ten carrier periods
  const Unitary ul = propagate(build_hamiltonian(lab, g, l), 0.0, t);
  const Unitary ur = propagate(build_hamiltonian(rot, g, l), 0.0, t);
  EXPECT_GT(fidelity(ul, ur), 0.999);
  EXPECT_LT(ul.unitarity_defect(), 1e-10);
}

TEST(Model, LabFrameNeedsCarrier) {
  QubitFrameSpec lab;
  lab.frame = Frame::lab;
  EXPECT_THROW(build_hamiltonian(lab, dressed_envelope(1.0), {}), ConfigurationError);
}

}  // namespace
}  // namespace smart
