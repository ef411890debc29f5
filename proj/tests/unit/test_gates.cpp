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
#include <random>

#include "smart/errors.hpp"
#include "smart/gates.hpp"
#include "smart/geometry.hpp"
#include "smart/model.hpp"

namespace smart {
namespace {

const double kFmod = optimal_mod_frequency(1.0);

Unitary exp_pauli(const Vector3& generator) {
  // exp(-i g.sigma) built from the Pauli matrices directly.
  const double a = generator.norm();
  Matrix m = std::cos(a) * Matrix::Identity(2, 2);
  if (a > 0) {
    for (int k = 0; k < 3; ++k) {
      m += Complex(0.0, -std::sin(a) * generator[k] / a) * Matrix(pauli::by_index(k));
    }
  }
  return Unitary(m);
}

TEST(Gates, ExtractRotationExamples) {
  const RotationDecomposition id = extract_rotation(Unitary::identity(2));
  EXPECT_EQ(id.chi, 0.0);
  EXPECT_FALSE(id.axis.has_value());

  const RotationDecomposition x = extract_rotation(exp_pauli({kPi / 4, 0, 0}));
  EXPECT_NEAR(x.chi, kPi / 2, 1e-12);
  ASSERT_TRUE(x.axis);
  EXPECT_NEAR((*x.axis - Vector3(1, 0, 0)).norm(), 0.0, 1e-12);
  EXPECT_NEAR(x.azimuth, 0.0, 1e-12);
  EXPECT_NEAR(x.elevation, 0.0, 1e-12);

  const RotationDecomposition xz =
      extract_rotation(exp_pauli(Vector3(1, 0, 1).normalized() * (kPi / 4)));
  EXPECT_NEAR(xz.elevation, kPi / 4, 1e-12);
  EXPECT_NEAR(xz.polar(), kPi / 4, 1e-12);
}

TEST(Gates, NegativeAnglesFlipTheAxis) {
  const RotationDecomposition r = extract_rotation(exp_pauli({0, -kPi / 8, 0}));
  EXPECT_NEAR(r.chi, kPi / 4, 1e-12);
  EXPECT_NEAR((*r.axis - Vector3(0, -1, 0)).norm(), 0.0, 1e-12);
  const RotationDecomposition big = extract_rotation(rotation({0, 0, 1}, 1.7 * kPi));
  EXPECT_GE(big.chi, 0.0);
  EXPECT_LT(big.chi, kTwoPi);
}

TEST(Gates, ReconstructionRoundTrip) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const Vector3 g(n(rng), n(rng), n(rng));
    const Unitary u(std::polar(1.0, phase(rng)) * exp_pauli(g).matrix());
    const RotationDecomposition r = extract_rotation(u);
    ASSERT_TRUE(r.axis);
    EXPECT_NEAR(r.axis->norm(), 1.0, 1e-9);
    EXPECT_NEAR(std::atan2((*r.axis)[1], (*r.axis)[0]), r.azimuth, 1e-12);
    EXPECT_GT(fidelity(Unitary(Matrix(r.reconstruct())), u), 1.0 - 1e-8);
    EXPECT_LT(max_abs_diff(rotation(*r.axis, r.chi).matrix(), Matrix(r.reconstruct())), 1e-12);
  }
}

TEST(Gates, RotationEfficiencyFormula) {
  // eta = 100 chi^2 / ((2 pi n T)^2 (nu / sqrt 2)^2)
  const double chi = 0.3, nu = 0.05;
  const double t = 2.0 / kFmod;
  EXPECT_NEAR(rotation_efficiency(chi, nu, 2, kFmod),
              100.0 * chi * chi / (std::pow(kTwoPi * t, 2) * nu * nu / 2.0), 1e-9);
  EXPECT_THROW(rotation_efficiency(0.1, 0.0, 1, kFmod), DomainError);
}

TEST(Gates, DressedResonantControlIsHalfEfficient) {
  // Dressed qubit driven on resonance with its Rabi splitting: rotating-wave
  // field nu/2 out of an RMS nu/sqrt(2).
  const double nu = 0.01;
  const int periods = 20;
  const auto h = build_hamiltonian({}, dressed_envelope(1.0), Waveform::cosine(nu, 1.0));
  const RotationDecomposition r = extract_rotation(propagate(h, 0.0, periods * 1.0));
  EXPECT_NEAR(rotation_efficiency(r.chi, nu, periods, 1.0), 50.0, 0.5);
}

TEST(Gates, AxisMapsSmallDriveAreaPerpendicular) {
  const std::vector<double> nu = {0.005};
  const std::vector<double> phi = {0.0, kPi / 2};
  const AxisMaps v = axis_maps(nu, phi, 1);
  const AxisMaps w = axis_maps(nu, phi, 2);
  const auto& pv = v.at(0, 1).rotation;
  const auto& pw = w.at(0, 1).rotation;
  EXPECT_NEAR(std::abs(pw.azimuth - pv.azimuth), kPi / 2, 0.02);
  EXPECT_NEAR(pv.polar(), kPi / 2, 0.02);
  EXPECT_NEAR(pw.polar(), kPi / 2, 0.02);
  EXPECT_NEAR(std::abs(pv.azimuth), 0.834, 0.01);
  for (const auto& p : v.points) EXPECT_LE(p.efficiency, 100.0);
  for (const auto& p : w.points) EXPECT_LE(p.efficiency, 100.0);
}

TEST(Gates, AxisMapsZeroDriveIsIdle) {
  const std::vector<double> nu = {0.0};
  const std::vector<double> phi = {0.0, 1.0, 2.0};
  const AxisMaps m = axis_maps(nu, phi, 1);
  for (const auto& p : m.points) {
    EXPECT_LT(p.rotation.chi < kPi ? p.rotation.chi : kTwoPi - p.rotation.chi, 1e-6);
    EXPECT_EQ(p.efficiency, 0.0);
  }
}

TEST(Gates, NamesAndInverses) {
  EXPECT_EQ(parse_gate_name("sqrt_x"), GateName::sqrt_x);
  EXPECT_EQ(parse_gate_name(to_string(GateName::sqrt_w_dag)), GateName::sqrt_w_dag);
  EXPECT_EQ(parse_gate_name("identity"), GateName::identity);
  EXPECT_THROW(parse_gate_name("hadamard"), DomainError);
  EXPECT_TRUE(is_inverse(GateName::sqrt_y_dag));
  EXPECT_EQ(inverse_of(GateName::sqrt_v), GateName::sqrt_v_dag);
  EXPECT_EQ(inverse_of(inverse_of(GateName::sqrt_x)), GateName::sqrt_x);
}

TEST(Gates, GrapeReproducesCoefficientRows) {
  struct Row {
    GateName gate;
    int n;
  };
  for (const Row row : {Row{GateName::sqrt_y, 10}, Row{GateName::sqrt_x, 7}}) {
    const CoefficientEntry* ref = nullptr;
    for (const auto& e : published_coefficients()) {
      if (e.gate == row.gate && e.n_periods == row.n) ref = &e;
    }
    ASSERT_NE(ref, nullptr);
    const Unitary target = rotation(row.gate == GateName::sqrt_x ? Vector3(1, 0, 0)
                                                                 : Vector3(0, 1, 0),
                                    kPi / 2);
    const GrapeResult r = grape_optimize(target, row.n, {});
    EXPECT_NEAR(r.nu_v, ref->nu_v, 1e-3);
    EXPECT_NEAR(r.nu_w, ref->nu_w, 1e-3);
    EXPECT_GT(r.fidelity, 1.0 - 1e-8);
  }
}

TEST(Gates, GrapeIsDeterministic) {
  const Unitary target = rotation({0, 1, 0}, kPi / 2);
  GrapeOptions opts;
  opts.starts_per_quadrant = 1;
  const GrapeResult a = grape_optimize(target, 3, {}, opts);
  const GrapeResult b = grape_optimize(target, 3, {}, opts);
  EXPECT_EQ(a.nu_v, b.nu_v);
  EXPECT_EQ(a.nu_w, b.nu_w);
}

TEST(Gates, PublishedTableConverges) {
  for (GateName g : {GateName::sqrt_x, GateName::sqrt_y}) {
    double v[11] = {}, w[11] = {};
    for (const auto& e : published_coefficients()) {
      if (e.gate != g) continue;
      const double t = e.n_periods / kFmod;
      v[e.n_periods] = e.nu_v * t;
      w[e.n_periods] = e.nu_w * t;
    }
    EXPECT_LT(std::abs(v[10] - v[7]), std::abs(v[2] - v[1]));
    EXPECT_LT(std::abs(w[10] - w[7]), std::abs(w[2] - w[1]));
  }
}

TEST(Gates, CalibratedLibrary) {
  GateLibrary lib;
  const ControlProgram id = lib.build(GateName::identity, 3);
  EXPECT_GT(fidelity(id.evolve(), Unitary::identity(2)), 1.0 - 1e-9);

  const ControlProgram sx = lib.build(GateName::sqrt_x, 7);
  const ControlProgram sxd = lib.build(GateName::sqrt_x_dag, 7);
  EXPECT_GE(sx.zero_noise_fidelity, kSineGateFloor);
  EXPECT_NEAR(sx.local(0.0), 0.0, 1e-15);
  EXPECT_NEAR(sx.local(sx.duration()), 0.0, 1e-12);
  const Unitary u = sx.evolve();
  EXPECT_GT(fidelity(u * u, rotation({1, 0, 0}, kPi)), 1.0 - 1e-6);
  EXPECT_GT(fidelity(sxd.evolve() * u, Unitary::identity(2)), 1.0 - 1e-8);

  const ControlProgram sv = lib.build(GateName::sqrt_v, 1);
  EXPECT_NEAR(extract_rotation(sv.evolve()).chi, kPi / 2, 1e-6);
  const ControlProgram sw = lib.build(GateName::sqrt_w, 1);
  EXPECT_GE(sw.zero_noise_fidelity, kSineGateFloor);
  EXPECT_THROW(lib.build(GateName::sqrt_y, 0), DomainError);
}

TEST(Gates, CosineVariantSingleHarmonics) {
  const ControlProgram x = build_gate(GateName::sqrt_x, 7, ModulationVariant::cosine);
  EXPECT_GE(x.zero_noise_fidelity, kCosineGateFloor);
  EXPECT_EQ(x.local.kind(), Waveform::Kind::sine);
}

}  // namespace
}  // namespace smart
