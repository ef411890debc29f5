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
#include "smart/numerics.hpp"

namespace smart {
namespace {

// Scaling-and-squaring Taylor exponential of -i*g, used as an independent oracle.
Matrix taylor_expmi(const Matrix& g) {
  int squarings = 0;
  double norm = g.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const Matrix a = Complex(0.0, -1.0) * g / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(g.rows(), g.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(n(rng), n(rng));
  return 0.5 * (m + m.adjoint());
}

HamiltonianSpec smooth_qubit() {
  return HamiltonianSpec::qubit(
      [](double t) {
        return Vector3(0.4 * std::cos(kTwoPi * 0.7 * t), 0.2,
                       1.3 * std::sin(kTwoPi * 0.588 * t));
      },
      Frame::dressed, 1.0);
}

TEST(Numerics, HermitianExponentialMatchesTaylor) {
  std::mt19937_64 rng(3);
  for (int dim : {2, 4, 5}) {
    const Matrix g = random_hermitian(dim, rng);
    EXPECT_LT(max_abs_diff(expi_hermitian(g), taylor_expmi(g)), 1e-12) << "dim " << dim;
  }
}

TEST(Numerics, ClosedFormQubitStepMatchesTaylor) {
  const Vector3 b(0.3, -1.1, 0.7);
  const double dt = 0.37;
  Matrix g = Matrix::Zero(2, 2);
  for (int k = 0; k < 3; ++k) g += kPi * dt * b[k] * Matrix(pauli::by_index(k));
  EXPECT_LT(max_abs_diff(Matrix(qubit_step(b, dt)), taylor_expmi(g)), 1e-13);
}

TEST(Numerics, ZeroHamiltonianGivesIdentity) {
  const auto h = HamiltonianSpec::qubit([](double) { return Vector3::Zero(); }, Frame::dressed, 1.0);
  const Unitary u = propagate(h, 0.0, 3.7);
  EXPECT_LT(max_abs_diff(u.matrix(), Matrix::Identity(2, 2)), 1e-15);
}

TEST(Numerics, ConstantFieldIsClosedFormZRotation) {
  // H = (1/2) sigma_z at 1 MHz for 0.5 us: exp(-i pi/2 sigma_z), a rotation by pi.
  const auto h = HamiltonianSpec::qubit([](double) { return Vector3(0.0, 0.0, 1.0); },
                                        Frame::dressed, 1.0);
  const Unitary u = propagate(h, 0.0, 0.5);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::polar(1.0, -kPi / 2);
  expected(1, 1) = std::polar(1.0, kPi / 2);
  EXPECT_LT(max_abs_diff(u.matrix(), expected), 1e-9);
  EXPECT_NEAR(extract_rotation(u).chi, kPi, 1e-9);
}

TEST(Numerics, UnitarityAndComposition) {
  const auto h = smooth_qubit();
  const Unitary a = propagate(h, 0.0, 0.8);
  const Unitary b = propagate(h, 0.8, 2.1);
  const Unitary full = propagate(h, 0.0, 2.1);
  EXPECT_LT(full.unitarity_defect(), 1e-10);
  EXPECT_LT(max_abs_diff(full.matrix(), (b * a).matrix()), 1e-9);

  std::mt19937_64 rng(11);
  const Matrix g0 = random_hermitian(4, rng);
  const Matrix g1 = random_hermitian(4, rng);
  const auto dense = HamiltonianSpec::dense(
      4, [&](double t) -> Matrix { return g0 + std::sin(3.0 * t) * g1; }, Frame::dressed, 1.0);
  const Unitary d1 = propagate(dense, 0.0, 0.4);
  const Unitary d2 = propagate(dense, 0.4, 1.0);
  const Unitary d = propagate(dense, 0.0, 1.0);
  EXPECT_EQ(d.dim(), 4);
  EXPECT_LT(d.unitarity_defect(), 1e-10);
  EXPECT_LT(max_abs_diff(d.matrix(), (d2 * d1).matrix()), 1e-9);
}

TEST(Numerics, HalvingTestAtDefaultSettings) {
  const auto h = smooth_qubit();
  PropagationConfig fine;
  fine.steps_per_period = 2 * fine.steps_per_period;
  const double diff =
      max_abs_diff(propagate(h, 0.0, 5.0).matrix(), propagate(h, 0.0, 5.0, fine).matrix());
  EXPECT_LT(diff, 1e-9);
}

double convergence_ratio(Integrator integrator) {
  const auto h = smooth_qubit();
  PropagationConfig ref;
  ref.steps_per_period = 1 << 14;
  const Matrix exact = propagate(h, 0.0, 3.0, ref).matrix();
  PropagationConfig coarse;
  coarse.integrator = integrator;
  coarse.steps_per_period = 64;
  PropagationConfig half = coarse;
  half.steps_per_period = 128;
  const double e1 = max_abs_diff(propagate(h, 0.0, 3.0, coarse).matrix(), exact);
  const double e2 = max_abs_diff(propagate(h, 0.0, 3.0, half).matrix(), exact);
  return e1 / e2;
}

TEST(Numerics, StepConvergenceOrder) {
  EXPECT_GE(convergence_ratio(Integrator::midpoint), 3.5);
  EXPECT_GE(convergence_ratio(Integrator::magnus4), 12.0);
}

TEST(Numerics, FidelityExamples) {
  const Unitary id = Unitary::identity(2);
  const Unitary x = rotation({1, 0, 0}, kPi);
  const Unitary z = rotation({0, 0, 1}, kPi / 2);
  EXPECT_DOUBLE_EQ(fidelity(x, x), 1.0);
  EXPECT_NEAR(fidelity(x, id), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(z, id), std::pow(std::cos(kPi / 4), 2), 1e-15);
  // Average gate fidelity of orthogonal Paulis: d / (d (d + 1)) = 1/3.
  EXPECT_NEAR(fidelity(x, id, FidelityMetric::average_gate), 1.0 / 3.0, 1e-15);
}

TEST(Numerics, FidelityIgnoresGlobalPhase) {
  const Unitary u = rotation(Vector3(1, 2, 3).normalized(), 1.1);
  const Unitary v = rotation(Vector3(0, 1, 1).normalized(), 0.4);
  const Unitary phased(std::polar(1.0, 0.83) * u.matrix());
  EXPECT_NEAR(fidelity(phased, v), fidelity(u, v), 1e-14);
  EXPECT_NEAR(fidelity(v, phased), fidelity(v, u), 1e-14);
}

TEST(Numerics, Errors) {
  const auto h = smooth_qubit();
  EXPECT_THROW(propagate(h, 1.0, 0.0), DomainError);
  EXPECT_THROW(fidelity(Unitary::identity(2), Unitary::identity(4)), DomainError);
  PropagationConfig bad;
  bad.steps_per_period = 32;
  EXPECT_THROW(bad.validate(), DomainError);
  const auto nan = HamiltonianSpec::qubit(
      [](double t) { return Vector3(t > 0.5 ? std::nan("") : 0.0, 0.0, 1.0); }, Frame::dressed, 1.0);
  try {
    propagate(nan, 0.0, 1.0);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.time(), 0.5);
    EXPECT_LT(e.time(), 0.51);
  }
}

TEST(Numerics, KronOrdering) {
  const Matrix k = kron(Matrix(pauli::z()), Matrix(pauli::identity()));
  EXPECT_EQ(k(0, 0), Complex(1.0));
  EXPECT_EQ(k(1, 1), Complex(1.0));
  EXPECT_EQ(k(2, 2), Complex(-1.0));
}

}  // namespace
}  // namespace smart
