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

// Dense complex linear algebra and time-ordered propagation.
//
// Units: every Hamiltonian is stored as H/h in MHz and every time in
// microseconds, so a step of length dt contributes exp(-i 2 pi (H/h) dt).

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace smart {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace pauli {
const Matrix2& identity();
const Matrix2& x();
const Matrix2& y();
const Matrix2& z();
// sigma_x, sigma_y, sigma_z by index 0..2.
const Matrix2& by_index(int axis);
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);

// A dense unitary of dimension 2, 4 or 5.
class Unitary {
 public:
  explicit Unitary(Matrix m);

  static Unitary identity(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  Unitary adjoint() const { return Unitary(m_.adjoint()); }
  // max-entry norm of U^dagger U - I
  double unitarity_defect() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);

 private:
  Matrix m_;
};

Unitary kron(const Unitary& a, const Unitary& b);

// Max-entry distance between two matrices of equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

enum class Frame { lab, rotating, dressed };

// Time-dependent Hermitian generator. Qubit (dim 2) Hamiltonians are held as
// a field vector b(t) with H/h = 1/2 b(t).sigma so the propagator can use the
// closed-form Pauli exponential; larger systems hold a dense matrix function.
class HamiltonianSpec {
 public:
  using FieldFn = std::function<Vector3(double)>;
  using MatrixFn = std::function<Matrix(double)>;

  static HamiltonianSpec qubit(FieldFn field, Frame frame, double reference_period);
  static HamiltonianSpec dense(int dim, MatrixFn matrix, Frame frame,
                               double reference_period);

  // Times at which the generator may be discontinuous; propagation never
  // straddles one with a single step.
  HamiltonianSpec& with_breakpoints(std::vector<double> times);

  int dim() const noexcept { return dim_; }
  Frame frame() const noexcept { return frame_; }
  bool is_qubit() const noexcept { return static_cast<bool>(field_); }
  double reference_period() const noexcept { return reference_period_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  // Field vector (qubit form only).
  Vector3 field(double t) const;
  // Dense H/h at t for either form.
  Matrix matrix(double t) const;

 private:
  HamiltonianSpec() = default;

  int dim_ = 0;
  Frame frame_ = Frame::dressed;
  double reference_period_ = 1.0;
  FieldFn field_;
  MatrixFn matrix_;
  std::vector<double> breakpoints_;
};

enum class Integrator {
  midpoint,  // one midpoint sample per step, second order
  magnus4,   // two Gauss-Legendre samples plus commutator, fourth order
};

struct PropagationConfig {
  int steps_per_period = 4096;
  Integrator integrator = Integrator::magnus4;
  int min_steps_per_segment = 16;

  void validate() const;
};

struct Segment {
  double t0;
  double t1;
  int steps;
};

// Splits [t0, t1] at the Hamiltonian's breakpoints and assigns each piece
// steps_per_period steps per reference period.
std::vector<Segment> plan_segments(const HamiltonianSpec& h, double t0, double t1,
                                   const PropagationConfig& cfg);

// Time-ordered propagator U(t1, t0).
Unitary propagate(const HamiltonianSpec& h, double t0, double t1,
                  const PropagationConfig& cfg = {});

// Same, with an explicit step plan. Segments must be contiguous and ordered.
Unitary propagate_segments(const HamiltonianSpec& h, std::span<const Segment> segments,
                           const PropagationConfig& cfg = {});

// exp(-i 2 pi dt * 1/2 b.sigma)
Matrix2 qubit_step(const Vector3& field, double dt);
// exp(-i G) for Hermitian G.
Matrix expi_hermitian(const Matrix& generator);

enum class FidelityMetric {
  operator_overlap,  // |Tr(V^dagger U)|^2 / d^2
  average_gate,      // (|Tr(V^dagger U)|^2 + d) / (d (d + 1))
};

double fidelity(const Unitary& u, const Unitary& target,
                FidelityMetric metric = FidelityMetric::operator_overlap);

}  // namespace smart
