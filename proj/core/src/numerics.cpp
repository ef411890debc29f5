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

#include "smart/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smart/errors.hpp"

namespace smart {

namespace pauli {

const Matrix2& identity() {
  static const Matrix2 m = Matrix2::Identity();
  return m;
}

const Matrix2& x() {
  static const Matrix2 m = (Matrix2() << 0, 1, 1, 0).finished();
  return m;
}

const Matrix2& y() {
  static const Matrix2 m =
      (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Matrix2& z() {
  static const Matrix2 m = (Matrix2() << 1, 0, 0, -1).finished();
  return m;
}

const Matrix2& by_index(int axis) {
  switch (axis) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
  }
  throw DomainError("pauli axis index must be 0, 1 or 2");
}

}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Unitary::Unitary(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DomainError("unitary must be square");
  }
  const auto d = m_.rows();
  if (d != 2 && d != 4 && d != 5) {
    throw DomainError("unitary dimension must be 2, 4 or 5, got " + std::to_string(d));
  }
}

Unitary Unitary::identity(int dim) { return Unitary(Matrix::Identity(dim, dim)); }

double Unitary::unitarity_defect() const {
  return max_abs_diff(m_.adjoint() * m_, Matrix::Identity(m_.rows(), m_.cols()));
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("unitary product dimension mismatch");
  }
  return Unitary(a.m_ * b.m_);
}

Unitary kron(const Unitary& a, const Unitary& b) {
  return Unitary(kron(a.matrix(), b.matrix()));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("max_abs_diff shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

HamiltonianSpec HamiltonianSpec::qubit(FieldFn field, Frame frame,
                                       double reference_period) {
  if (!(reference_period > 0.0)) {
    throw DomainError("reference period must be positive");
  }
  HamiltonianSpec h;
  h.dim_ = 2;
  h.frame_ = frame;
  h.reference_period_ = reference_period;
  h.field_ = std::move(field);
  return h;
}

HamiltonianSpec HamiltonianSpec::dense(int dim, MatrixFn matrix, Frame frame,
                                       double reference_period) {
  if (dim != 2 && dim != 4 && dim != 5) {
    throw DomainError("Hamiltonian dimension must be 2, 4 or 5");
  }
  if (!(reference_period > 0.0)) {
    throw DomainError("reference period must be positive");
  }
  HamiltonianSpec h;
  h.dim_ = dim;
  h.frame_ = frame;
  h.reference_period_ = reference_period;
  h.matrix_ = std::move(matrix);
  return h;
}

HamiltonianSpec& HamiltonianSpec::with_breakpoints(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  breakpoints_ = std::move(times);
  return *this;
}

Vector3 HamiltonianSpec::field(double t) const {
  if (!field_) {
    throw DomainError("field() requires a qubit Hamiltonian");
  }
  Vector3 b = field_(t);
  if (!b.allFinite()) {
    throw EvaluationError("non-finite Hamiltonian field", t);
  }
  return b;
}

Matrix HamiltonianSpec::matrix(double t) const {
  if (field_) {
    const Vector3 b = field(t);
    Matrix2 m = 0.5 * (b[0] * pauli::x() + b[1] * pauli::y() + b[2] * pauli::z());
    return Matrix(m);
  }
  Matrix m = matrix_(t);
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw EvaluationError("Hamiltonian matrix has wrong shape", t);
  }
  if (!m.allFinite()) {
    throw EvaluationError("non-finite Hamiltonian entry", t);
  }
  return m;
}

void PropagationConfig::validate() const {
  if (steps_per_period < 64) {
    throw DomainError("steps_per_period must be >= 64, got " +
                      std::to_string(steps_per_period));
  }
  if (min_steps_per_segment < 1) {
    throw DomainError("min_steps_per_segment must be >= 1");
  }
}

std::vector<Segment> plan_segments(const HamiltonianSpec& h, double t0, double t1,
                                   const PropagationConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw DomainError("propagation interval must be finite");
  }
  if (t1 < t0) {
    throw DomainError("propagation requires t1 >= t0");
  }
  std::vector<double> edges{t0};
  for (double b : h.breakpoints()) {
    if (b > t0 && b < t1) edges.push_back(b);
  }
  edges.push_back(t1);

  std::vector<Segment> plan;
  const double per_us = cfg.steps_per_period / h.reference_period();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    if (len <= 0.0) continue;
    const int steps = std::max(cfg.min_steps_per_segment,
                               static_cast<int>(std::ceil(len * per_us - 1e-9)));
    plan.push_back({edges[i], edges[i + 1], steps});
  }
  return plan;
}

Matrix2 qubit_step(const Vector3& field, double dt) {
  // exp(-i pi dt b.sigma) = cos(pi dt |b|) I - i sin(pi dt |b|) (b/|b|).sigma
  const double norm = field.norm();
  const double angle = kPi * dt * norm;
  if (norm == 0.0) return Matrix2::Identity();
  const double c = std::cos(angle);
  const double s = std::sin(angle) / norm;
  Matrix2 m;
  m(0, 0) = Complex(c, -s * field[2]);
  m(1, 1) = Complex(c, s * field[2]);
  m(0, 1) = Complex(-s * field[1], -s * field[0]);
  m(1, 0) = Complex(s * field[1], -s * field[0]);
  return m;
}

Matrix expi_hermitian(const Matrix& generator) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(generator);
  const Eigen::VectorXd& w = eig.eigenvalues();
  const Matrix& v = eig.eigenvectors();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases[k] = std::polar(1.0, -w[k]);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

namespace {

// Gauss-Legendre nodes for the fourth-order Magnus step sit at
// mid +- dt * sqrt(3) / 6.
constexpr double kGaussOffset = 0.28867513459481288225;  // sqrt(3)/6
constexpr double kMagnusCommutator = 0.14433756729740644113;  // sqrt(3)/12

Matrix2 qubit_segment(const HamiltonianSpec& h, const Segment& seg,
                      Integrator integrator) {
  Matrix2 u = Matrix2::Identity();
  const double dt = (seg.t1 - seg.t0) / seg.steps;
  for (int k = 0; k < seg.steps; ++k) {
    const double mid = seg.t0 + (k + 0.5) * dt;
    Vector3 b;
    if (integrator == Integrator::midpoint) {
      b = h.field(mid) * dt;
    } else {
      const Vector3 b1 = h.field(mid - kGaussOffset * dt);
      const Vector3 b2 = h.field(mid + kGaussOffset * dt);
      // For A_k = pi b_k.sigma the Magnus-4 exponent is
      // -i pi [dt/2 (b1 + b2) - (sqrt(3)/6) pi dt^2 (b1 x b2)].sigma
      b = 0.5 * dt * (b1 + b2) - 2.0 * kMagnusCommutator * kPi * dt * dt * b1.cross(b2);
    }
    u = qubit_step(b, 1.0) * u;
  }
  return u;
}

Matrix dense_segment(const HamiltonianSpec& h, const Segment& seg,
                     Integrator integrator) {
  const int d = h.dim();
  Matrix u = Matrix::Identity(d, d);
  const double dt = (seg.t1 - seg.t0) / seg.steps;
  for (int k = 0; k < seg.steps; ++k) {
    const double mid = seg.t0 + (k + 0.5) * dt;
    Matrix g;
    if (integrator == Integrator::midpoint) {
      g = (kTwoPi * dt) * h.matrix(mid);
    } else {
      const Matrix h1 = h.matrix(mid - kGaussOffset * dt);
      const Matrix h2 = h.matrix(mid + kGaussOffset * dt);
      const Matrix comm = h1 * h2 - h2 * h1;
      g = (kPi * dt) * (h1 + h2) +
          Complex(0.0, kMagnusCommutator * kTwoPi * kTwoPi * dt * dt) * comm;
      g = 0.5 * (g + g.adjoint()).eval();
    }
    u = expi_hermitian(g) * u;
  }
  return u;
}

}  // namespace

Unitary propagate_segments(const HamiltonianSpec& h, std::span<const Segment> segments,
                           const PropagationConfig& cfg) {
  cfg.validate();
  const int d = h.dim();
  Matrix u = Matrix::Identity(d, d);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& seg = segments[i];
    if (seg.t1 < seg.t0 || seg.steps < 1) {
      throw DomainError("invalid propagation segment");
    }
    if (i > 0 && std::abs(seg.t0 - segments[i - 1].t1) > 1e-12) {
      throw DomainError("propagation segments must be contiguous");
    }
    if (seg.t1 == seg.t0) continue;
    if (h.is_qubit()) {
      u = Matrix(qubit_segment(h, seg, cfg.integrator)) * u;
    } else {
      u = dense_segment(h, seg, cfg.integrator) * u;
    }
  }
  return Unitary(std::move(u));
}

Unitary propagate(const HamiltonianSpec& h, double t0, double t1,
                  const PropagationConfig& cfg) {
  const auto plan = plan_segments(h, t0, t1, cfg);
  return propagate_segments(h, plan, cfg);
}

double fidelity(const Unitary& u, const Unitary& target, FidelityMetric metric) {
  if (u.dim() != target.dim()) {
    throw DomainError("fidelity: dimension mismatch (" + std::to_string(u.dim()) +
                      " vs " + std::to_string(target.dim()) + ")");
  }
  const double d = u.dim();
  const double overlap = std::norm((target.matrix().adjoint() * u.matrix()).trace());
  double f = 0.0;
  switch (metric) {
    case FidelityMetric::operator_overlap:
      f = overlap / (d * d);
      break;
    case FidelityMetric::average_gate:
      f = (overlap + d) / (d * (d + 1.0));
      break;
  }
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace smart
