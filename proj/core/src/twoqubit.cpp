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

#include "smart/twoqubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smart/errors.hpp"
#include "smart/parallel.hpp"

namespace smart {

namespace {

const Matrix& heisenberg() {
  static const Matrix m = [] {
    Matrix s = Matrix::Zero(4, 4);
    for (int k = 0; k < 3; ++k) {
      s += kron(Matrix(pauli::by_index(k)), Matrix(pauli::by_index(k)));
    }
    return s;
  }();
  return m;
}

Matrix2 dressed_hamiltonian(const QubitTerms& q, const NoiseOffset& n, double t) {
  const double z = (1.0 + n.delta_omega) * q.global(t);
  const double x = q.local(t) + n.delta_nu;
  return 0.5 * (z * pauli::z() + x * pauli::x());
}

// A time interval of one block, either free of exchange (separable) or not.
struct Piece {
  std::size_t block;
  double t0;
  double t1;
  bool coupled;
};

std::vector<Piece> pieces_of(const TwoQubitProgram& p) {
  std::vector<Piece> out;
  const double period = 1.0 / p.f_mod;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const TwoQubitBlock& blk = p.blocks[b];
    const double len = blk.n_periods * period;
    std::vector<double> edges{0.0};
    for (double t : blk.exchange.j.breakpoints()) {
      if (t > 0.0 && t < len) edges.push_back(t);
    }
    edges.push_back(len);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double mid = 0.5 * (edges[i] + edges[i + 1]);
      out.push_back({b, edges[i], edges[i + 1], blk.exchange.j(mid) != 0.0});
    }
  }
  return out;
}

QubitTerms terms(const TwoQubitProgram& p, const TwoQubitBlock& blk, int qubit) {
  return {p.global, qubit == 0 ? blk.local1 : blk.local2, p.f_mod};
}

Matrix2 single_qubit_piece(const TwoQubitProgram& p, const Piece& piece, int qubit,
                           const NoiseOffset& noise, const PropagationConfig& cfg) {
  const QubitTerms q = terms(p, p.blocks[piece.block], qubit);
  QubitFrameSpec frame;
  frame.reference_period = 1.0 / p.f_mod;
  const Unitary u = propagate(build_hamiltonian(frame, q.global, q.local, noise), piece.t0,
                              piece.t1, cfg);
  return Matrix2(u.matrix());
}

Matrix coupled_piece(const TwoQubitProgram& p, const Piece& piece,
                     const std::pair<NoiseOffset, NoiseOffset>& noise,
                     const PropagationConfig& cfg) {
  const TwoQubitBlock& blk = p.blocks[piece.block];
  const HamiltonianSpec h =
      two_qubit_hamiltonian(terms(p, blk, 0), terms(p, blk, 1), blk.exchange, noise);
  return propagate(h, piece.t0, piece.t1, cfg).matrix();
}

Unitary ideal(GateName g) {
  switch (g) {
    case GateName::identity: return Unitary::identity(2);
    case GateName::sqrt_x: return rotation(Vector3::UnitX(), 0.5 * kPi);
    case GateName::sqrt_y: return rotation(Vector3::UnitY(), 0.5 * kPi);
    case GateName::sqrt_x_dag: return rotation(Vector3::UnitX(), -0.5 * kPi);
    case GateName::sqrt_y_dag: return rotation(Vector3::UnitY(), -0.5 * kPi);
    default: break;
  }
  throw DomainError("no ideal matrix for gate " + std::string(to_string(g)));
}

ControlProgram calibrated(GateLibrary& library, GateName g, int n) {
  try {
    return library.build(g, n);
  } catch (const OptimizationFailure& e) {
    throw ConfigurationError(std::string("constituent gate could not be calibrated: ") +
                             e.what());
  }
}

TwoQubitBlock local_block(const ControlProgram& a, const ControlProgram& b) {
  if (a.n_periods != b.n_periods) {
    throw ConfigurationError("parallel single-qubit gates must have equal duration");
  }
  TwoQubitBlock blk;
  blk.label = std::string(to_string(a.gate)) + "(x)" + std::string(to_string(b.gate));
  blk.n_periods = a.n_periods;
  blk.local1 = a.local;
  blk.local2 = b.local;
  return blk;
}

double swap_center(const DriveSettings& drive) {
  // Zero crossing of the envelope inside the first period.
  return drive.variant == ModulationVariant::sine ? 0.5 * drive.period() : 0.25 * drive.period();
}

TwoQubitProgram base_program(const DriveSettings& drive, std::string name) {
  TwoQubitProgram p;
  p.name = std::move(name);
  p.omega_r = drive.omega_r;
  p.f_mod = drive.mod_frequency();
  p.variant = drive.variant;
  p.global = drive.envelope();
  return p;
}

TwoQubitBlock swap_block(const DriveSettings& drive, double j0) {
  if (!(j0 > 0.0)) {
    throw DomainError("exchange amplitude j0 must be positive");
  }
  const double duration = 1.0 / (4.0 * j0);
  if (duration >= drive.period()) {
    throw DomainError("sqrt(SWAP) pulse does not fit in one modulation period");
  }
  TwoQubitBlock blk;
  blk.label = "sqrt_swap";
  blk.n_periods = 1;
  blk.local1 = Waveform::constant(0.0);
  blk.local2 = Waveform::constant(0.0);
  blk.exchange = ExchangeSpec::square(j0, swap_center(drive), duration);
  return blk;
}

Unitary finish(TwoQubitProgram& p, const PropagationConfig& cfg) {
  const Unitary u = p.evolve({}, cfg);
  p.zero_noise_fidelity = fidelity(u, p.target);
  return u;
}

}  // namespace

ExchangeSpec ExchangeSpec::square(double j0, double center, double duration) {
  if (!(duration > 0.0) || !(j0 >= 0.0)) {
    throw DomainError("square exchange pulse needs j0 >= 0 and duration > 0");
  }
  const double a = center - 0.5 * duration;
  const double b = center + 0.5 * duration;
  ExchangeSpec e;
  e.j = Waveform::piecewise_linear({{a, 0.0}, {a, j0}, {b, j0}, {b, 0.0}});
  e.pulse_center = center;
  e.pulse_duration = duration;
  return e;
}

HamiltonianSpec two_qubit_hamiltonian(const QubitTerms& q1, const QubitTerms& q2,
                                      const ExchangeSpec& exchange,
                                      const std::pair<NoiseOffset, NoiseOffset>& noise) {
  if (std::abs(q1.f_mod - q2.f_mod) > 1e-12 * std::max(q1.f_mod, q2.f_mod)) {
    throw ConfigurationError("both qubits must share the global modulation frequency");
  }
  if (!(q1.f_mod > 0.0)) {
    throw ConfigurationError("f_mod must be positive");
  }
  auto fn = [q1, q2, j = exchange.j, noise](double t) {
    const Matrix h1 = dressed_hamiltonian(q1, noise.first, t);
    const Matrix h2 = dressed_hamiltonian(q2, noise.second, t);
    Matrix h = kron(h1, Matrix(pauli::identity())) + kron(Matrix(pauli::identity()), h2);
    const double jt = j(t);
    if (jt != 0.0) h += (0.25 * jt) * heisenberg();
    return h;
  };
  std::vector<double> breaks = exchange.j.breakpoints();
  for (const Waveform* w : {&q1.global, &q1.local, &q2.global, &q2.local}) {
    const auto b = w->breakpoints();
    breaks.insert(breaks.end(), b.begin(), b.end());
  }
  HamiltonianSpec h = HamiltonianSpec::dense(4, fn, Frame::dressed, 1.0 / q1.f_mod);
  h.with_breakpoints(std::move(breaks));
  return h;
}

const Matrix& sqrt_swap_matrix() {
  static const Matrix m = [] {
    Matrix s = Matrix::Zero(4, 4);
    const Complex h(0.5, 0.5), l(0.5, -0.5);
    s(0, 0) = 1.0;
    s(3, 3) = 1.0;
    s(1, 1) = h;
    s(2, 2) = h;
    s(1, 2) = l;
    s(2, 1) = l;
    return s;
  }();
  return m;
}

const Matrix& swap_matrix() {
  static const Matrix m = [] {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
    return s;
  }();
  return m;
}

double TwoQubitProgram::duration() const {
  int n = 0;
  for (const auto& b : blocks) n += b.n_periods;
  return n / f_mod;
}

Unitary TwoQubitProgram::evolve(const std::pair<NoiseOffset, NoiseOffset>& noise,
                                const PropagationConfig& cfg) const {
  Matrix u = Matrix::Identity(4, 4);
  for (const Piece& piece : pieces_of(*this)) {
    Matrix step;
    if (piece.coupled) {
      step = coupled_piece(*this, piece, noise, cfg);
    } else {
      step = kron(Matrix(single_qubit_piece(*this, piece, 0, noise.first, cfg)),
                  Matrix(single_qubit_piece(*this, piece, 1, noise.second, cfg)));
    }
    u = step * u;
  }
  return Unitary(u);
}

TwoQubitProgram sqrt_swap_program(double j0, const DriveSettings& drive,
                                  const PropagationConfig& cfg) {
  TwoQubitProgram p = base_program(drive, "sqrt_swap");
  p.blocks.push_back(swap_block(drive, j0));
  p.slow_exchange_warning = j0 <= 4.0 * drive.omega_r;
  p.target = Unitary(sqrt_swap_matrix());
  finish(p, cfg);
  return p;
}

TwoQubitProgram compose_cnot(GateLibrary& library, int single_qubit_periods, double j0,
                             const PropagationConfig& cfg) {
  const DriveSettings& drive = library.drive();
  const int n = single_qubit_periods;
  const ControlProgram y = calibrated(library, GateName::sqrt_y, n);
  const ControlProgram y_dag = calibrated(library, GateName::sqrt_y_dag, n);
  const ControlProgram x = calibrated(library, GateName::sqrt_x, n);
  const ControlProgram x_dag = calibrated(library, GateName::sqrt_x_dag, n);
  const ControlProgram idle = calibrated(library, GateName::identity, n);

  TwoQubitProgram p = base_program(drive, "cnot");
  p.blocks = {local_block(y, idle), swap_block(drive, j0), local_block(x_dag, x),
              swap_block(drive, j0), local_block(y_dag, idle)};
  p.slow_exchange_warning = j0 <= 4.0 * drive.omega_r;
  const Unitary sw(sqrt_swap_matrix());
  p.target = kron(ideal(GateName::sqrt_y_dag), ideal(GateName::identity)) * sw *
             kron(ideal(GateName::sqrt_x_dag), ideal(GateName::sqrt_x)) * sw *
             kron(ideal(GateName::sqrt_y), ideal(GateName::identity));
  finish(p, cfg);
  return p;
}

TwoQubitProgram compose_cnot_x(GateLibrary& library, int single_qubit_periods, double j0,
                               const PropagationConfig& cfg) {
  const DriveSettings& drive = library.drive();
  const int n = single_qubit_periods;
  const ControlProgram x = calibrated(library, GateName::sqrt_x, n);
  const ControlProgram x_dag = calibrated(library, GateName::sqrt_x_dag, n);

  TwoQubitProgram p = base_program(drive, "cnot_x");
  p.blocks = {swap_block(drive, j0), local_block(x_dag, x), swap_block(drive, j0)};
  p.slow_exchange_warning = j0 <= 4.0 * drive.omega_r;
  const Unitary sw(sqrt_swap_matrix());
  p.target = sw * kron(ideal(GateName::sqrt_x_dag), ideal(GateName::sqrt_x)) * sw;
  finish(p, cfg);
  return p;
}

TwoQubitProgram two_qubit_idle(int n_periods, double j, const DriveSettings& drive) {
  if (n_periods < 1) {
    throw DomainError("two_qubit_idle: n_periods must be >= 1");
  }
  TwoQubitProgram p = base_program(drive, "idle");
  TwoQubitBlock blk;
  blk.label = "idle";
  blk.n_periods = n_periods;
  blk.local1 = Waveform::constant(0.0);
  blk.local2 = Waveform::constant(0.0);
  if (j != 0.0) blk.exchange.j = Waveform::constant(j);
  p.blocks.push_back(blk);
  p.target = Unitary::identity(4);
  p.zero_noise_fidelity = fidelity(p.evolve(), p.target);
  return p;
}

OffsetGrid default_two_qubit_grid(double omega_r) {
  return OffsetGrid::uniform(omega_r, 15, 0.5, 15);
}

FidelityTensor4 two_qubit_fidelity_tensor(const TwoQubitProgram& program, const OffsetGrid& grid,
                                          const PropagationConfig& cfg, int workers) {
  grid.validate();
  const std::vector<Piece> pieces = pieces_of(program);
  const std::size_t n = grid.delta_nu.size();
  const std::size_t m = grid.delta_omega.size();
  const std::size_t pairs = n * m;

  // Consecutive separable pieces are merged into one runs per qubit.
  struct Stage {
    bool coupled;
    std::vector<std::size_t> pieces;
    std::array<std::vector<Matrix2>, 2> cache;  // per qubit, index i_nu * m + i_om
  };
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].coupled || stages.empty() || stages.back().coupled) {
      stages.push_back({pieces[i].coupled, {i}, {}});
    } else {
      stages.back().pieces.push_back(i);
    }
  }
  for (Stage& s : stages) {
    if (s.coupled) continue;
    for (int q = 0; q < 2; ++q) {
      s.cache[static_cast<std::size_t>(q)].assign(pairs, Matrix2::Identity());
    }
    parallel_for(2 * pairs, workers, [&](std::size_t idx) {
      const int q = static_cast<int>(idx / pairs);
      const std::size_t k = idx % pairs;
      const NoiseOffset noise{grid.delta_nu[k / m], grid.delta_omega[k % m]};
      Matrix2 u = Matrix2::Identity();
      for (std::size_t pi : s.pieces) {
        u = single_qubit_piece(program, pieces[pi], q, noise, cfg) * u;
      }
      s.cache[static_cast<std::size_t>(q)][k] = u;
    });
  }

  FidelityTensor4 out;
  out.delta_nu_axis = grid.delta_nu;
  out.delta_omega_axis = grid.delta_omega;
  out.gate_name = program.name;
  out.values.resize(pairs * pairs);
  const Matrix target_adj = program.target.matrix().adjoint();
  parallel_for(out.values.size(), workers, [&](std::size_t idx) {
    const std::size_t i_om2 = idx % m;
    const std::size_t i_om1 = (idx / m) % m;
    const std::size_t i_nu2 = (idx / (m * m)) % n;
    const std::size_t i_nu1 = idx / (m * m * n);
    const std::size_t k1 = i_nu1 * m + i_om1;
    const std::size_t k2 = i_nu2 * m + i_om2;
    const std::pair<NoiseOffset, NoiseOffset> noise{
        {grid.delta_nu[i_nu1], grid.delta_omega[i_om1]},
        {grid.delta_nu[i_nu2], grid.delta_omega[i_om2]}};
    Matrix u = Matrix::Identity(4, 4);
    for (const Stage& s : stages) {
      if (s.coupled) {
        u = coupled_piece(program, pieces[s.pieces.front()], noise, cfg) * u;
      } else {
        u = kron(Matrix(s.cache[0][k1]), Matrix(s.cache[1][k2])) * u;
      }
    }
    out.values[idx] = std::norm((target_adj * u).trace()) / 16.0;
  });
  return out;
}

}  // namespace smart
