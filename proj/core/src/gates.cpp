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

#include "smart/gates.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "smart/errors.hpp"
#include "smart/geometry.hpp"
#include "smart/parallel.hpp"

namespace smart {

double RotationDecomposition::polar() const { return 0.5 * kPi - elevation; }

Matrix2 RotationDecomposition::reconstruct() const {
  Matrix2 m = std::cos(0.5 * chi) * Matrix2::Identity();
  if (axis) {
    const Vector3& r = *axis;
    m -= Complex(0.0, std::sin(0.5 * chi)) *
         (r[0] * pauli::x() + r[1] * pauli::y() + r[2] * pauli::z());
  }
  return m;
}

RotationDecomposition extract_rotation(const Unitary& u) {
  if (u.dim() != 2) {
    throw DomainError("extract_rotation requires a 2x2 unitary");
  }
  const Matrix& m = u.matrix();
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Matrix2 v = Matrix2(m) * std::polar(1.0, -0.5 * std::arg(det));

  const double a0 = 0.5 * v.trace().real();
  const Vector3 b(0.5 * (Complex(0, 1) * (v * pauli::x()).trace()).real(),
                  0.5 * (Complex(0, 1) * (v * pauli::y()).trace()).real(),
                  0.5 * (Complex(0, 1) * (v * pauli::z()).trace()).real());

  RotationDecomposition out;
  const double s = b.norm();
  if (s < 1e-12) {
    return out;
  }
  out.chi = 2.0 * std::atan2(s, a0);
  if (out.chi >= kTwoPi) out.chi -= kTwoPi;
  const Vector3 r = b / s;
  out.axis = r;
  out.azimuth = std::atan2(r[1], r[0]);
  out.elevation = std::atan2(r[2], std::hypot(r[0], r[1]));
  return out;
}

Unitary rotation(const Vector3& axis, double chi) {
  const double n = axis.norm();
  if (!(n > 0.0)) {
    throw DomainError("rotation axis must be non-zero");
  }
  const Vector3 r = axis / n;
  Matrix2 m = std::cos(0.5 * chi) * Matrix2::Identity() -
              Complex(0.0, std::sin(0.5 * chi)) *
                  (r[0] * pauli::x() + r[1] * pauli::y() + r[2] * pauli::z());
  return Unitary(Matrix(m));
}

double rotation_efficiency(double chi, double nu, int n_periods, double f_mod) {
  if (nu == 0.0 || !std::isfinite(nu)) {
    throw DomainError("rotation_efficiency: nu must be non-zero");
  }
  if (n_periods < 1 || !(f_mod > 0.0)) {
    throw DomainError("rotation_efficiency: need n_periods >= 1 and f_mod > 0");
  }
  const double duration = n_periods / f_mod;
  const double angular = kTwoPi * duration;
  const double rms = nu / std::sqrt(2.0);
  return 100.0 * chi * chi / (angular * angular * rms * rms);
}

namespace {

struct GateNameEntry {
  GateName gate;
  std::string_view name;
};

constexpr GateNameEntry kGateNames[] = {
    {GateName::identity, "I"},           {GateName::sqrt_x, "sqrt_x"},
    {GateName::sqrt_y, "sqrt_y"},        {GateName::sqrt_v, "sqrt_v"},
    {GateName::sqrt_w, "sqrt_w"},        {GateName::sqrt_x_dag, "sqrt_x_dag"},
    {GateName::sqrt_y_dag, "sqrt_y_dag"}, {GateName::sqrt_v_dag, "sqrt_v_dag"},
    {GateName::sqrt_w_dag, "sqrt_w_dag"},
};

}  // namespace

std::string_view to_string(GateName gate) {
  for (const auto& e : kGateNames) {
    if (e.gate == gate) return e.name;
  }
  return "?";
}

GateName parse_gate_name(std::string_view name) {
  for (const auto& e : kGateNames) {
    if (e.name == name) return e.gate;
  }
  if (name == "identity" || name == "i") return GateName::identity;
  throw DomainError("unknown gate name '" + std::string(name) + "'");
}

bool is_inverse(GateName gate) {
  switch (gate) {
    case GateName::sqrt_x_dag:
    case GateName::sqrt_y_dag:
    case GateName::sqrt_v_dag:
    case GateName::sqrt_w_dag:
      return true;
    default:
      return false;
  }
}

GateName inverse_of(GateName gate) {
  switch (gate) {
    case GateName::identity: return GateName::identity;
    case GateName::sqrt_x: return GateName::sqrt_x_dag;
    case GateName::sqrt_y: return GateName::sqrt_y_dag;
    case GateName::sqrt_v: return GateName::sqrt_v_dag;
    case GateName::sqrt_w: return GateName::sqrt_w_dag;
    case GateName::sqrt_x_dag: return GateName::sqrt_x;
    case GateName::sqrt_y_dag: return GateName::sqrt_y;
    case GateName::sqrt_v_dag: return GateName::sqrt_v;
    case GateName::sqrt_w_dag: return GateName::sqrt_w;
  }
  return gate;
}

double DriveSettings::mod_frequency() const {
  if (f_mod) {
    if (!(*f_mod > 0.0)) throw DomainError("f_mod must be positive");
    return *f_mod;
  }
  return optimal_mod_frequency(omega_r, 1);
}

Waveform DriveSettings::envelope() const {
  return smart_envelope(omega_r, mod_frequency(), variant);
}

HamiltonianSpec ControlProgram::hamiltonian(const NoiseOffset& noise) const {
  QubitFrameSpec frame;
  frame.frame = Frame::dressed;
  frame.reference_period = 1.0 / f_mod;
  return build_hamiltonian(frame, global, local, noise);
}

Unitary ControlProgram::evolve(const NoiseOffset& noise, const PropagationConfig& cfg) const {
  return propagate(hamiltonian(noise), 0.0, duration(), cfg);
}

AxisMaps axis_maps(std::span<const double> nu_grid, std::span<const double> phi_grid,
                   int harmonic, const DriveSettings& drive, const PropagationConfig& cfg,
                   int workers) {
  if (nu_grid.empty() || phi_grid.empty()) {
    throw DomainError("axis_maps: grids must be non-empty");
  }
  if (harmonic != 1 && harmonic != 2) {
    throw DomainError("axis_maps: harmonic must be 1 or 2");
  }
  AxisMaps maps;
  maps.harmonic = harmonic;
  maps.nu_grid.assign(nu_grid.begin(), nu_grid.end());
  maps.phi_grid.assign(phi_grid.begin(), phi_grid.end());
  maps.points.resize(nu_grid.size() * phi_grid.size());

  const double f_mod = drive.mod_frequency();
  const Waveform global = drive.envelope();
  QubitFrameSpec frame;
  frame.reference_period = 1.0 / f_mod;

  parallel_for(maps.points.size(), workers, [&](std::size_t idx) {
    const std::size_t i = idx / phi_grid.size();
    const std::size_t j = idx % phi_grid.size();
    AxisMapPoint& p = maps.points[idx];
    p.nu = nu_grid[i];
    p.phi_mod = phi_grid[j];
    const Waveform local = local_control_term(harmonic, p.nu, p.phi_mod, f_mod);
    const Unitary u = propagate(build_hamiltonian(frame, global, local), 0.0, 1.0 / f_mod, cfg);
    p.rotation = extract_rotation(u);
    p.efficiency = p.nu == 0.0 ? 0.0 : rotation_efficiency(p.rotation.chi, p.nu, 1, f_mod);
  });
  return maps;
}

ControlProgram xy_program(GateName gate, int n_periods, double nu_v, double nu_w,
                          const DriveSettings& drive) {
  if (n_periods < 1) {
    throw DomainError("gate duration must be a positive number of periods");
  }
  ControlProgram p;
  p.gate = gate;
  p.n_periods = n_periods;
  p.variant = drive.variant;
  p.omega_r = drive.omega_r;
  p.f_mod = drive.mod_frequency();
  p.global = drive.envelope();
  p.local = Waveform::harmonic_sum(p.f_mod, {nu_v, nu_w}, true);
  p.coefficients = {nu_v, nu_w};
  switch (gate) {
    case GateName::sqrt_x: p.target = rotation(Vector3::UnitX(), 0.5 * kPi); break;
    case GateName::sqrt_y: p.target = rotation(Vector3::UnitY(), 0.5 * kPi); break;
    case GateName::sqrt_x_dag: p.target = rotation(Vector3::UnitX(), -0.5 * kPi); break;
    case GateName::sqrt_y_dag: p.target = rotation(Vector3::UnitY(), -0.5 * kPi); break;
    default:
      throw DomainError("xy_program: gate must be sqrt_x, sqrt_y or an inverse");
  }
  return p;
}

GateLibrary::GateLibrary(DriveSettings drive, PropagationConfig cfg, GrapeOptions grape)
    : drive_(std::move(drive)), cfg_(cfg), grape_(std::move(grape)) {
  cfg_.validate();
  if (!(drive_.omega_r > 0.0)) {
    throw DomainError("omega_r must be positive");
  }
  grape_.propagation = cfg_;
}

ControlProgram GateLibrary::build(GateName gate, int n_periods) {
  if (n_periods < 1) {
    throw DomainError("gate duration must be a positive number of periods, got " +
                      std::to_string(n_periods));
  }
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find({gate, n_periods});
    if (it != cache_.end()) return it->second;
  }

  ControlProgram p;
  if (gate == GateName::identity) {
    p.gate = gate;
    p.n_periods = n_periods;
    p.variant = drive_.variant;
    p.omega_r = drive_.omega_r;
    p.f_mod = drive_.mod_frequency();
    p.global = drive_.envelope();
    p.local = Waveform::constant(0.0);
    p.target = Unitary::identity(2);
    p.zero_noise_fidelity = fidelity(p.evolve({}, cfg_), p.target);
  } else {
    const bool xy = gate == GateName::sqrt_x || gate == GateName::sqrt_y ||
                    gate == GateName::sqrt_x_dag || gate == GateName::sqrt_y_dag;
    p = (xy && drive_.variant == ModulationVariant::sine) ? build_xy(gate, n_periods)
                                                           : build_single_harmonic(gate, n_periods);
  }

  const double floor =
      drive_.variant == ModulationVariant::sine ? kSineGateFloor : kCosineGateFloor;
  if (p.zero_noise_fidelity < floor) {
    throw OptimizationFailure("gate " + std::string(to_string(gate)) + " (n=" +
                                  std::to_string(n_periods) + ") reached fidelity " +
                                  std::to_string(p.zero_noise_fidelity),
                              p.coefficients, p.zero_noise_fidelity);
  }

  std::lock_guard lock(mutex_);
  return cache_.emplace(std::make_pair(gate, n_periods), p).first->second;
}

ControlProgram GateLibrary::build_xy(GateName gate, int n_periods) {
  GrapeOptions opts = grape_;
  const GateName base = is_inverse(gate) ? inverse_of(gate) : gate;
  const double sign = is_inverse(gate) ? -1.0 : 1.0;
  const bool table_applies = drive_.omega_r == 1.0 && !drive_.f_mod;
  if (table_applies) {
    for (const auto& e : published_coefficients()) {
      if (e.gate == base && e.n_periods == n_periods) {
        opts.initial_guesses.emplace_back(sign * e.nu_v, sign * e.nu_w);
      }
    }
  }
  // Inverse gates mirror their partner's coefficients.
  if (is_inverse(gate)) {
    std::lock_guard lock(mutex_);
    auto it = cache_.find({base, n_periods});
    if (it != cache_.end()) {
      opts.initial_guesses.emplace_back(-it->second.coefficients.first,
                                        -it->second.coefficients.second);
    }
  }
  const ControlProgram probe = xy_program(gate, n_periods, 0.0, 0.0, drive_);
  // Known coefficients only need polishing; the full multi-start search runs
  // when there are none or they do not converge.
  GrapeResult r;
  bool polished = false;
  if (!opts.initial_guesses.empty()) {
    GrapeOptions quick = opts;
    quick.starts_per_quadrant = 0;
    try {
      r = grape_optimize(probe.target, n_periods, drive_, quick);
      polished = r.converged_starts > 0;
    } catch (const OptimizationFailure&) {
    }
  }
  if (!polished) r = grape_optimize(probe.target, n_periods, drive_, opts);
  ControlProgram p = xy_program(gate, n_periods, r.nu_v, r.nu_w, drive_);
  p.zero_noise_fidelity = fidelity(p.evolve({}, cfg_), p.target);
  return p;
}

namespace {

struct HarmonicChoice {
  int harmonic;
  double phase;
  bool named_axis;  // target is a Cartesian axis rather than the calibrated one
};

HarmonicChoice harmonic_for(GateName base, ModulationVariant variant) {
  switch (base) {
    case GateName::sqrt_v: return {1, 0.5 * kPi, false};
    case GateName::sqrt_w: return {2, 0.5 * kPi, false};
    case GateName::sqrt_x:
      if (variant == ModulationVariant::cosine) return {2, 0.5 * kPi, true};
      break;
    case GateName::sqrt_y:
      if (variant == ModulationVariant::cosine) return {1, kPi, true};
      break;
    default:
      break;
  }
  throw DomainError("no single-harmonic construction for gate " +
                    std::string(to_string(base)));
}

}  // namespace

ControlProgram GateLibrary::build_single_harmonic(GateName gate, int n_periods) {
  const GateName base = is_inverse(gate) ? inverse_of(gate) : gate;
  const double sign = is_inverse(gate) ? -1.0 : 1.0;
  const HarmonicChoice choice = harmonic_for(base, drive_.variant);
  const double f_mod = drive_.mod_frequency();
  const Waveform global = drive_.envelope();
  QubitFrameSpec frame;
  frame.reference_period = 1.0 / f_mod;
  const double duration = n_periods / f_mod;

  auto rotation_at = [&](double amplitude) {
    const Waveform local = local_control_term(choice.harmonic, sign * amplitude, choice.phase, f_mod);
    return extract_rotation(propagate(build_hamiltonian(frame, global, local), 0.0, duration, cfg_));
  };

  // chi grows monotonically from 0 with the amplitude up to well past pi/2.
  const double goal = 0.5 * kPi;
  double lo = 0.0;
  double hi = 0.05 * f_mod / n_periods;
  for (int it = 0; rotation_at(hi).chi < goal; ++it) {
    if (it > 60) throw OptimizationFailure("could not bracket pi/2 rotation", {hi, 0.0}, 0.0);
    lo = hi;
    hi *= 1.6;
  }
  for (int it = 0; it < 100 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rotation_at(mid).chi < goal ? lo : hi) = mid;
  }
  const double amplitude = sign * 0.5 * (lo + hi);

  ControlProgram p;
  p.gate = gate;
  p.n_periods = n_periods;
  p.variant = drive_.variant;
  p.omega_r = drive_.omega_r;
  p.f_mod = f_mod;
  p.global = global;
  p.local = local_control_term(choice.harmonic, amplitude, choice.phase, f_mod);
  p.coefficients = {amplitude, 0.0};
  const RotationDecomposition rot = extract_rotation(p.evolve({}, cfg_));
  if (choice.named_axis) {
    const Vector3 axis = base == GateName::sqrt_x ? Vector3::UnitX() : Vector3::UnitY();
    p.target = rotation(sign * axis, goal);
  } else {
    p.target = rotation(*rot.axis, goal);
  }
  p.zero_noise_fidelity = fidelity(p.evolve({}, cfg_), p.target);
  return p;
}

ControlProgram build_gate(GateName gate, int n_periods, ModulationVariant variant,
                          double omega_r) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<GateLibrary>> libraries;
  GateLibrary* lib = nullptr;
  {
    std::lock_guard lock(mutex);
    auto& slot = libraries[{static_cast<int>(variant), omega_r}];
    if (!slot) {
      DriveSettings drive;
      drive.omega_r = omega_r;
      drive.variant = variant;
      slot = std::make_unique<GateLibrary>(drive);
    }
    lib = slot.get();
  }
  return lib->build(gate, n_periods);
}

}  // namespace smart
