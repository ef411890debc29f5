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

#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "smart/errors.hpp"
#include "smart/geometry.hpp"
#include "smart/parallel.hpp"

namespace smartq {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

std::string num(double v) { return format_number(v); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n), lo);
  for (int i = 1; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

smart::OffsetGrid offset_grid(const GridSettings& g) {
  return smart::OffsetGrid::uniform(g.nu_half_width, g.nu_points, g.omega_half_width,
                                    g.omega_points);
}

Table offset_table(const smart::FidelityGrid& grid) {
  Table t{"", {"delta_nu_mhz", "delta_omega_frac", "fidelity", "infidelity"}, {}};
  for (std::size_t i = 0; i < grid.delta_nu_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_omega_axis.size(); ++j) {
      const double f = grid.at(i, j);
      t.add({num(grid.delta_nu_axis[i]), num(grid.delta_omega_axis[j]), num(f), num(1.0 - f)});
    }
  }
  return t;
}

Table noise_table(const smart::NoiseLevelMap& m, std::string suffix) {
  Table t{std::move(suffix),
          {"sigma_nu_mhz", "sigma_omega_frac", "fidelity", "infidelity", "truncation_warning"},
          {}};
  for (std::size_t i = 0; i < m.sigma_nu_axis.size(); ++i) {
    for (std::size_t j = 0; j < m.sigma_omega_axis.size(); ++j) {
      const std::size_t k = i * m.sigma_omega_axis.size() + j;
      t.add({num(m.sigma_nu_axis[i]), num(m.sigma_omega_axis[j]), num(m.values[k]),
             num(1.0 - m.values[k]), m.truncation_warning[k] ? "1" : "0"});
    }
  }
  return t;
}

void note_truncation(const smart::NoiseLevelMap& m, RunResult& r) {
  for (char w : m.truncation_warning) {
    if (w) {
      r.warnings.push_back(
          "some sigma values exceed half the grid half-width; those averages are "
          "dominated by truncation of the Gaussian");
      return;
    }
  }
}

RunResult single_qubit_maps(const Scenario& s, const smart::ControlProgram& program, int workers) {
  RunResult r;
  const auto grid = smart::offset_fidelity_map(program, offset_grid(s.grid), s.propagation, workers);
  const auto sn = linspace(0.0, s.sigma.nu_max, s.sigma.nu_points);
  const auto so = linspace(0.0, s.sigma.omega_max, s.sigma.omega_points);
  const auto noise = smart::noise_level_map(grid, sn, so);
  r.tables.push_back(offset_table(grid));
  r.tables.push_back(noise_table(noise, "_noise"));
  note_truncation(noise, r);
  r.summary["center_fidelity"] = grid.center();
  r.summary["detuning_half_width_99_mhz"] = smart::detuning_half_width(grid, 0.99);
  r.summary["duration_us"] = program.duration();
  r.summary["zero_noise_fidelity"] = program.zero_noise_fidelity;
  return r;
}

RunResult identity_map(const Scenario& s, int workers) {
  smart::ControlProgram program;
  const int rabi_periods = std::max(
      1, static_cast<int>(std::lround(s.n_periods * s.drive.period() * s.drive.omega_r)));
  if (s.reference == "smart") {
    smart::GateLibrary lib(s.drive, s.propagation);
    program = lib.build(smart::GateName::identity, s.n_periods);
  } else if (s.reference == "dressed") {
    program = smart::dressed_identity(s.drive.omega_r, rabi_periods);
  } else {
    program = smart::bare_identity(rabi_periods / s.drive.omega_r);
  }
  program.zero_noise_fidelity = smart::fidelity(program.evolve({}, s.propagation), program.target);
  RunResult r = single_qubit_maps(s, program, workers);
  r.summary["reference"] = s.reference;
  return r;
}

RunResult gate_map(const Scenario& s, int workers) {
  smart::GateLibrary lib(s.drive, s.propagation);
  const smart::ControlProgram program = lib.build(smart::parse_gate_name(s.gate), s.n_periods);
  RunResult r = single_qubit_maps(s, program, workers);
  r.summary["coefficients_mhz"] = {program.coefficients.first, program.coefficients.second};
  return r;
}

RunResult axis_map(const Scenario& s, int workers) {
  std::vector<double> nu(static_cast<std::size_t>(s.axis_nu_points));
  for (int i = 0; i < s.axis_nu_points; ++i) {
    nu[static_cast<std::size_t>(i)] = s.axis_nu_max * (i + 1) / s.axis_nu_points;
  }
  std::vector<double> phi(static_cast<std::size_t>(s.axis_phi_points));
  for (int j = 0; j < s.axis_phi_points; ++j) {
    phi[static_cast<std::size_t>(j)] = smart::kTwoPi * j / s.axis_phi_points;
  }
  const auto maps = smart::axis_maps(nu, phi, s.harmonic, s.drive, s.propagation, workers);
  RunResult r;
  Table t{"",
          {"nu_mhz", "phi_mod_rad", "chi_rad", "azimuth_rad", "elevation_rad", "polar_rad",
           "efficiency_pct"},
          {}};
  double best = -1.0;
  const smart::AxisMapPoint* best_point = nullptr;
  for (const auto& p : maps.points) {
    t.add({num(p.nu), num(p.phi_mod), num(p.rotation.chi), num(p.rotation.azimuth),
           num(p.rotation.elevation), num(p.rotation.polar()), num(p.efficiency)});
    if (p.efficiency > best) {
      best = p.efficiency;
      best_point = &p;
    }
  }
  r.tables.push_back(std::move(t));
  r.summary["max_efficiency_pct"] = best;
  if (best_point) {
    r.summary["max_efficiency_nu_mhz"] = best_point->nu;
    r.summary["max_efficiency_phi_mod_rad"] = best_point->phi_mod;
  }
  return r;
}

smart::Waveform curve_envelope(const Scenario& s, double& total_time) {
  if (s.curve == "dressed") {
    total_time = s.curve_periods / s.drive.omega_r;
    return smart::dressed_envelope(s.drive.omega_r).scaled(1.0 + s.amplitude_offset);
  }
  total_time = s.curve_periods * s.drive.period();
  return s.drive.envelope().scaled(1.0 + s.amplitude_offset);
}

RunResult space_curve(const Scenario& s, int) {
  double total = 0.0;
  const smart::Waveform env = curve_envelope(s, total);
  const auto curve = smart::space_curve(env, total, s.curve_samples);
  const auto report = smart::magnus_report(env, smart::NoiseAxis::x, total);
  RunResult r;
  Table t{"", {"t_us", "x", "y", "z", "distance_from_start"}, {}};
  const smart::Vector3 start = curve.point(0);
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& c = curve.samples[i];
    t.add({num(c.t), num(c.x), num(c.y), num(c.z), num((curve.point(i) - start).norm())});
  }
  r.tables.push_back(std::move(t));
  r.summary["closure_defect"] = curve.closure_defect();
  r.summary["projected_area_xy"] = report.projected_areas.xy;
  r.summary["projected_area_xz"] = report.projected_areas.xz;
  r.summary["projected_area_yz"] = report.projected_areas.yz;
  r.summary["a1_norm"] = report.a1.norm();
  r.summary["a2_norm"] = report.a2_norm;
  r.summary["total_time_us"] = total;
  return r;
}

RunResult filter_function(const Scenario& s, int) {
  double total = 0.0;
  const smart::Waveform env = curve_envelope(s, total);
  const auto freqs = linspace(s.f_min, s.f_max, s.f_points);
  const auto values = smart::filter_function(env, freqs, total);
  RunResult r;
  Table t{"", {"frequency_mhz", "filter"}, {}};
  for (std::size_t i = 0; i < freqs.size(); ++i) t.add({num(freqs[i]), num(values[i])});
  r.tables.push_back(std::move(t));
  r.summary["total_time_us"] = total;
  return r;
}

RunResult grape_table(const Scenario& s, int workers) {
  struct Job {
    std::string gate;
    int n;
    smart::GrapeResult result;
  };
  std::vector<Job> jobs;
  for (const auto& g : s.grape_gates) {
    for (int n : s.grape_periods) jobs.push_back({g, n, {}});
  }
  smart::GrapeOptions opts;
  opts.seed = s.seed;
  opts.starts_per_quadrant = s.starts_per_quadrant;
  opts.max_iterations = s.max_iterations;
  opts.propagation = s.propagation;
  smart::parallel_for(jobs.size(), workers, [&](std::size_t i) {
    Job& job = jobs[i];
    const auto probe = smart::xy_program(smart::parse_gate_name(job.gate), job.n, 0.0, 0.0, s.drive);
    job.result = smart::grape_optimize(probe.target, job.n, s.drive, opts);
  });
  RunResult r;
  Table t{"", {"gate", "n", "nu_v_mhz", "nu_w_mhz", "fidelity"}, {}};
  int evaluations = 0;
  for (const auto& job : jobs) {
    t.add({job.gate, std::to_string(job.n), num(job.result.nu_v), num(job.result.nu_w),
           num(job.result.fidelity)});
    evaluations += job.result.evaluations;
  }
  r.tables.push_back(std::move(t));
  r.summary["fidelity_evaluations"] = evaluations;
  return r;
}

RunResult two_qubit_map(const Scenario& s, int workers) {
  smart::TwoQubitProgram program;
  if (s.two_qubit_gate == "sqrt_swap") {
    program = smart::sqrt_swap_program(s.j0, s.drive, s.propagation);
  } else if (s.two_qubit_gate == "idle") {
    program = smart::two_qubit_idle(s.single_qubit_periods, 0.0, s.drive);
  } else {
    smart::GateLibrary lib(s.drive, s.propagation);
    program = s.two_qubit_gate == "cnot"
                  ? smart::compose_cnot(lib, s.single_qubit_periods, s.j0, s.propagation)
                  : smart::compose_cnot_x(lib, s.single_qubit_periods, s.j0, s.propagation);
  }
  const auto tensor = smart::two_qubit_fidelity_tensor(program, offset_grid(s.two_qubit_grid),
                                                       s.propagation, workers);
  const auto sn = linspace(0.0, s.sigma.nu_max, s.sigma.nu_points);
  const auto so = linspace(0.0, s.sigma.omega_max, s.sigma.omega_points);
  const auto noise = smart::two_qubit_noise_level_map(tensor, sn, so);
  RunResult r;
  r.tables.push_back(noise_table(noise, ""));
  note_truncation(noise, r);
  r.summary["zero_noise_fidelity"] = program.zero_noise_fidelity;
  r.summary["duration_us"] = program.duration();
  if (program.slow_exchange_warning) {
    r.warnings.push_back("j0 <= 4 Omega_R: the exchange pulse is not fast compared with the drive");
  }
  return r;
}

smart::RampSpec ramp_spec(const Scenario& s) {
  smart::RampSpec ramp = s.ramp_case == "dressed"
                             ? smart::RampSpec::dressed(s.drive.omega_r)
                             : smart::RampSpec::smart(s.ramp_case == "A" ? smart::RampCentering::a
                                                                         : smart::RampCentering::b,
                                                      s.drive);
  ramp.eps_start = s.eps_start;
  ramp.eps_end = s.eps_end;
  ramp.pre_step_fraction = s.pre_step_fraction;
  ramp.post_step_fraction = s.post_step_fraction;
  return ramp;
}

RunResult st_ramp(const Scenario& s, int workers, bool readout) {
  const smart::RampSpec ramp = ramp_spec(s);
  smart::STSystem sys = smart::st_system(ramp, s.drive);
  sys.t_c = s.t_c;
  std::vector<std::pair<double, double>> offsets;
  for (double a : s.offset_values) {
    for (double b : s.offset_values) offsets.emplace_back(a, b);
  }
  std::vector<smart::RampPoint> points;
  if (readout) {
    smart::StState initial = smart::StState::s11;
    if (s.readout_initial == "T0") initial = smart::StState::t_zero;
    if (s.readout_initial == "T+") initial = smart::StState::t_plus;
    if (s.readout_initial == "T-") initial = smart::StState::t_minus;
    points = smart::ramp_readout(sys, ramp, s.ramp_times, offsets, initial, s.propagation, workers);
  } else {
    points = smart::ramp_initialisation(sys, ramp, s.ramp_times, offsets, s.propagation, workers);
  }
  RunResult r;
  Table t{"", {"ramp_time_us", "dnu1_mhz", "dnu2_mhz", "p_s02", "p_s11"}, {}};
  std::map<double, double> worst;
  double norm_defect = 0.0;
  for (const auto& p : points) {
    t.add({num(p.ramp_time), num(p.dnu1), num(p.dnu2), num(p.result.p(smart::StState::s02)),
           num(p.result.p(smart::StState::s11))});
    const double key = readout ? p.result.p(smart::StState::s02) : p.result.p(smart::StState::s11);
    auto [it, inserted] = worst.emplace(p.ramp_time, key);
    if (!inserted) it->second = std::min(it->second, key);
    norm_defect = std::max(norm_defect, p.result.norm_defect);
  }
  r.tables.push_back(std::move(t));
  json w = json::array();
  for (const auto& [time, value] : worst) w.push_back({{"ramp_time_us", time}, {"worst", value}});
  r.summary[readout ? "worst_p_s02" : "worst_p_s11"] = w;
  if (!readout) {
    const double thr = smart::init_threshold_time(points, 0.99);
    r.summary["threshold_99_us"] = std::isnan(thr) ? json(nullptr) : json(thr);
  }
  r.summary["window_us"] = ramp.window;
  r.summary["ramp_center_us"] = ramp.center;
  r.summary["max_norm_defect"] = norm_defect;
  return r;
}

RunResult energy_diagram(const Scenario& s, int) {
  smart::STSystem sys;
  sys.global = s.drive.envelope();
  sys.t_c = s.t_c;
  sys.dnu1 = s.dnu1;
  sys.dnu2 = s.dnu2;
  const double time = s.diagram_time.value_or(0.25 * s.drive.period());
  const auto eps = linspace(s.eps_min, s.eps_max, s.eps_points);
  const auto d = smart::st_energy_diagram(sys, eps, time);
  RunResult r;
  Table t{"", {"eps_ghz", "e0_ghz", "e1_ghz", "e2_ghz", "e3_ghz", "e4_ghz"}, {}};
  for (std::size_t i = 0; i < d.eps.size(); ++i) {
    std::vector<std::string> row{num(d.eps[i])};
    for (double e : d.levels[i]) row.push_back(num(e));
    t.add(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary["min_gap_ghz"] = smart::st_min_gap(sys, s.eps_min, s.eps_max, time);
  r.summary["time_us"] = time;
  return r;
}

}  // namespace

RunResult execute(const Scenario& s, int workers) {
  switch (s.experiment) {
    case Experiment::identity_map: return identity_map(s, workers);
    case Experiment::gate_map: return gate_map(s, workers);
    case Experiment::axis_map: return axis_map(s, workers);
    case Experiment::space_curve: return space_curve(s, workers);
    case Experiment::filter_function: return filter_function(s, workers);
    case Experiment::grape_table: return grape_table(s, workers);
    case Experiment::two_qubit_map: return two_qubit_map(s, workers);
    case Experiment::st_init: return st_ramp(s, workers, false);
    case Experiment::st_readout: return st_ramp(s, workers, true);
    case Experiment::energy_diagram: return energy_diagram(s, workers);
  }
  throw smart::ConfigurationError("unhandled experiment");
}

std::vector<std::filesystem::path> write_outputs(const Scenario& s, int workers,
                                                 const RunResult& result,
                                                 const std::string& config_source) {
  namespace fs = std::filesystem;
  fs::path stem(s.out);
  if (stem.extension() == ".csv" || stem.extension() == ".json") stem.replace_extension();
  if (stem.has_parent_path()) fs::create_directories(stem.parent_path());

  std::vector<fs::path> written;
  json outputs = json::array();
  for (const Table& t : result.tables) {
    const fs::path path = stem.string() + t.suffix + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    written.push_back(path);
    outputs.push_back({{"path", path.filename().string()},
                       {"columns", t.columns},
                       {"rows", t.rows.size()}});
  }

  json manifest;
  manifest["tool"] = "smartq";
  manifest["version"] = SMARTQ_VERSION;
  manifest["config"] = config_source;
  manifest["workers"] = workers;
  manifest["scenario"] = s.resolved();
  manifest["outputs"] = outputs;
  manifest["summary"] = result.summary;
  manifest["warnings"] = result.warnings;
  const fs::path path = stem.string() + ".json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << manifest.dump(2) << '\n';
  written.push_back(path);
  return written;
}

}  // namespace smartq
