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

// Scenario files: TOML in, fully resolved parameter tree out.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smart/gates.hpp"
#include "smart/noisemaps.hpp"
#include "smart/twoqubit.hpp"

namespace smartq {

enum class Experiment {
  identity_map,
  gate_map,
  axis_map,
  space_curve,
  filter_function,
  grape_table,
  two_qubit_map,
  st_init,
  st_readout,
  energy_diagram,
};

struct ExperimentInfo {
  Experiment id;
  const char* name;
  const char* summary;
  const char* sections;
};

const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo& info(Experiment e);

struct GridSettings {
  double nu_half_width = 1.0;
  int nu_points = 81;
  double omega_half_width = 0.5;
  int omega_points = 81;
};

struct SigmaSettings {
  double nu_max = 0.5;
  int nu_points = 21;
  double omega_max = 0.25;
  int omega_points = 21;
};

struct Scenario {
  Experiment experiment = Experiment::identity_map;
  std::string out = "smartq_out";
  std::uint64_t seed = 20220611;
  std::optional<int> workers;  // falls back to SMARTQ_WORKERS, then 1

  smart::DriveSettings drive;
  smart::PropagationConfig propagation;

  // identity_map
  std::string reference = "smart";  // smart | dressed | bare
  // gate_map / identity_map
  std::string gate = "sqrt_x";
  int n_periods = 7;
  GridSettings grid;
  SigmaSettings sigma;

  // axis_map
  int harmonic = 1;
  double axis_nu_max = 1.0;
  int axis_nu_points = 81;
  int axis_phi_points = 81;

  // space_curve / filter_function
  std::string curve = "smart";  // smart | dressed
  double amplitude_offset = 0.0;
  int curve_samples = 1000;
  int curve_periods = 1;
  double f_min = 0.0;
  double f_max = 5.0;
  int f_points = 501;

  // grape_table
  std::vector<std::string> grape_gates{"sqrt_x", "sqrt_y"};
  std::vector<int> grape_periods{1, 2, 3, 7, 10};
  int starts_per_quadrant = 2;
  int max_iterations = 300;

  // two_qubit_map
  std::string two_qubit_gate = "sqrt_swap";  // sqrt_swap | cnot | cnot_x | idle
  double j0 = smart::kDefaultExchange;
  int single_qubit_periods = 7;
  GridSettings two_qubit_grid{1.0, 15, 0.5, 15};

  // st_init / st_readout / energy_diagram
  std::string ramp_case = "A";  // A | B | dressed
  std::vector<double> ramp_times{0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> offset_values{-0.1, -0.05, 0.0, 0.05, 0.1};
  double t_c = 0.5;
  double eps_start = 50.0;
  double eps_end = -50.0;
  double pre_step_fraction = 0.4;
  double post_step_fraction = 0.4;
  std::string readout_initial = "S11";
  double eps_min = -300.0;
  double eps_max = 300.0;
  int eps_points = 601;
  std::optional<double> diagram_time;  // defaults to T_mod / 4
  double dnu1 = 0.0;
  double dnu2 = 0.0;

  // Echo of every parameter relevant to the experiment, defaults included.
  nlohmann::json resolved() const;
};

// Throws smart::ConfigurationError naming the offending field.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, bool json);

}  // namespace smartq
