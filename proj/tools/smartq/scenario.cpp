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

#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "smart/errors.hpp"

namespace smartq {

using smart::ConfigurationError;
using nlohmann::json;

namespace {

const std::vector<ExperimentInfo> kExperiments = {
    {Experiment::identity_map, "identity_map",
     "Offset and Gaussian-noise fidelity maps of an idle (SMART, dressed or bare qubit).",
     "[drive] [propagation] [gate] reference, n_periods; [grid] [sigma]"},
    {Experiment::gate_map, "gate_map",
     "Offset and Gaussian-noise fidelity maps of a calibrated single-qubit gate.",
     "[drive] [propagation] [gate] name, n_periods; [grid] [sigma]"},
    {Experiment::axis_map, "axis_map",
     "Rotation angle, axis angles and efficiency over (nu, phi_mod) for one modulation period.",
     "[drive] [propagation] [axis] harmonic, nu_max, nu_points, phi_points"},
    {Experiment::space_curve, "space_curve",
     "First-order noise space curve, closure defect and projected areas.",
     "[drive] [curve] kind, amplitude_offset, samples, n_periods"},
    {Experiment::filter_function, "filter_function",
     "Single-tone detuning-noise filter function of an idle.",
     "[drive] [curve] kind, n_periods, f_min, f_max, f_points"},
    {Experiment::grape_table, "grape_table",
     "Two-harmonic x/y coefficients found by multi-start gradient ascent.",
     "[drive] [propagation] [grape] gates, n_periods, starts_per_quadrant, max_iterations"},
    {Experiment::two_qubit_map, "two_qubit_map",
     "Gaussian-noise map of a two-qubit program integrated over four offsets.",
     "[drive] [propagation] [two_qubit] gate, j0, single_qubit_periods, [two_qubit.grid]; [sigma]"},
    {Experiment::st_init, "st_init",
     "Singlet-triplet initialisation: S(0,2) -> S(1,1) populations versus ramp time. "
     "[ramp] case = \"A\" centres the ramp on the envelope minimum (T_mod), \"B\" on the "
     "envelope maximum (1.25 T_mod), \"dressed\" uses a constant drive and a 2/Omega_R window.",
     "[drive] [propagation] [ramp] case, ramp_times, offsets, t_c, eps_start, eps_end, "
     "pre_step_fraction, post_step_fraction"},
    {Experiment::st_readout, "st_readout",
     "Time-reversed ramp from a (1,1) state; reports the S(0,2) return probability. "
     "Same [ramp] centring cases as st_init.",
     "[drive] [propagation] [ramp] ... plus initial (S11, T0, T+, T-)"},
    {Experiment::energy_diagram, "energy_diagram",
     "Instantaneous singlet-triplet levels versus charge detuning.",
     "[drive] [energy] eps_min, eps_max, points, time_us, dnu1, dnu2, t_c"},
};

// Tracks which keys were read so that leftovers can be reported.
class Section {
 public:
  Section(const toml::table* table, std::string path) : table_(table), path_(std::move(path)) {}

  bool present() const { return table_ != nullptr; }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const toml::node* node(std::string_view key) {
    if (!table_) return nullptr;
    used_.insert(std::string(key));
    return table_->get(key);
  }

  void number(std::string_view key, double& out) {
    if (const auto* n = node(key)) out = as_number(*n, key);
  }

  void optional_number(std::string_view key, std::optional<double>& out) {
    if (const auto* n = node(key)) out = as_number(*n, key);
  }

  void integer(std::string_view key, int& out) {
    if (const auto* n = node(key)) {
      if (!n->is_integer()) throw ConfigurationError(field(key) + ": expected an integer");
      out = static_cast<int>(n->as_integer()->get());
    }
  }

  void unsigned64(std::string_view key, std::uint64_t& out) {
    if (const auto* n = node(key)) {
      if (!n->is_integer() || n->as_integer()->get() < 0) {
        throw ConfigurationError(field(key) + ": expected a non-negative integer");
      }
      out = static_cast<std::uint64_t>(n->as_integer()->get());
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const auto* n = node(key)) {
      if (!n->is_string()) throw ConfigurationError(field(key) + ": expected a string");
      out = n->as_string()->get();
    }
  }

  template <typename T>
  void list(std::string_view key, std::vector<T>& out) {
    const auto* n = node(key);
    if (!n) return;
    if (!n->is_array()) throw ConfigurationError(field(key) + ": expected an array");
    out.clear();
    for (const auto& item : *n->as_array()) {
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(as_number(item, key));
      } else if constexpr (std::is_same_v<T, int>) {
        if (!item.is_integer()) throw ConfigurationError(field(key) + ": expected integers");
        out.push_back(static_cast<int>(item.as_integer()->get()));
      } else {
        if (!item.is_string()) throw ConfigurationError(field(key) + ": expected strings");
        out.push_back(item.as_string()->get());
      }
    }
  }

  Section child(std::string_view key) {
    const auto* n = node(key);
    if (n && !n->is_table()) throw ConfigurationError(field(key) + ": expected a table");
    return Section(n ? n->as_table() : nullptr, field(key));
  }

  void reject_unknown() const {
    if (!table_) return;
    for (const auto& [k, v] : *table_) {
      if (!used_.count(std::string(k.str()))) {
        throw ConfigurationError("unknown key '" + field(k.str()) + "'");
      }
    }
  }

 private:
  double as_number(const toml::node& n, std::string_view key) const {
    if (n.is_floating_point()) return n.as_floating_point()->get();
    if (n.is_integer()) return static_cast<double>(n.as_integer()->get());
    throw ConfigurationError(field(key) + ": expected a number");
  }

  const toml::table* table_;
  std::string path_;
  std::set<std::string> used_;
};

void read_grid(Section s, GridSettings& g) {
  s.number("nu_half_width", g.nu_half_width);
  s.integer("nu_points", g.nu_points);
  s.number("omega_half_width", g.omega_half_width);
  s.integer("omega_points", g.omega_points);
  s.reject_unknown();
}

json grid_json(const GridSettings& g) {
  return {{"nu_half_width", g.nu_half_width},
          {"nu_points", g.nu_points},
          {"omega_half_width", g.omega_half_width},
          {"omega_points", g.omega_points}};
}

const char* variant_name(smart::ModulationVariant v) {
  return v == smart::ModulationVariant::sine ? "sine" : "cosine";
}

const char* integrator_name(smart::Integrator i) {
  return i == smart::Integrator::magnus4 ? "magnus4" : "midpoint";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigurationError(message);
}

void validate_grid(const GridSettings& g, const std::string& path) {
  require(g.nu_points >= 1, path + ".nu_points: must be >= 1");
  require(g.omega_points >= 1, path + ".omega_points: must be >= 1");
  require(g.nu_half_width >= 0.0, path + ".nu_half_width: must be >= 0");
  require(g.omega_half_width >= 0.0 && g.omega_half_width < 1.0,
          path + ".omega_half_width: must be in [0, 1)");
  require(g.nu_points == 1 || g.nu_half_width > 0.0,
          path + ".nu_half_width: must be > 0 with more than one point");
  require(g.omega_points == 1 || g.omega_half_width > 0.0,
          path + ".omega_half_width: must be > 0 with more than one point");
}

void validate(const Scenario& s) {
  require(s.drive.omega_r > 0.0, "drive.omega_r: must be positive");
  require(!s.drive.f_mod || *s.drive.f_mod > 0.0, "drive.f_mod: must be positive");
  require(s.propagation.steps_per_period >= 64, "propagation.steps_per_period: must be >= 64");
  require(s.propagation.min_steps_per_segment >= 1,
          "propagation.min_steps_per_segment: must be >= 1");
  require(!s.workers || *s.workers >= 1, "workers: must be >= 1");
  require(!s.out.empty(), "out: must not be empty");

  switch (s.experiment) {
    case Experiment::identity_map:
    case Experiment::gate_map:
      if (s.experiment == Experiment::identity_map) {
        require(s.reference == "smart" || s.reference == "dressed" || s.reference == "bare",
                "gate.reference: expected smart, dressed or bare");
      } else {
        try {
          (void)smart::parse_gate_name(s.gate);
        } catch (const smart::DomainError&) {
          throw ConfigurationError("gate.name: unknown gate '" + s.gate + "'");
        }
      }
      require(s.n_periods >= 1, "gate.n_periods: must be >= 1");
      validate_grid(s.grid, "grid");
      require(s.sigma.nu_points >= 1 && s.sigma.omega_points >= 1,
              "sigma: point counts must be >= 1");
      require(s.sigma.nu_max >= 0.0 && s.sigma.omega_max >= 0.0, "sigma: maxima must be >= 0");
      break;
    case Experiment::axis_map:
      require(s.harmonic == 1 || s.harmonic == 2, "axis.harmonic: must be 1 or 2");
      require(s.axis_nu_points >= 1, "axis.nu_points: must be >= 1");
      require(s.axis_phi_points >= 1, "axis.phi_points: must be >= 1");
      require(s.axis_nu_max > 0.0, "axis.nu_max: must be positive");
      break;
    case Experiment::space_curve:
      require(s.curve == "smart" || s.curve == "dressed", "curve.kind: expected smart or dressed");
      require(s.curve_samples >= 100, "curve.samples: must be >= 100");
      require(s.curve_periods >= 1, "curve.n_periods: must be >= 1");
      require(s.amplitude_offset > -1.0, "curve.amplitude_offset: must be > -1");
      break;
    case Experiment::filter_function:
      require(s.curve == "smart" || s.curve == "dressed", "curve.kind: expected smart or dressed");
      require(s.curve_periods >= 1, "curve.n_periods: must be >= 1");
      require(s.f_points >= 1, "curve.f_points: must be >= 1");
      require(s.f_min >= 0.0 && s.f_max >= s.f_min, "curve.f_min/f_max: need 0 <= f_min <= f_max");
      break;
    case Experiment::grape_table:
      require(!s.grape_gates.empty(), "grape.gates: must not be empty");
      for (const auto& g : s.grape_gates) {
        require(g == "sqrt_x" || g == "sqrt_y" || g == "sqrt_x_dag" || g == "sqrt_y_dag",
                "grape.gates: '" + g + "' is not an x/y gate");
      }
      require(!s.grape_periods.empty(), "grape.n_periods: must not be empty");
      for (int n : s.grape_periods) require(n >= 1, "grape.n_periods: entries must be >= 1");
      require(s.starts_per_quadrant >= 0, "grape.starts_per_quadrant: must be >= 0");
      require(s.max_iterations >= 1, "grape.max_iterations: must be >= 1");
      break;
    case Experiment::two_qubit_map:
      require(s.two_qubit_gate == "sqrt_swap" || s.two_qubit_gate == "cnot" ||
                  s.two_qubit_gate == "cnot_x" || s.two_qubit_gate == "idle",
              "two_qubit.gate: expected sqrt_swap, cnot, cnot_x or idle");
      require(s.j0 > 0.0, "two_qubit.j0: must be positive");
      require(s.single_qubit_periods >= 1, "two_qubit.single_qubit_periods: must be >= 1");
      validate_grid(s.two_qubit_grid, "two_qubit.grid");
      require(s.sigma.nu_points >= 1 && s.sigma.omega_points >= 1,
              "sigma: point counts must be >= 1");
      break;
    case Experiment::st_init:
    case Experiment::st_readout:
      require(s.ramp_case == "A" || s.ramp_case == "B" || s.ramp_case == "dressed",
              "ramp.case: expected A, B or dressed");
      require(!s.ramp_times.empty(), "ramp.ramp_times: must not be empty");
      require(!s.offset_values.empty(), "ramp.offsets: must not be empty");
      require(s.t_c > 0.0, "ramp.t_c: must be positive");
      require(s.readout_initial == "S11" || s.readout_initial == "T0" ||
                  s.readout_initial == "T+" || s.readout_initial == "T-",
              "ramp.initial: expected S11, T0, T+ or T-");
      break;
    case Experiment::energy_diagram:
      require(s.eps_points >= 2, "energy.points: must be >= 2");
      require(s.eps_max > s.eps_min, "energy.eps_max: must exceed eps_min");
      require(s.t_c >= 0.0, "energy.t_c: must be >= 0");
      break;
  }
}

toml::table json_to_toml(const json& j);

toml::array json_to_toml_array(const json& j) {
  toml::array a;
  for (const auto& v : j) {
    if (v.is_number_integer()) a.push_back(v.get<std::int64_t>());
    else if (v.is_number()) a.push_back(v.get<double>());
    else if (v.is_string()) a.push_back(v.get<std::string>());
    else if (v.is_boolean()) a.push_back(v.get<bool>());
    else throw ConfigurationError("unsupported array element in JSON scenario");
  }
  return a;
}

toml::table json_to_toml(const json& j) {
  toml::table t;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) t.insert(k, json_to_toml(v));
    else if (v.is_array()) t.insert(k, json_to_toml_array(v));
    else if (v.is_number_integer()) t.insert(k, v.get<std::int64_t>());
    else if (v.is_number()) t.insert(k, v.get<double>());
    else if (v.is_string()) t.insert(k, v.get<std::string>());
    else if (v.is_boolean()) t.insert(k, v.get<bool>());
    else if (v.is_null()) continue;
    else throw ConfigurationError("unsupported JSON value at '" + k + "'");
  }
  return t;
}

Scenario from_table(const toml::table& root) {
  Scenario s;
  Section top(&root, "");
  std::string name;
  top.string("experiment", name);
  if (name.empty()) throw ConfigurationError("experiment: missing");
  bool found = false;
  for (const auto& e : kExperiments) {
    if (name == e.name) {
      s.experiment = e.id;
      found = true;
    }
  }
  if (!found) throw ConfigurationError("experiment: unknown experiment '" + name + "'");
  top.string("out", s.out);
  top.unsigned64("seed", s.seed);
  if (top.node("workers")) {
    int w = 1;
    top.integer("workers", w);
    s.workers = w;
  }

  Section drive = top.child("drive");
  drive.number("omega_r", s.drive.omega_r);
  drive.optional_number("f_mod", s.drive.f_mod);
  std::string variant = variant_name(s.drive.variant);
  drive.string("variant", variant);
  if (variant == "sine") s.drive.variant = smart::ModulationVariant::sine;
  else if (variant == "cosine") s.drive.variant = smart::ModulationVariant::cosine;
  else throw ConfigurationError("drive.variant: expected sine or cosine");
  drive.reject_unknown();

  Section prop = top.child("propagation");
  prop.integer("steps_per_period", s.propagation.steps_per_period);
  prop.integer("min_steps_per_segment", s.propagation.min_steps_per_segment);
  std::string integrator = integrator_name(s.propagation.integrator);
  prop.string("integrator", integrator);
  if (integrator == "magnus4") s.propagation.integrator = smart::Integrator::magnus4;
  else if (integrator == "midpoint") s.propagation.integrator = smart::Integrator::midpoint;
  else throw ConfigurationError("propagation.integrator: expected magnus4 or midpoint");
  prop.reject_unknown();

  Section gate = top.child("gate");
  gate.string("name", s.gate);
  gate.string("reference", s.reference);
  gate.integer("n_periods", s.n_periods);
  gate.reject_unknown();

  read_grid(top.child("grid"), s.grid);

  Section sigma = top.child("sigma");
  sigma.number("nu_max", s.sigma.nu_max);
  sigma.integer("nu_points", s.sigma.nu_points);
  sigma.number("omega_max", s.sigma.omega_max);
  sigma.integer("omega_points", s.sigma.omega_points);
  sigma.reject_unknown();

  Section axis = top.child("axis");
  axis.integer("harmonic", s.harmonic);
  axis.number("nu_max", s.axis_nu_max);
  axis.integer("nu_points", s.axis_nu_points);
  axis.integer("phi_points", s.axis_phi_points);
  axis.reject_unknown();

  Section curve = top.child("curve");
  curve.string("kind", s.curve);
  curve.number("amplitude_offset", s.amplitude_offset);
  curve.integer("samples", s.curve_samples);
  curve.integer("n_periods", s.curve_periods);
  curve.number("f_min", s.f_min);
  curve.number("f_max", s.f_max);
  curve.integer("f_points", s.f_points);
  curve.reject_unknown();

  Section grape = top.child("grape");
  grape.list("gates", s.grape_gates);
  grape.list("n_periods", s.grape_periods);
  grape.integer("starts_per_quadrant", s.starts_per_quadrant);
  grape.integer("max_iterations", s.max_iterations);
  grape.reject_unknown();

  Section two = top.child("two_qubit");
  two.string("gate", s.two_qubit_gate);
  two.number("j0", s.j0);
  two.integer("single_qubit_periods", s.single_qubit_periods);
  read_grid(two.child("grid"), s.two_qubit_grid);
  two.reject_unknown();

  Section ramp = top.child("ramp");
  ramp.string("case", s.ramp_case);
  ramp.list("ramp_times", s.ramp_times);
  ramp.list("offsets", s.offset_values);
  ramp.number("t_c", s.t_c);
  ramp.number("eps_start", s.eps_start);
  ramp.number("eps_end", s.eps_end);
  ramp.number("pre_step_fraction", s.pre_step_fraction);
  ramp.number("post_step_fraction", s.post_step_fraction);
  ramp.string("initial", s.readout_initial);
  ramp.reject_unknown();

  Section energy = top.child("energy");
  energy.number("eps_min", s.eps_min);
  energy.number("eps_max", s.eps_max);
  energy.integer("points", s.eps_points);
  energy.optional_number("time_us", s.diagram_time);
  energy.number("dnu1", s.dnu1);
  energy.number("dnu2", s.dnu2);
  energy.number("t_c", s.t_c);
  energy.reject_unknown();

  top.reject_unknown();
  validate(s);
  return s;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() { return kExperiments; }

const ExperimentInfo& info(Experiment e) {
  for (const auto& x : kExperiments) {
    if (x.id == e) return x;
  }
  return kExperiments.front();
}

json Scenario::resolved() const {
  json j;
  j["experiment"] = info(experiment).name;
  j["out"] = out;
  j["seed"] = seed;
  j["drive"] = {{"omega_r", drive.omega_r},
                {"f_mod", drive.mod_frequency()},
                {"variant", variant_name(drive.variant)}};
  const json prop = {{"steps_per_period", propagation.steps_per_period},
                     {"min_steps_per_segment", propagation.min_steps_per_segment},
                     {"integrator", integrator_name(propagation.integrator)}};
  const json sig = {{"nu_max", sigma.nu_max},
                    {"nu_points", sigma.nu_points},
                    {"omega_max", sigma.omega_max},
                    {"omega_points", sigma.omega_points}};
  const json ramp = {{"case", ramp_case},
                     {"ramp_times", ramp_times},
                     {"offsets", offset_values},
                     {"t_c", t_c},
                     {"eps_start", eps_start},
                     {"eps_end", eps_end},
                     {"pre_step_fraction", pre_step_fraction},
                     {"post_step_fraction", post_step_fraction},
                     {"initial", readout_initial}};
  switch (experiment) {
    case Experiment::identity_map:
      j["propagation"] = prop;
      j["gate"] = {{"reference", reference}, {"n_periods", n_periods}};
      j["grid"] = grid_json(grid);
      j["sigma"] = sig;
      break;
    case Experiment::gate_map:
      j["propagation"] = prop;
      j["gate"] = {{"name", gate}, {"n_periods", n_periods}};
      j["grid"] = grid_json(grid);
      j["sigma"] = sig;
      break;
    case Experiment::axis_map:
      j["propagation"] = prop;
      j["axis"] = {{"harmonic", harmonic},
                   {"nu_max", axis_nu_max},
                   {"nu_points", axis_nu_points},
                   {"phi_points", axis_phi_points}};
      break;
    case Experiment::space_curve:
      j["curve"] = {{"kind", curve},
                    {"amplitude_offset", amplitude_offset},
                    {"samples", curve_samples},
                    {"n_periods", curve_periods}};
      break;
    case Experiment::filter_function:
      j["curve"] = {{"kind", curve},
                    {"n_periods", curve_periods},
                    {"f_min", f_min},
                    {"f_max", f_max},
                    {"f_points", f_points}};
      break;
    case Experiment::grape_table:
      j["propagation"] = prop;
      j["grape"] = {{"gates", grape_gates},
                    {"n_periods", grape_periods},
                    {"starts_per_quadrant", starts_per_quadrant},
                    {"max_iterations", max_iterations}};
      break;
    case Experiment::two_qubit_map:
      j["propagation"] = prop;
      j["two_qubit"] = {{"gate", two_qubit_gate},
                        {"j0", j0},
                        {"single_qubit_periods", single_qubit_periods},
                        {"grid", grid_json(two_qubit_grid)}};
      j["sigma"] = sig;
      break;
    case Experiment::st_init:
    case Experiment::st_readout:
      j["propagation"] = prop;
      j["ramp"] = ramp;
      break;
    case Experiment::energy_diagram:
      j["energy"] = {{"eps_min", eps_min},
                     {"eps_max", eps_max},
                     {"points", eps_points},
                     {"time_us", diagram_time.value_or(0.25 * drive.period())},
                     {"dnu1", dnu1},
                     {"dnu2", dnu2},
                     {"t_c", t_c}};
      break;
  }
  return j;
}

Scenario parse_scenario(const std::string& text, bool is_json) {
  if (is_json) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigurationError(std::string("JSON parse error: ") + e.what());
    }
    // A run manifest carries the resolved scenario under "scenario".
    if (j.contains("scenario")) j = j["scenario"];
    return from_table(json_to_toml(j));
  }
  try {
    return from_table(toml::parse(text));
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
    throw ConfigurationError(msg.str());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.extension() == ".json");
}

}  // namespace smartq
