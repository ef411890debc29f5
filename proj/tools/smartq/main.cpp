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

// smartq: run SMART qubit simulation scenarios from TOML files.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "scenario.hpp"
#include "smart/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int default_workers() {
  if (const char* env = std::getenv("SMARTQ_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "smartq: ignoring invalid SMARTQ_WORKERS='" << env << "'\n";
  }
  return 1;
}

void print_list() {
  for (const auto& e : smartq::experiments()) {
    std::cout << e.name << "\n    " << e.summary << "\n    sections: " << e.sections << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smartq - SMART qubit protocol simulations"};
  app.require_subcommand(1);

  std::string config;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;

  auto* run = app.add_subcommand("run", "Run the experiment described by a scenario file");
  run->add_option("config", config, "Scenario TOML (or a run manifest JSON)")->required();
  run->add_option("--workers", workers, "Worker threads (default: config, SMARTQ_WORKERS, 1)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out, "Override the output path stem");

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("config", config, "Scenario TOML (or a run manifest JSON)")->required();

  app.add_subcommand("list", "List experiments and their configuration sections");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list")) {
    print_list();
    return 0;
  }

  smartq::Scenario scenario;
  try {
    scenario = smartq::load_scenario(config);
  } catch (const std::exception& e) {
    std::cerr << "smartq: invalid config: " << e.what() << "\n";
    return kExitConfig;
  }
  if (seed) scenario.seed = *seed;
  if (out) scenario.out = *out;

  if (app.got_subcommand("validate")) {
    std::cout << scenario.resolved().dump(2) << "\n";
    return 0;
  }

  const int n_workers = workers ? *workers : scenario.workers.value_or(default_workers());
  smartq::RunResult result;
  try {
    result = smartq::execute(scenario, n_workers);
  } catch (const smart::ConfigurationError& e) {
    std::cerr << "smartq: invalid config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const smart::OptimizationFailure& e) {
    std::cerr << "smartq: optimisation failed: " << e.what() << " (best fidelity "
              << e.best_fidelity() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "smartq: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  for (const auto& w : result.warnings) std::cerr << "smartq: warning: " << w << "\n";

  try {
    for (const auto& path : smartq::write_outputs(scenario, n_workers, result, config)) {
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "smartq: output error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
