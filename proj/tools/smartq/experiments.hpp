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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenario.hpp"

namespace smartq {

struct Table {
  std::string suffix;  // appended to the output stem before ".csv"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct RunResult {
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> warnings;
};

// Executes the scenario's experiment. Output ordering never depends on the
// worker count.
RunResult execute(const Scenario& scenario, int workers);

// Writes <stem><suffix>.csv for every table and <stem>.json as the manifest.
// Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const Scenario& scenario, int workers,
                                                 const RunResult& result,
                                                 const std::string& config_source);

std::string format_number(double v);

}  // namespace smartq
