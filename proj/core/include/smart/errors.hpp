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

#include <stdexcept>
#include <string>
#include <utility>

namespace smart {

// Precondition violated by an argument (bad dimension, non-positive rate, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent combination of otherwise valid settings.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A waveform or Hamiltonian produced a non-finite value at `time()`.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + " us)"),
        time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Optimizer could not reach its fidelity floor. Carries the best point found.
class OptimizationFailure : public std::runtime_error {
 public:
  OptimizationFailure(const std::string& what, std::pair<double, double> best,
                      double best_fidelity)
      : std::runtime_error(what), best_(best), best_fidelity_(best_fidelity) {}

  std::pair<double, double> best_point() const noexcept { return best_; }
  double best_fidelity() const noexcept { return best_fidelity_; }

 private:
  std::pair<double, double> best_;
  double best_fidelity_;
};

}  // namespace smart
