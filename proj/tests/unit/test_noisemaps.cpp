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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "smart/errors.hpp"
#include "smart/gates.hpp"
#include "smart/noisemaps.hpp"
#include "smart/parallel.hpp"

namespace smart {
namespace {

PropagationConfig fast() {
  PropagationConfig cfg;
  cfg.steps_per_period = 512;
  return cfg;
}

const FidelityGrid& smart_idle_map() {
  static const FidelityGrid g = offset_fidelity_map(build_gate(GateName::identity, 1),
                                                    OffsetGrid::uniform(1.0, 41, 0.5, 41),
                                                    fast(), hardware_workers());
  return g;
}

const FidelityGrid& dressed_idle_map() {
  static const FidelityGrid g = offset_fidelity_map(
      dressed_identity(1.0, 2), OffsetGrid::uniform(1.0, 41, 0.5, 41), fast(), hardware_workers());
  return g;
}

struct McEstimate {
  double mean;
  double stderr_;
};

// Gaussian draws restricted to the grid domain, matching the renormalised quadrature.
template <class F>
McEstimate monte_carlo(F&& f, double sigma_nu, double sigma_om, double nu_max, double om_max,
                       int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dn(0.0, sigma_nu), dom(0.0, sigma_om);
  double sum = 0.0, sum2 = 0.0;
  int taken = 0;
  while (taken < draws) {
    const double x = dn(rng), y = dom(rng);
    if (std::abs(x) > nu_max || std::abs(y) > om_max) continue;
    const double v = f(x, y);
    sum += v;
    sum2 += v * v;
    ++taken;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  return {mean, std::sqrt(std::max(var, 0.0) / draws)};
}

TEST(NoiseMaps, GridConstruction) {
  const OffsetGrid g = OffsetGrid::defaults();
  ASSERT_EQ(g.delta_nu.size(), 81u);
  EXPECT_EQ(g.delta_nu.front(), -g.delta_nu.back());
  EXPECT_EQ(g.delta_nu[40], 0.0);
  EXPECT_NO_THROW(g.validate());
  OffsetGrid bad = g;
  bad.delta_omega = {-1.0, 0.0, 1.0};
  EXPECT_THROW(bad.validate(), DomainError);
  bad = g;
  bad.delta_nu = {-1.0, 0.0, 0.5};
  EXPECT_THROW(bad.validate(), DomainError);
  EXPECT_THROW(OffsetGrid::uniform(1.0, 0, 0.5, 3), DomainError);
}

TEST(NoiseMaps, CalibratedCentre) {
  EXPECT_GT(smart_idle_map().center(), 1.0 - 1e-6);
  EXPECT_GT(dressed_idle_map().center(), 1.0 - 1e-6);
}

TEST(NoiseMaps, BareIdleMatchesFreeEvolution) {
  const double t = 10.0;
  const FidelityGrid g = offset_fidelity_map(bare_identity(t), OffsetGrid::uniform(0.2, 17, 0.1, 3));
  for (std::size_t i = 0; i < g.delta_nu_axis.size(); ++i) {
    const double c = std::cos(kPi * g.delta_nu_axis[i] * t);
    for (std::size_t j = 0; j < g.delta_omega_axis.size(); ++j) {
      EXPECT_NEAR(g.at(i, j), c * c, 1e-12);
    }
  }
  // delta_nu = 0.05 MHz over 10 us is a full spin flip.
  EXPECT_NEAR(g.at(10, 1), 0.0, 1e-12);
}

TEST(NoiseMaps, SmartIdleIsWiderThanDressed) {
  EXPECT_GT(detuning_half_width(smart_idle_map(), 0.99),
            detuning_half_width(dressed_idle_map(), 0.99));
}

TEST(NoiseMaps, DeterministicAcrossWorkers) {
  const ControlProgram p = build_gate(GateName::identity, 1);
  const OffsetGrid grid = OffsetGrid::uniform(1.0, 9, 0.5, 7);
  const FidelityGrid a = offset_fidelity_map(p, grid, fast(), 1);
  const FidelityGrid b = offset_fidelity_map(p, grid, fast(), 4);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(a.values[i], b.values[i]);
}

TEST(NoiseMaps, FailureNamesThePoint) {
  const NoisyEvolution evolve = [](const NoiseOffset& n) -> Unitary {
    if (n.delta_nu > 0.4) throw EvaluationError("boom", 0.1);
    return Unitary::identity(2);
  };
  try {
    offset_fidelity_map(evolve, Unitary::identity(2), OffsetGrid::uniform(1.0, 5, 0.5, 3), "idle");
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("delta_nu=0.5"), std::string::npos) << e.what();
  }
}

TEST(NoiseMaps, GaussianAverageLimits) {
  const FidelityGrid& g = smart_idle_map();
  EXPECT_NEAR(gaussian_average(g, 0.0, 0.0).value, g.center(), 1e-15);
  FidelityGrid c = g;
  std::fill(c.values.begin(), c.values.end(), 0.37);
  for (double s : {0.0, 0.05, 0.2, 0.4}) {
    EXPECT_NEAR(gaussian_average(c, s, s / 2).value, 0.37, 1e-14);
  }
  EXPECT_FALSE(gaussian_average(g, 0.1, 0.05).truncation_warning);
  EXPECT_TRUE(gaussian_average(g, 0.6, 0.05).truncation_warning);
  EXPECT_THROW(gaussian_average(g, -0.1, 0.0), DomainError);
}

TEST(NoiseMaps, SliceWhenOneSigmaIsZero) {
  const FidelityGrid& g = smart_idle_map();
  const std::size_t mid = g.delta_omega_axis.size() / 2;
  FidelityGrid slice;
  slice.delta_nu_axis = g.delta_nu_axis;
  slice.delta_omega_axis = {0.0};
  for (std::size_t i = 0; i < g.delta_nu_axis.size(); ++i) slice.values.push_back(g.at(i, mid));
  EXPECT_NEAR(gaussian_average(g, 0.1, 0.0).value, gaussian_average(slice, 0.1, 0.0).value,
              1e-14);
}

TEST(NoiseMaps, QuadratureAgreesWithMonteCarlo) {
  // Bare idle: sampled through the closed form, integrated from the propagated grid.
  const double t = 4.0;
  const FidelityGrid g = offset_fidelity_map(bare_identity(t), OffsetGrid::uniform(0.5, 81, 0.25, 5));
  const double quad = gaussian_average(g, 0.1, 0.05).value;
  const McEstimate mc = monte_carlo(
      [&](double x, double) { return std::pow(std::cos(kPi * x * t), 2); }, 0.1, 0.05, 0.5, 0.25,
      100000, 17);
  EXPECT_NEAR(quad, mc.mean, 3 * mc.stderr_);

  // SMART and dressed idles: direct propagation at every draw.
  PropagationConfig coarse;
  coarse.steps_per_period = 256;
  const OffsetGrid grid = OffsetGrid::defaults();
  double averages[2];
  int k = 0;
  for (const ControlProgram& p : {build_gate(GateName::identity, 1), dressed_identity(1.0, 2)}) {
    const FidelityGrid map = offset_fidelity_map(p, grid, coarse, hardware_workers());
    const double q = gaussian_average(map, 0.1, 0.05).value;
    const McEstimate m = monte_carlo(
        [&](double x, double y) { return fidelity(p.evolve({x, y}, coarse), p.target); }, 0.1,
        0.05, 1.0, 0.5, 20000, 23);
    EXPECT_NEAR(q, m.mean, 3 * m.stderr_);
    averages[k++] = q;
  }
  EXPECT_GT(averages[0], averages[1]);
}

TEST(NoiseMaps, GridDoublingIsConverged) {
  const ControlProgram p = build_gate(GateName::identity, 1);
  const FidelityGrid coarse = offset_fidelity_map(p, OffsetGrid::uniform(1.0, 41, 0.5, 41), fast());
  const FidelityGrid fine = offset_fidelity_map(p, OffsetGrid::uniform(1.0, 81, 0.5, 81), fast());
  for (double s : {0.05, 0.1, 0.2}) {
    EXPECT_NEAR(gaussian_average(coarse, s, s / 2).value, gaussian_average(fine, s, s / 2).value,
                1e-4)
        << s;
  }
}

TEST(NoiseMaps, NoiseLevelMapDegradesMonotonically) {
  const auto sn = default_sigma_nu_axis();
  const auto so = default_sigma_omega_axis();
  EXPECT_EQ(sn.front(), 0.0);
  EXPECT_NEAR(sn.back(), 0.5, 1e-15);
  EXPECT_NEAR(so.back(), 0.25, 1e-15);
  const NoiseLevelMap m = noise_level_map(smart_idle_map(), sn, so);
  EXPECT_GT(m.at(0, 0), 1.0 - 1e-6);
  EXPECT_NEAR(m.at(0, 0), smart_idle_map().center(), 1e-15);
  EXPECT_NEAR(m.infidelity(3, 4), 1.0 - m.at(3, 4), 0.0);
  for (std::size_t j = 0; j < so.size(); ++j) {
    for (std::size_t i = 1; i < sn.size(); ++i) {
      EXPECT_LE(m.at(i, j), m.at(i - 1, j) + 1e-6) << i << "," << j;
    }
  }
}

}  // namespace
}  // namespace smart
