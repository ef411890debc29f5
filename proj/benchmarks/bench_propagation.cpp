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

#include <benchmark/benchmark.h>

#include "smart/gates.hpp"
#include "smart/geometry.hpp"
#include "smart/noisemaps.hpp"
#include "smart/twoqubit.hpp"

namespace {

using namespace smart;

void BM_QubitPeriod(benchmark::State& state) {
  DriveSettings drive;
  PropagationConfig cfg;
  cfg.steps_per_period = static_cast<int>(state.range(0));
  const ControlProgram p = xy_program(GateName::sqrt_x, 1, 0.0893, 0.1579, drive);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evolve({0.01, 0.01}, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QubitPeriod)->Arg(1024)->Arg(4096);

void BM_QubitPeriodMidpoint(benchmark::State& state) {
  DriveSettings drive;
  PropagationConfig cfg;
  cfg.integrator = Integrator::midpoint;
  const ControlProgram p = xy_program(GateName::sqrt_x, 1, 0.0893, 0.1579, drive);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evolve({0.01, 0.01}, cfg));
  }
}
BENCHMARK(BM_QubitPeriodMidpoint);

void BM_HermitianExp(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Matrix g = Matrix::Random(dim, dim);
  g = 0.5 * (g + g.adjoint()).eval();
  for (auto _ : state) {
    benchmark::DoNotOptimize(expi_hermitian(g));
  }
}
BENCHMARK(BM_HermitianExp)->Arg(2)->Arg(4)->Arg(5);

void BM_SqrtSwapPeriod(benchmark::State& state) {
  const TwoQubitProgram p = sqrt_swap_program();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evolve({{0.01, 0.0}, {-0.01, 0.0}}));
  }
}
BENCHMARK(BM_SqrtSwapPeriod)->Unit(benchmark::kMillisecond);

void BM_OffsetMap(benchmark::State& state) {
  PropagationConfig cfg;
  cfg.steps_per_period = 512;
  const ControlProgram idle = build_gate(GateName::identity, 1);
  const OffsetGrid grid = OffsetGrid::uniform(1.0, 21, 0.5, 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(offset_fidelity_map(idle, grid, cfg));
  }
}
BENCHMARK(BM_OffsetMap)->Unit(benchmark::kMillisecond);

void BM_GaussianAverage(benchmark::State& state) {
  FidelityGrid grid;
  const OffsetGrid g = OffsetGrid::defaults();
  grid.delta_nu_axis = g.delta_nu;
  grid.delta_omega_axis = g.delta_omega;
  grid.values.assign(g.delta_nu.size() * g.delta_omega.size(), 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_average(grid, 0.1, 0.05));
  }
}
BENCHMARK(BM_GaussianAverage);

void BM_SpaceCurve(benchmark::State& state) {
  const Waveform env = smart_envelope(1.0, optimal_mod_frequency(1.0), ModulationVariant::sine);
  const double period = 1.0 / optimal_mod_frequency(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(magnus_report(env, NoiseAxis::x, period));
  }
}
BENCHMARK(BM_SpaceCurve);

void BM_StRamp(benchmark::State& state) {
  RampSpec ramp = RampSpec::smart(RampCentering::a);
  ramp.ramp_time = 0.1;
  const STSystem sys = st_system(ramp);
  PropagationConfig cfg;
  cfg.steps_per_period = 1024;
  for (auto _ : state) {
    benchmark::DoNotOptimize(st_evolve(sys, ramp, StState::s02, false, cfg));
  }
}
BENCHMARK(BM_StRamp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
