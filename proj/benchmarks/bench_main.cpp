// Copyright 2026 The lotsim Authors
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

#include <vector>

#include "lotsim/analysis/tomography.hpp"
#include "lotsim/experiment/scenario.hpp"
#include "lotsim/optics/elements.hpp"
#include "lotsim/optics/mode_transform.hpp"
#include "lotsim/sources/spdc.hpp"

namespace {

using namespace lotsim;

void BM_SpdcState(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  auto space = make_space({H(kBeam1), V(kBeam1), H(kBeam4), V(kBeam4)}, 2 * pairs);
  const SpdcParams p{0.1, pairs, kBeam1, kBeam4, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(spdc_state(p, space));
}
BENCHMARK(BM_SpdcState)->Arg(2)->Arg(3)->Arg(4);

void BM_LiftBeamsplitter(benchmark::State& state) {
  std::vector<ModeLabel> modes;
  for (Beam b : {kBeam1, kBeam2, kBeam3, kBeam4}) {
    modes.push_back(H(b));
    modes.push_back(V(b));
  }
  auto space = make_space(modes, static_cast<int>(state.range(0)));
  const auto bs = beamsplitter(0.5, 0.0, kBeam1, kBeam2);
  for (auto _ : state) benchmark::DoNotOptimize(lift(bs.transform(), space));
  state.counters["dimension"] = static_cast<double>(space->dimension());
}
BENCHMARK(BM_LiftBeamsplitter)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_RunScenario(benchmark::State& state) {
  SetupConfig c;
  c.cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c, Threefold{}));
}
BENCHMARK(BM_RunScenario)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LeadingOrderFourfold(benchmark::State& state) {
  const SetupConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(leading_order(c, Fourfold{}));
}
BENCHMARK(BM_LeadingOrderFourfold)->Unit(benchmark::kMillisecond);

void BM_RatioSweep(benchmark::State& state) {
  const SetupConfig c;
  const std::vector<double> ratios = {1.0, 2.0, 4.0, 8.0};
  for (auto _ : state) benchmark::DoNotOptimize(coupling_ratio_sweep(c, ratios));
}
BENCHMARK(BM_RatioSweep)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto rho = run_scenario(SetupConfig{}, Threefold{}).rho3;
  const auto counts = sample_counts(tomography_probabilities(rho, default_tomography_settings()), 100000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(counts));
}
BENCHMARK(BM_Reconstruct);

}  // namespace
BENCHMARK_MAIN();
