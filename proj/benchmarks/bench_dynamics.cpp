/* Copyright 2026 The catgrape Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "bench_common.hpp"

namespace {

using namespace catgrape;

void BM_step_propagator(benchmark::State& state) {
  const HilbertDims dims{static_cast<int>(state.range(0)), 2};
  const auto sys = SystemOperators::build(bench::device_model(), dims);
  const Eigen::RowVector4d sample(0.02, -0.01, 0.015, 0.005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_propagator(sys.h0, sys.drives, sample, 2.0));
  }
}
BENCHMARK(BM_step_propagator)->Arg(14)->Arg(20)->Arg(22)->Unit(benchmark::kMicrosecond);

void BM_propagate_and_gradient(benchmark::State& state) {
  const HilbertDims dims{static_cast<int>(state.range(0)), 2};
  const auto sys = SystemOperators::build(bench::device_model(), dims);
  const auto w = bench::noise_waveform(static_cast<int>(state.range(1)), 0.02, 7);
  const auto set = bench::fock_transfers(dims, 6);
  for (auto _ : state) {
    const auto cache = propagate(w, set, sys);
    benchmark::DoNotOptimize(transfer_fidelity(cache));
    benchmark::DoNotOptimize(fidelity_gradient(cache, sys, w));
  }
}
BENCHMARK(BM_propagate_and_gradient)
    ->Args({14, 250})
    ->Args({20, 550})
    ->Unit(benchmark::kMillisecond);

void BM_propagator_derivative(benchmark::State& state) {
  const HilbertDims dims{static_cast<int>(state.range(0)), 2};
  const auto sys = SystemOperators::build(bench::device_model(), dims);
  const Eigen::RowVector4d sample(0.02, -0.01, 0.015, 0.005);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator_derivative(sys.h0, sys.drives, sample, 2.0, 0));
  }
}
BENCHMARK(BM_propagator_derivative)->Arg(14)->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace
