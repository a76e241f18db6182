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
#include "catgrape/lindblad.hpp"

namespace {

using namespace catgrape;

void BM_evolve_density(benchmark::State& state) {
  const HilbertDims dims{static_cast<int>(state.range(0)), 2};
  const auto sys = SystemOperators::build(bench::device_model(), dims);
  const auto dec = DecoherenceSpec::from_model(bench::device_model());
  const auto w = bench::noise_waveform(static_cast<int>(state.range(1)), 0.02, 11);
  Vector g0 = Vector::Zero(dims.joint());
  g0(0) = 1.0;
  const Matrix rho0 = g0 * g0.adjoint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_density(rho0, w, sys, dec));
  }
}
BENCHMARK(BM_evolve_density)->Args({20, 50})->Args({22, 50})->Unit(benchmark::kMillisecond);

}  // namespace
