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
#include "catgrape/catcode.hpp"
#include "catgrape/tomography.hpp"

namespace {

using namespace catgrape;

void BM_wigner_grid(benchmark::State& state) {
  const int n_osc = 24;
  const Vector plus = codeword(std::sqrt(3.0), +1, n_osc);
  const Matrix rho = plus * plus.adjoint();
  const auto betas = square_grid(4.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner(rho, betas));
  }
  state.SetItemsProcessed(state.iterations() * betas.size());
}
BENCHMARK(BM_wigner_grid)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_reconstruct(benchmark::State& state) {
  const int n_osc = 24;
  const Vector plus = codeword(std::sqrt(3.0), +1, n_osc);
  const Matrix rho = plus * plus.adjoint();
  const auto grid = wigner(rho, square_grid(4.0, 41));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_from_wigner(grid, 14));
  }
}
BENCHMARK(BM_reconstruct)->Unit(benchmark::kMillisecond);

}  // namespace
