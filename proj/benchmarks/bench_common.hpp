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

#pragma once

#include <random>

#include "catgrape/dynamics.hpp"

namespace catgrape::bench {

inline HamiltonianModel device_model() {
  return HamiltonianModel::from_linear_units(-2.194, -0.0037, -236.0, -0.019, 170.0, 43.0,
                                             2700.0);
}

inline ControlWaveform noise_waveform(int steps, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, amplitude);
  ControlWaveform w = ControlWaveform::zeros(steps, 2.0);
  for (int k = 0; k < steps; ++k)
    for (int c = 0; c < 4; ++c) w.samples(k, c) = normal(rng);
  return w;
}

inline StateTransferSet fock_transfers(const HilbertDims& dims, int n_target) {
  StateTransferSet set;
  set.dims = dims;
  Vector a = Vector::Zero(dims.joint()), b = Vector::Zero(dims.joint());
  a(0) = 1.0;
  b(n_target * dims.n_trans) = 1.0;
  set.initial = {a};
  set.target = {b};
  return set;
}

}  // namespace catgrape::bench
