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

#include <cstdint>
#include <filesystem>

#include "catgrape/dynamics.hpp"

namespace catgrape {

/// Waveform file header. Rows hold t_ns, Re eT, Im eT, Re eC, Im eC in
/// rad/ns at fixed-point 9 decimals; read(write(w)) is bit-exact at that
/// precision.
struct WaveformHeader {
  int version = 1;
  double dt = 2.0;
  int steps = 0;
  double carrier_t_mhz = 0.0;
  double carrier_c_mhz = 0.0;
  std::uint64_t model_hash = 0;
};

struct WaveformFile {
  WaveformHeader header;
  ControlWaveform waveform;
};

/// Writes atomically (temp file + rename); never leaves partial output.
void write_waveform(const std::filesystem::path& path, const ControlWaveform& waveform,
                    const WaveformHeader& header);

WaveformFile read_waveform(const std::filesystem::path& path);

/// Frequency-domain line correction
///   eps(w) -> (1 + b w e^{i w tau}) eps(w),
/// with w in rad/ns, b in ns, tau in ns, applied per drive over the full
/// band. b = 0 is the identity. This is a first-order dispersion model;
/// applying the transform with -b is not an exact inverse (residual O(b^2)).
ControlWaveform dispersion_correction(const ControlWaveform& waveform, double b, double tau);

}  // namespace catgrape
