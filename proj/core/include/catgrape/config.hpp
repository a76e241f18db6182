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

#include <filesystem>
#include <optional>
#include <string>

#include "catgrape/grape.hpp"
#include "catgrape/lindblad.hpp"

namespace catgrape {

/// Config parse failure; the message carries the offending line number.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line)
      : Error("config line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ConfigError(const std::string& message) : Error("config: " + message), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// What operation the pulse should realize.
struct TargetSpec {
  enum class Kind { Gate, Fock, Encode, Decode, Parity, KerrCorrect };
  Kind kind = Kind::Fock;
  std::string gate = "I";      // Kind::Gate, one of GateSpec::all_names()
  int fock_n = 6;              // Kind::Fock
  double delta_t = 0.0;        // Kind::KerrCorrect, free-evolution time (ns)
  int parity_probes = 6;       // Kind::Parity, Fock probes 0..n-1
  double alpha = std::sqrt(3.0);  // cat amplitude for logical targets

  std::string describe() const;
};

struct WignerSettings {
  double extent = 4.0;  // grid spans [-extent, extent]^2 in beta
  int points_per_side = 41;
  int reconstruct_n_max = 0;  // 0 = skip reconstruction
};

struct RbSettings {
  enum class Mode { Ptm, Lindblad };
  Mode mode = Mode::Ptm;
  std::vector<int> lengths = {1, 2, 4, 8, 12, 16, 24, 32};
  int shots = 2000;
  int sequences = 8;
  std::string interleave;
  double depolarizing_p = -1.0;  // >= 0 replaces simulated channels by synthetic depolarizing
  std::filesystem::path waveform_dir;  // per-gate waveform files for simulated channels
};

/// Everything a run needs, in internal units (rad/ns, ns) after parsing.
/// Input files quote model frequencies in linear MHz and times in us.
struct ExperimentConfig {
  HamiltonianModel model;
  TargetSpec target;
  int steps = 250;
  double dt = 2.0;
  HilbertDims base_dims{16, 2};
  std::vector<int> truncation_pads = {0, 2};
  PenaltyWeights penalties;
  BandLimit band;
  OptimizerConfig optimizer;
  double seed_amplitude = 1e-3;  // initial-waveform RMS, rad/ns
  bool seed_zero = false;
  LindbladOptions lindblad;
  WignerSettings wigner;
  RbSettings rb;
  double dispersion_b = 0.0;    // ns per rad, see dispersion_correction
  double dispersion_tau = 0.0;  // ns
  std::string out_dir = "out";

  /// Assembles the synthesis problem (transfer sets per truncation).
  OptimizationProblem make_problem() const;
  void validate() const;
};

/// Parses the sectioned key = value grammar (see README). Unknown keys,
/// missing required keys and out-of-range values raise ConfigError with the
/// line number. All units are converted to rad/ns and ns internally.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Canonical text form; parse(serialize(parse(text))) == parse(text).
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a hash over the model parameters, stamped into waveform headers.
std::uint64_t model_hash(const HamiltonianModel& model);

}  // namespace catgrape
