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
#include <iosfwd>

#include "catgrape/config.hpp"
#include "catgrape/rb.hpp"
#include "catgrape/waveform_io.hpp"

namespace catgrape {

/// Exit codes shared by the CLI subcommands.
inline constexpr int kExitGoalMet = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBelowGoal = 2;

struct SynthesisOutcome {
  OptimizationResult result;
  std::filesystem::path waveform_path;
  std::filesystem::path report_path;
  int exit_code = kExitError;
};

/// Synthesize the configured target: optimize, then write the waveform file,
/// the synthesis report and the cost trace into out_dir.
SynthesisOutcome run_synthesize(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir, std::ostream& log);

/// Open-system verification of a gate waveform: average gate fidelity,
/// leakage, PTM, and a per-rate infidelity breakdown.
int run_simulate(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
                 const std::filesystem::path& out_dir, std::ostream& log);

/// Wigner map of the state the pulse produces (or of the ideal target when
/// no waveform is given), plus optional density-matrix reconstruction.
int run_wigner(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
               const std::filesystem::path& out_dir, std::ostream& log);

/// Process tomography of the waveform's logical channel in the Pauli
/// transfer representation.
int run_ptomo(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
              const std::filesystem::path& out_dir, std::ostream& log);

/// Randomized benchmarking per the [rb] config section.
int run_rb_command(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& log);

/// Applies the dispersion/delay correction to a waveform file.
int run_correct(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
                const std::filesystem::path& out_dir, std::ostream& log);

/// Ideal target state of the configured operation applied to |g,0> (or the
/// configured logical input), used by wigner and reports.
Vector ideal_target_state(const ExperimentConfig& config, const HilbertDims& dims);

/// Writes text atomically (temp + rename).
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace catgrape
