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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "catgrape/experiment.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string waveform_path;
  std::string out_dir;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool waveform_required) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* waveform =
      cmd->add_option("--waveform", args.waveform_path, "waveform file for verify-only flows");
  if (waveform_required) waveform->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "output directory (default: [output] dir from config)");
  cmd->add_option("--seed", args.seed, "override the config rng seed");
}

catgrape::ExperimentConfig load(const CommonArgs& args) {
  auto config = catgrape::parse_config_file(args.config_path);
  if (args.seed >= 0) config.optimizer.seed = static_cast<std::uint64_t>(args.seed);
  return config;
}

std::filesystem::path out_dir(const CommonArgs& args, const catgrape::ExperimentConfig& config) {
  return args.out_dir.empty() ? std::filesystem::path(config.out_dir)
                              : std::filesystem::path(args.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse synthesis and in-silico verification for a driven "
               "oscillator-transmon system"};
  app.require_subcommand(1);

  CommonArgs synth_args, sim_args, wigner_args, ptomo_args, rb_args, correct_args;

  auto* synthesize =
      app.add_subcommand("synthesize", "optimize a pulse for the configured target");
  add_common(synthesize, synth_args, false);

  auto* simulate =
      app.add_subcommand("simulate", "open-system gate fidelity of a synthesized pulse");
  add_common(simulate, sim_args, true);

  auto* wigner_cmd = app.add_subcommand("wigner", "Wigner map of the achieved or target state");
  add_common(wigner_cmd, wigner_args, false);

  auto* ptomo = app.add_subcommand("ptomo", "process tomography in the Pauli transfer picture");
  add_common(ptomo, ptomo_args, false);

  auto* rb = app.add_subcommand("rb", "randomized benchmarking of the gate set");
  add_common(rb, rb_args, false);

  auto* correct =
      app.add_subcommand("correct", "apply the dispersion/delay correction to a waveform");
  add_common(correct, correct_args, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synthesize->parsed()) {
      const auto config = load(synth_args);
      const auto outcome =
          catgrape::run_synthesize(config, out_dir(synth_args, config), std::cerr);
      std::cout << "mean_fidelity = " << outcome.result.mean_fidelity() << "\n"
                << "termination = " << catgrape::to_string(outcome.result.termination) << "\n"
                << "waveform = " << outcome.waveform_path.string() << "\n";
      return outcome.exit_code;
    }
    if (simulate->parsed()) {
      const auto config = load(sim_args);
      return catgrape::run_simulate(config, sim_args.waveform_path, out_dir(sim_args, config),
                                    std::cerr);
    }
    if (wigner_cmd->parsed()) {
      const auto config = load(wigner_args);
      return catgrape::run_wigner(config, wigner_args.waveform_path,
                                  out_dir(wigner_args, config), std::cerr);
    }
    if (ptomo->parsed()) {
      const auto config = load(ptomo_args);
      return catgrape::run_ptomo(config, ptomo_args.waveform_path, out_dir(ptomo_args, config),
                                 std::cerr);
    }
    if (rb->parsed()) {
      const auto config = load(rb_args);
      return catgrape::run_rb_command(config, out_dir(rb_args, config), std::cerr);
    }
    if (correct->parsed()) {
      const auto config = load(correct_args);
      return catgrape::run_correct(config, correct_args.waveform_path,
                                   out_dir(correct_args, config), std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return catgrape::kExitError;
  }
  return catgrape::kExitError;
}
