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

#include "catgrape/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "catgrape/tomography.hpp"

namespace catgrape {

namespace {

std::string num(double v, const char* format = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// Simulated average-gate-infidelity reference values (percent) published for
// a comparable device; reports quote them for orientation only.
const std::map<std::string, double>& literature_sim_infidelity_pct() {
  static const std::map<std::string, double> values = {
      {"I", 0.31},   {"X90", 0.78}, {"mX90", 0.83}, {"X180", 1.09}, {"Y90", 0.76},
      {"mY90", 0.75}, {"Y180", 1.67}, {"H", 1.00},   {"T", 0.40}};
  return values;
}

WaveformHeader make_header(const ExperimentConfig& config) {
  WaveformHeader h;
  h.carrier_t_mhz = rad_ns_to_mhz(config.model.omega_t);
  h.carrier_c_mhz = rad_ns_to_mhz(config.model.omega_c);
  h.model_hash = model_hash(config.model);
  return h;
}

HilbertDims largest_truncation(const ExperimentConfig& config) {
  int max_pad = 0;
  for (int pad : config.truncation_pads) max_pad = std::max(max_pad, pad);
  return {config.base_dims.n_osc + max_pad, config.base_dims.n_trans};
}

ControlWaveform load_waveform(const std::filesystem::path& path) {
  if (path.empty()) throw Error("this subcommand needs --waveform PATH");
  return read_waveform(path).waveform;
}

std::string ptm_table(const PauliTransferMatrix& ptm) {
  std::ostringstream out;
  out << "# basis order: I X Y Z; entry R[a][b] = Tr(P_a E(P_b)) / 2\n";
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out << (b ? " " : "") << num(ptm.r(a, b), "%+.12f");
    out << "\n";
  }
  return out.str();
}

// Closed-system propagation of a pure state through the pulse.
Vector propagate_state(const ControlWaveform& waveform, const Vector& psi0,
                       const SystemOperators& sys) {
  StateTransferSet set;
  set.dims = sys.dims;
  set.initial = {psi0};
  set.target = {psi0};  // unused; propagate only reads targets for backward states
  const auto cache = propagate(waveform, set, sys);
  return cache.forward[0].back();
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string());
    out << text;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Vector ideal_target_state(const ExperimentConfig& config, const HilbertDims& dims) {
  switch (config.target.kind) {
    case TargetSpec::Kind::Fock:
      return fock_state(config.target.fock_n, 0, dims);
    case TargetSpec::Kind::Encode:
      return LogicalBasis::make(config.target.alpha, dims).plus_z;
    case TargetSpec::Kind::Decode:
      return fock_state(0, 0, dims);
    case TargetSpec::Kind::Gate: {
      const auto basis = LogicalBasis::make(config.target.alpha, dims);
      const auto gate = GateSpec::named(config.target.gate);
      return basis.embed_state(gate.unitary.col(0));
    }
    case TargetSpec::Kind::Parity:
    case TargetSpec::Kind::KerrCorrect:
      return LogicalBasis::make(config.target.alpha, dims).plus_z;
  }
  throw Error("ideal_target_state: unhandled target kind");
}

SynthesisOutcome run_synthesize(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const auto problem = config.make_problem();

  log << "synthesize: target " << config.target.describe() << ", " << config.steps
      << " steps of " << config.dt << " ns, truncations";
  for (const auto& dims : problem.truncations()) log << " " << dims.n_osc;
  log << "\n";

  SynthesisOutcome outcome;
  outcome.result = optimize(problem, config.optimizer,
                            [&](int iter, const CostEval& eval) {
                              if (iter % 50 == 0)
                                log << "  iter " << iter << " cost " << num(eval.cost, "%.8f")
                                    << " mean F " << num(eval.mean_fidelity(), "%.8f") << "\n";
                            });
  const auto& result = outcome.result;
  log << "  done after " << result.iterations << " iterations ("
      << to_string(result.termination) << "), mean F = " << num(result.mean_fidelity(), "%.8f")
      << "\n";

  outcome.waveform_path = out_dir / "waveform.txt";
  write_waveform(outcome.waveform_path, result.waveform, make_header(config));

  std::ostringstream report;
  report << "# catgrape synthesis report\n";
  report << "target = " << config.target.describe() << "\n";
  report << "steps = " << config.steps << "\n";
  report << "dt_ns = " << num(config.dt) << "\n";
  report << "duration_ns = " << num(config.steps * config.dt) << "\n";
  const auto truncs = problem.truncations();
  for (std::size_t i = 0; i < truncs.size(); ++i)
    report << "fidelity_n" << truncs[i].n_osc << " = " << num(result.fidelities(i), "%.12f")
           << "\n";
  report << "mean_fidelity = " << num(result.mean_fidelity(), "%.12f") << "\n";
  if (truncs.size() >= 2) {
    double max_gap = 0.0;
    for (Eigen::Index a = 0; a < result.fidelities.size(); ++a)
      for (Eigen::Index b = a + 1; b < result.fidelities.size(); ++b)
        max_gap = std::max(max_gap, std::abs(result.fidelities(a) - result.fidelities(b)));
    report << "max_truncation_discrepancy = " << num(max_gap, "%.3e") << "\n";
  }
  report << "amplitude_penalty = " << num(result.amplitude_penalty, "%.6e") << "\n";
  report << "derivative_penalty = " << num(result.derivative_penalty, "%.6e") << "\n";
  report << "discrepancy_penalty = " << num(result.discrepancy_penalty, "%.6e") << "\n";
  report << "cost = " << num(result.cost, "%.12f") << "\n";
  report << "iterations = " << result.iterations << "\n";
  report << "evaluations = " << result.evaluations << "\n";
  report << "termination = " << to_string(result.termination) << "\n";
  report << "fidelity_goal = " << num(config.optimizer.fidelity_goal) << "\n";
  report << "seed = " << config.optimizer.seed << "\n";

  outcome.report_path = out_dir / "synthesis_report.txt";
  write_text_file(outcome.report_path, report.str());

  std::ostringstream trace;
  trace << "# iteration cost\n";
  for (std::size_t i = 0; i < result.cost_trace.size(); ++i)
    trace << i << " " << num(result.cost_trace[i], "%.15e") << "\n";
  write_text_file(out_dir / "cost_trace.txt", trace.str());

  outcome.exit_code =
      result.termination == Termination::GoalReached ? kExitGoalMet : kExitBelowGoal;
  return outcome;
}

int run_simulate(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
                 const std::filesystem::path& out_dir, std::ostream& log) {
  if (config.target.kind != TargetSpec::Kind::Gate)
    throw Error("simulate: target kind must be gate");
  std::filesystem::create_directories(out_dir);

  const ControlWaveform waveform = load_waveform(waveform_path);
  const HilbertDims dims = largest_truncation(config);
  const auto sys = SystemOperators::build(config.model, dims);
  const auto basis = LogicalBasis::make(config.target.alpha, dims);
  const auto gate = GateSpec::named(config.target.gate);
  const auto dec = DecoherenceSpec::from_model(config.model);

  log << "simulate: gate " << gate.name << " under decoherence, n_osc = " << dims.n_osc << "\n";
  const auto full = simulated_gate_fidelity(waveform, gate, basis, sys, dec, config.lindblad);

  std::ostringstream report;
  report << "# catgrape open-system gate report\n";
  report << "gate = " << gate.name << "\n";
  report << "n_osc = " << dims.n_osc << "\n";
  report << "average_fidelity = " << num(full.average_fidelity, "%.9f") << "\n";
  report << "infidelity_pct = " << num(100.0 * (1.0 - full.average_fidelity), "%.6f") << "\n";
  report << "leakage = " << num(full.leakage, "%.3e") << "\n";

  // Per-rate breakdown: infidelity with each decoherence channel removed.
  struct Variant {
    const char* name;
    DecoherenceSpec dec;
  };
  const std::vector<Variant> variants = {
      {"no_transmon_dephasing", {dec.gamma1_trans, 0.0, dec.gamma1_osc}},
      {"no_transmon_relaxation", {0.0, dec.gamma_phi_trans, dec.gamma1_osc}},
      {"no_oscillator_relaxation", {dec.gamma1_trans, dec.gamma_phi_trans, 0.0}},
      {"closed_system", {0.0, 0.0, 0.0}},
  };
  for (const auto& variant : variants) {
    const auto r = simulated_gate_fidelity(waveform, gate, basis, sys, variant.dec,
                                           config.lindblad);
    report << "infidelity_pct_" << variant.name << " = "
           << num(100.0 * (1.0 - r.average_fidelity), "%.6f") << "\n";
    log << "  " << variant.name << ": infidelity "
        << num(100.0 * (1.0 - r.average_fidelity), "%.4f") << "%\n";
  }

  const auto& lit = literature_sim_infidelity_pct();
  if (auto it = lit.find(gate.name); it != lit.end()) {
    report << "# literature reference (published simulated infidelity for a comparable\n";
    report << "# device, for orientation only, not a target of this run):\n";
    report << "literature_sim_infidelity_pct = " << num(it->second, "%.2f") << "\n";
  }

  write_text_file(out_dir / "simulate_report.txt", report.str());
  write_text_file(out_dir / "ptm.txt", ptm_table(full.ptm));
  log << "  average fidelity " << num(full.average_fidelity, "%.6f") << ", leakage "
      << num(full.leakage, "%.2e") << "\n";
  return kExitGoalMet;
}

int run_wigner(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
               const std::filesystem::path& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const HilbertDims dims = largest_truncation(config);
  const auto sys = SystemOperators::build(config.model, dims);

  Vector state;
  if (!waveform_path.empty()) {
    const ControlWaveform waveform = load_waveform(waveform_path);
    state = propagate_state(waveform, fock_state(0, 0, dims), sys);
    log << "wigner: achieved state of " << waveform_path.string() << "\n";
  } else {
    state = ideal_target_state(config, dims);
    log << "wigner: ideal target state (" << config.target.describe() << ")\n";
  }

  const Matrix joint_rho = state * state.adjoint();
  const Matrix rho_osc = reduce_to_oscillator(joint_rho, dims);
  const auto grid =
      wigner(rho_osc, square_grid(config.wigner.extent, config.wigner.points_per_side));

  std::ostringstream table;
  table << "# re_beta im_beta wigner truncation_warning\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    table << num(grid.points[i].real(), "%.6f") << " " << num(grid.points[i].imag(), "%.6f")
          << " " << num(grid.values(static_cast<Eigen::Index>(i)), "%.9e") << " "
          << (grid.truncation_warning[i] ? 1 : 0) << "\n";
  write_text_file(out_dir / "wigner.txt", table.str());

  std::ostringstream report;
  report << "# catgrape wigner report\n";
  report << "points = " << grid.points.size() << "\n";
  report << "extent = " << num(config.wigner.extent) << "\n";
  report << "w_origin = " << num((2.0 / M_PI) * (rho_osc * parity_operator(dims.n_osc))
                                     .trace()
                                     .real(),
                                 "%.9f")
         << "\n";
  double p_ground = 0.0;
  for (int n = 0; n < dims.n_osc; ++n)
    p_ground += joint_rho(n * dims.n_trans, n * dims.n_trans).real();
  report << "transmon_excited_population = " << num(1.0 - p_ground, "%.6e") << "\n";

  if (config.wigner.reconstruct_n_max > 0) {
    const Matrix rho_rec = reconstruct_from_wigner(grid, config.wigner.reconstruct_n_max);
    // Fidelity of the reconstruction against the oscillator state,
    // F = <psi|rho|psi> for the pure achieved state.
    const int n_max = config.wigner.reconstruct_n_max;
    const int n_common = std::min(n_max, dims.n_osc);
    Vector psi_osc = Vector::Zero(n_max);
    // Oscillator component conditioned on transmon ground.
    for (int n = 0; n < n_common; ++n) psi_osc(n) = state(n * dims.n_trans);
    const double norm = psi_osc.norm();
    double f = 0.0;
    if (norm > 1e-9) {
      psi_osc /= norm;
      f = (psi_osc.adjoint() * rho_rec * psi_osc)(0, 0).real();
    }
    report << "reconstruction_n_max = " << n_max << "\n";
    report << "reconstruction_fidelity = " << num(f, "%.6f") << "\n";
    log << "  reconstruction fidelity " << num(f, "%.6f") << "\n";
  }

  write_text_file(out_dir / "wigner_report.txt", report.str());
  return kExitGoalMet;
}

int run_ptomo(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
              const std::filesystem::path& out_dir, std::ostream& log) {
  if (config.target.kind != TargetSpec::Kind::Gate)
    throw Error("ptomo: target kind must be gate");
  std::filesystem::create_directories(out_dir);

  const auto gate = GateSpec::named(config.target.gate);
  const auto ideal = ptm_of_unitary(gate.unitary);

  PauliTransferMatrix measured = ideal;
  double leakage = 0.0;
  if (!waveform_path.empty()) {
    const ControlWaveform waveform = load_waveform(waveform_path);
    const HilbertDims dims = largest_truncation(config);
    const auto sys = SystemOperators::build(config.model, dims);
    const auto basis = LogicalBasis::make(config.target.alpha, dims);
    const auto dec = DecoherenceSpec::from_model(config.model);
    const auto sim = simulated_gate_fidelity(waveform, gate, basis, sys, dec, config.lindblad);
    measured = sim.ptm;
    leakage = sim.leakage;
    log << "ptomo: simulated channel of " << waveform_path.string() << "\n";
  } else {
    log << "ptomo: ideal gate channel (no waveform given)\n";
  }

  write_text_file(out_dir / "ptm.txt", ptm_table(measured));

  std::ostringstream report;
  report << "# catgrape process tomography report\n";
  report << "gate = " << gate.name << "\n";
  const double overlap = (ideal.r.transpose() * measured.r).trace();
  report << "average_fidelity = " << num((overlap / 2.0 + 1.0) / 3.0, "%.9f") << "\n";
  report << "leakage = " << num(leakage, "%.3e") << "\n";
  report << "# baseline process fidelities published for a comparable device\n";
  report << "# (orientation only): F_PT(encode-decode) = 0.964, F_PT(no op) = 0.982\n";
  write_text_file(out_dir / "ptomo_report.txt", report.str());
  return kExitGoalMet;
}

int run_rb_command(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& log) {
  std::filesystem::create_directories(out_dir);

  RbConfig rb_config;
  rb_config.lengths = config.rb.lengths;
  rb_config.shots = config.rb.shots;
  rb_config.sequences = config.rb.sequences;
  rb_config.seed = config.optimizer.seed;
  rb_config.interleave = config.rb.interleave;

  RBResult result;
  std::string mode_name;
  if (config.rb.mode == RbSettings::Mode::Lindblad) {
    mode_name = "lindblad";
    if (config.rb.waveform_dir.empty())
      throw Error("rb: lindblad mode needs waveform_dir in [rb]");
    PulseSet pulses;
    for (const auto& name : GateSpec::rb_names())
      pulses.gates[name] =
          read_waveform(config.rb.waveform_dir / (name + ".txt")).waveform;
    pulses.encode = read_waveform(config.rb.waveform_dir / "encode.txt").waveform;
    pulses.decode = read_waveform(config.rb.waveform_dir / "decode.txt").waveform;
    const HilbertDims dims = largest_truncation(config);
    const auto sys = SystemOperators::build(config.model, dims);
    const auto dec = DecoherenceSpec::from_model(config.model);
    log << "rb: full master-equation mode, n_osc = " << dims.n_osc << "\n";
    result = run_rb_lindblad(pulses, sys, dec, rb_config, config.lindblad);
  } else {
    mode_name = "ptm";
    GateChannelSet channels;
    if (config.rb.depolarizing_p >= 0.0) {
      channels = GateChannelSet::depolarizing(config.rb.depolarizing_p);
      log << "rb: ptm mode with synthetic depolarizing channels, p = "
          << config.rb.depolarizing_p << "\n";
    } else if (!config.rb.waveform_dir.empty()) {
      const HilbertDims dims = largest_truncation(config);
      const auto sys = SystemOperators::build(config.model, dims);
      const auto basis = LogicalBasis::make(config.target.alpha, dims);
      const auto dec = DecoherenceSpec::from_model(config.model);
      for (const auto& name : GateSpec::rb_names()) {
        const auto waveform =
            read_waveform(config.rb.waveform_dir / (name + ".txt")).waveform;
        channels.channels[name] = simulated_gate_fidelity(waveform, GateSpec::named(name),
                                                          basis, sys, dec, config.lindblad)
                                      .ptm;
        log << "  channel " << name << " simulated\n";
      }
    } else {
      channels = GateChannelSet::ideal();
      log << "rb: ptm mode with ideal channels\n";
    }
    result = run_rb(channels, rb_config);
  }

  const auto fit = fit_decay(result);

  std::ostringstream table;
  table << "# catgrape randomized benchmarking\n";
  table << "# mode = " << mode_name << "\n";
  if (!rb_config.interleave.empty()) table << "# interleave = " << rb_config.interleave << "\n";
  table << "# n p stderr\n";
  for (Eigen::Index i = 0; i < result.lengths.size(); ++i)
    table << result.lengths(i) << " " << num(result.p(i), "%.9f") << " "
          << num(result.stderr_p(i), "%.9f") << "\n";
  table << "# fit p = 0.5 + A exp(-n/tau)\n";
  table << "fit_amplitude = " << num(fit.amplitude, "%.9f") << "\n";
  table << "fit_tau = " << (fit.decaying ? num(fit.tau, "%.9f") : std::string("inf")) << "\n";
  table << "fit_residual_rms = "
        << num(std::sqrt(fit.residuals.squaredNorm() /
                         std::max<Eigen::Index>(1, fit.residuals.size())),
               "%.3e")
        << "\n";
  if (fit.decaying)
    table << "rb_error_per_gate = " << num(rb_error(fit.tau), "%.9f") << "\n";
  table << "# note: gates here are re-synthesized pulses; agreement with published\n";
  table << "# error rates (average 0.90 % for a comparable device) is expected in\n";
  table << "# magnitude only, not digit-for-digit.\n";
  write_text_file(out_dir / "rb.txt", table.str());

  log << "rb: fitted tau = " << (fit.decaying ? num(fit.tau, "%.3f") : std::string("inf"));
  if (fit.decaying) log << ", r = " << num(rb_error(fit.tau), "%.6f");
  log << "\n";
  return kExitGoalMet;
}

int run_correct(const ExperimentConfig& config, const std::filesystem::path& waveform_path,
                const std::filesystem::path& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const auto file = read_waveform(waveform_path);
  const auto corrected =
      dispersion_correction(file.waveform, config.dispersion_b, config.dispersion_tau);
  const auto out_path = out_dir / "waveform_corrected.txt";
  write_waveform(out_path, corrected, file.header);
  log << "correct: b = " << config.dispersion_b << " ns, tau = " << config.dispersion_tau
      << " ns -> " << out_path.string() << "\n";
  return kExitGoalMet;
}

}  // namespace catgrape
