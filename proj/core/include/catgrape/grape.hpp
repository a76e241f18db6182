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
#include <functional>
#include <string>
#include <vector>

#include "catgrape/dynamics.hpp"

namespace catgrape {

/// Lagrange-multiplier weights of the penalty terms and the per-drive
/// amplitude cap (rad/ns). The defaults are starting points, tuned per
/// problem through the config file.
struct PenaltyWeights {
  double lambda_amplitude = 1e4;
  double lambda_derivative = 1e-3;
  double lambda_discrepancy = 1.0;
  double epsilon_max = mhz_to_rad_ns(10.0);

  void validate() const;
};

/// Hard spectral window per drive, rad/ns. Frequencies outside
/// [omega_min, omega_max] carry no optimization freedom.
struct BandLimit {
  double omega_min_c = -mhz_to_rad_ns(20.0);
  double omega_max_c = mhz_to_rad_ns(20.0);
  double omega_min_t = -mhz_to_rad_ns(20.0);
  double omega_max_t = mhz_to_rad_ns(20.0);

  double omega_min(int drive) const { return drive == 0 ? omega_min_c : omega_min_t; }
  double omega_max(int drive) const { return drive == 0 ? omega_max_c : omega_max_t; }
  void validate(double dt) const;  // -pi/dt <= min < max <= pi/dt
};

/// Frequency-domain control coefficients, one column per drive (0 = C, 1 = T),
/// unitary-DFT convention. Bin j carries angular frequency
/// omega_j = 2 pi s_j / (N dt) with s_j = j for j < (N+1)/2 and j - N above.
using FreqControls = Eigen::MatrixX2cd;

Eigen::VectorXd frequency_grid(int n, double dt);

/// In-band bin mask for one drive.
Eigen::Array<bool, Eigen::Dynamic, 1> band_mask(int n, double dt, const BandLimit& band,
                                                int drive);

/// Inverse unitary DFT of the coefficients with out-of-band bins zeroed.
ControlWaveform band_project(const FreqControls& coeffs, const BandLimit& band, double dt);

/// Forward unitary DFT of the time-domain samples (no masking).
FreqControls time_to_freq(const ControlWaveform& waveform);

struct PenaltyEval {
  double value = 0.0;
  Eigen::Matrix<double, Eigen::Dynamic, 4> gradient;  // like waveform samples
};

/// g = sum over drives and samples of (|eps| - eps_max)^2 where |eps| exceeds
/// the cap, zero elsewhere; exact gradient.
PenaltyEval amplitude_penalty(const ControlWaveform& waveform, double epsilon_max);

/// g = sum over drives of sum_n |eps((n+1)dt) - eps(n dt)|^2, the
/// piecewise-constant form of the integrated squared slew rate.
PenaltyEval derivative_penalty(const ControlWaveform& waveform);

struct DiscrepancyEval {
  double value = 0.0;
  Eigen::VectorXd gradient;  // d value / d F_k
  bool warning = false;      // set when fewer than 2 truncations were given
};

/// Sum over unordered truncation pairs of (F_a - F_b)^2; zero iff all equal.
DiscrepancyEval discrepancy_penalty(const Eigen::VectorXd& fidelities);

/// How the initial frequency-domain coefficients are produced.
struct SeedSpec {
  enum class Kind { Zero, Random, Waveform };
  Kind kind = Kind::Random;
  double amplitude = 1e-3;     // target time-domain RMS, rad/ns
  ControlWaveform waveform;    // for Kind::Waveform
};

/// Full description of one synthesis task. Transfer sets are listed per
/// truncation, aligned with `truncation_pads`, and must embed the same
/// physical states at every truncation.
struct OptimizationProblem {
  HamiltonianModel model;
  HilbertDims base_dims;
  std::vector<int> truncation_pads = {0, 2};
  std::vector<StateTransferSet> transfer_sets;
  PenaltyWeights penalties;
  BandLimit band;
  int steps = 250;
  double dt = 2.0;
  SeedSpec seed;

  std::vector<HilbertDims> truncations() const;
  void validate() const;
};

struct OptimizerConfig {
  int max_iter = 2000;
  double grad_tol = 1e-9;
  double fidelity_goal = 0.999;
  int memory_m = 10;
  std::uint64_t seed = 0;
};

struct CostEval {
  double cost = 0.0;
  FreqControls gradient;        // d cost / d(Re c) + i d cost / d(Im c), masked
  ControlWaveform waveform;     // band-projected controls this cost was taken at
  Eigen::VectorXd fidelities;   // per truncation
  double amplitude_penalty = 0.0;
  double derivative_penalty = 0.0;
  double discrepancy_penalty = 0.0;

  double mean_fidelity() const { return fidelities.size() ? fidelities.mean() : 0.0; }
};

/// cost = mean_k F_k - lambda_amp g_amp - lambda_der g_der - lambda_disc g_disc,
/// with the exact gradient chained through the band-limited DFT
/// parametrization.
CostEval total_cost(const OptimizationProblem& problem, const FreqControls& coeffs);

enum class Termination { GoalReached, GradientConverged, MaxIterations, LineSearchStall };

std::string to_string(Termination t);

struct OptimizationResult {
  ControlWaveform waveform;
  FreqControls coefficients;
  Eigen::VectorXd fidelities;
  double amplitude_penalty = 0.0;
  double derivative_penalty = 0.0;
  double discrepancy_penalty = 0.0;
  double cost = 0.0;
  std::vector<double> cost_trace;  // accepted costs, starting at the seed point
  int iterations = 0;
  Termination termination = Termination::MaxIterations;
  int evaluations = 0;

  double mean_fidelity() const { return fidelities.size() ? fidelities.mean() : 0.0; }
};

/// Limited-memory quasi-Newton ascent (two-loop recursion over the last
/// memory_m curvature pairs) with Armijo backtracking. Cost is monotonically
/// non-decreasing across accepted steps; a failed line search returns the
/// best point seen with Termination::LineSearchStall.
OptimizationResult optimize(const OptimizationProblem& problem, const OptimizerConfig& config,
                            const std::function<void(int, const CostEval&)>& progress = {});

}  // namespace catgrape
