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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "catgrape/lindblad.hpp"

namespace catgrape {

/// The 24-element single-qubit Clifford rotation group, represented by
/// exact integer 3x3 Bloch matrices, generated by the 8-gate set
/// {I, X90, mX90, X180, Y90, mY90, Y180, H}. Each element stores its
/// shortest decomposition (at most 3 gates, lexicographic tie-break on the
/// time-ordered name sequence).
class CliffordGroup {
 public:
  static const CliffordGroup& instance();

  int size() const { return static_cast<int>(elements_.size()); }
  int identity() const { return 0; }
  int element_of(const std::string& gate_name) const;
  /// Index of "apply `before`, then `after`".
  int compose(int after, int before) const;
  int inverse(int element) const;
  /// Time-ordered gate names whose product equals the element.
  const std::vector<std::string>& decomposition(int element) const;
  /// Bloch rotation of the element as a double matrix.
  Eigen::Matrix3d bloch(int element) const;

 private:
  CliffordGroup();
  std::vector<std::array<int, 9>> elements_;
  std::map<std::array<int, 9>, int> index_;
  std::map<std::string, int> generator_index_;
  std::vector<std::vector<std::string>> decompositions_;
};

struct RbSequence {
  std::vector<std::string> gates;       // time-ordered random gates
  std::vector<std::string> correction;  // time-ordered inversion gates (<= 3)
};

/// Draws `length` gates uniformly from the 8-gate set and appends the
/// correction that inverts the composition exactly (group arithmetic).
RbSequence sample_sequence(int length, std::mt19937_64& rng);

/// Simulated logical channels of the RB gate set, keyed by gate name.
struct GateChannelSet {
  std::map<std::string, PauliTransferMatrix> channels;

  void validate() const;  // all 8 RB gates present and trace-preserving
  static GateChannelSet ideal();
  static GateChannelSet depolarizing(double p);
};

struct RbConfig {
  std::vector<int> lengths = {1, 2, 4, 8, 12, 16, 24, 32};
  int shots = 2000;        // Bernoulli draws per length; 0 = exact expectations
  int sequences = 32;      // fresh sequences per length in exact mode
  std::uint64_t seed = 0;
  std::string interleave;  // gate name interleaved after every random gate
};

struct RBResult {
  Eigen::VectorXi lengths;
  Eigen::VectorXd p;        // success probability per length
  Eigen::VectorXd stderr_p;
  int shots = 0;
};

/// Runs randomized benchmarking at the Pauli-transfer-matrix level with a
/// fresh random sequence for every shot.
RBResult run_rb(const GateChannelSet& channels, const RbConfig& config);

/// Full-master-equation mode: every gate application evolves the joint
/// density matrix through its pulse, bracketed by the encode and decode
/// pulses; success is the transmon ground-state population after decoding.
/// shots = 0 uses exact expectation values (desk scale).
struct PulseSet {
  std::map<std::string, ControlWaveform> gates;
  ControlWaveform encode;
  ControlWaveform decode;
};

RBResult run_rb_lindblad(const PulseSet& pulses, const SystemOperators& sys,
                         const DecoherenceSpec& dec, const RbConfig& config,
                         const LindbladOptions& options = {});

struct DecayFit {
  double amplitude = 0.0;
  double tau = std::numeric_limits<double>::infinity();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();  // over (A, tau)
  Eigen::VectorXd residuals;
  bool decaying = false;  // false marks the tau = +infinity sentinel
};

/// Levenberg-Marquardt fit of p(n) = 0.5 + A exp(-n / tau) with log-linear
/// initialization. Non-decaying data returns the tau = +infinity sentinel.
DecayFit fit_decay(const RBResult& result);

/// Average error per gate from the RB decay constant:
/// r = (1 - exp(-1/tau)) / 2.
double rb_error(double tau_rb);

/// Error of an interleaved gate from the interleaved and reference decay
/// constants: r = (1 - exp(1/tau_rb - 1/tau_gate)) / 2. A gate decay slower
/// than the reference gives r < 0, which is statistically possible and
/// reported as-is.
double irb_error(double tau_gate, double tau_rb);

}  // namespace catgrape
