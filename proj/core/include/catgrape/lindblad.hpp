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

#include "catgrape/catcode.hpp"
#include "catgrape/dynamics.hpp"
#include "catgrape/tomography.hpp"

namespace catgrape {

/// Decoherence rates in 1/ns; any may be zero. The dephasing convention is
/// chosen so that a bare transmon superposition decoheres as exp(-t/Tphi).
struct DecoherenceSpec {
  double gamma1_trans = 0.0;   // 1 / T1_trans
  double gamma_phi_trans = 0.0;  // 1 / Tphi_trans
  double gamma1_osc = 0.0;     // 1 / T1_osc

  void validate() const;
  static DecoherenceSpec from_model(const HamiltonianModel& model);
  static DecoherenceSpec none() { return {}; }
};

/// D[a](rho) = a rho a' - (1/2){a'a, rho}; traceless for any operator a.
Matrix dissipator(const Matrix& op, const Matrix& rho);

struct LindbladOptions {
  int substeps_per_sample = 4;   // fixed RK4 substeps per control sample
  bool superoperator_mode = false;  // exact per-step superoperator exponential
};

void validate_density(const Matrix& rho, const char* where);

/// Integrates d rho/dt = -i[H(t), rho] + g1c D[a] + g1t D[b] + 2 gphi D[b'b]
/// through the piecewise-constant waveform. The default integrator is
/// fixed-substep RK4 on the master equation; superoperator_mode instead
/// exponentiates the full Liouvillian per control step (O(d^6), cross-check
/// use only).
Matrix evolve_density(const Matrix& rho0, const ControlWaveform& waveform,
                      const SystemOperators& sys, const DecoherenceSpec& dec,
                      const LindbladOptions& options = {});

struct GateSimResult {
  double average_fidelity = 0.0;
  double leakage = 0.0;  // worst code-space trace deficit over the basis inputs
  PauliTransferMatrix ptm;
  PauliTransferMatrix ideal_ptm;
};

/// Simulated average gate fidelity of a pulse: evolves the four logical
/// basis densities {+Z, -Z, +X, +Y}, projects back onto the code space,
/// assembles the Pauli transfer matrix and applies
/// F_avg = (Tr(R_ideal^T R_meas)/2 + 1)/3. Leakage is reported, not absorbed.
GateSimResult simulated_gate_fidelity(const ControlWaveform& waveform, const GateSpec& gate,
                                      const LogicalBasis& basis, const SystemOperators& sys,
                                      const DecoherenceSpec& dec,
                                      const LindbladOptions& options = {});

}  // namespace catgrape
