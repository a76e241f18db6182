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

#include <string>
#include <string_view>
#include <vector>

#include "catgrape/dynamics.hpp"

namespace catgrape {

/// Four-component cat codeword in the oscillator space. sign = +1 selects
/// the word supported on photon numbers n = 0 mod 4, sign = -1 the word on
/// n = 2 mod 4; both have even parity. Throws if the truncated tail mass
/// exceeds 1e-9.
Vector codeword(Complex alpha, int sign, int n_osc);

/// Joint-space basis vector |osc = n, trans = level>.
Vector fock_state(int n, int trans_level, const HilbertDims& dims);

/// Cat-code logical basis in the joint space, transmon in |g>.
/// Z eigenstates are the codewords; X and Y are the usual superpositions.
struct LogicalBasis {
  Complex alpha;
  HilbertDims dims;
  Vector plus_z, minus_z, plus_x, minus_x, plus_y, minus_y;

  static LogicalBasis make(Complex alpha, const HilbertDims& dims);

  /// 2x2 logical-space component matrix <L_i| rho |L_j> over {+Z, -Z}.
  Eigen::Matrix2cd project_density(const Matrix& joint_rho) const;
  /// Joint-space density matrix of a logical 2x2 density matrix.
  Matrix embed_density(const Eigen::Matrix2cd& logical_rho) const;
  /// Joint-space vector of a logical pure state (c0, c1) over {+Z, -Z}.
  Vector embed_state(const Eigen::Vector2cd& amplitudes) const;
};

/// Named gate on the logical qubit. Rotations are exp(-i theta sigma / 2);
/// the 180-degree rotations and H use the plain Pauli/Hadamard matrices so
/// that X180*X180 = I holds exactly at the matrix level.
struct GateSpec {
  std::string name;
  Eigen::Matrix2cd unitary;

  static GateSpec named(std::string_view name);
  /// The full gate list: I, X90, mX90, X180, Y90, mY90, Y180, H, T.
  static const std::vector<std::string>& all_names();
  /// First 8 names (T excluded), the randomized-benchmarking set.
  static const std::vector<std::string>& rb_names();
};

/// {|g,0> -> |g,+Z_L>, |e,0> -> |g,-Z_L>}.
StateTransferSet encode_transfer_set(const LogicalBasis& basis);
/// The reverse map of encode_transfer_set.
StateTransferSet decode_transfer_set(const LogicalBasis& basis);

/// {|g,+Z_L> -> U|+Z_L>, |g,-Z_L> -> U|-Z_L>} with U acting in the logical
/// span; the coherent fidelity pins the relative phase of the two targets.
StateTransferSet gate_transfer_set(const LogicalBasis& basis, const GateSpec& gate);

/// Single transfer |g,0> -> |g,n_target>.
StateTransferSet fock_preparation_set(int n_target, const HilbertDims& dims);

/// Targets flip the transmon g <-> e on odd photon-number states and leave
/// even ones alone.
StateTransferSet parity_map_set(const std::vector<Vector>& probes, const HilbertDims& dims);

/// Default parity-map probes: |g, n> for n = 0..n_probe-1.
std::vector<Vector> fock_parity_probes(int n_probe, const HilbertDims& dims);

/// Targets apply exp(+i delta_t (K/2) a'^2 a^2), undoing free Kerr evolution
/// of duration delta_t, on a spanning set of logical states.
StateTransferSet kerr_correction_set(double delta_t, const HamiltonianModel& model,
                                     const LogicalBasis& basis);

}  // namespace catgrape
