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

#include <functional>
#include <vector>

#include "catgrape/operators.hpp"

namespace catgrape {

/// Oscillator displacement D(beta) = exp(beta a' - beta* a) at truncation n_osc.
Matrix displacement(Complex beta, int n_osc);

/// Photon-number parity (-1)^n on the oscillator.
Matrix parity_operator(int n_osc);

/// Displaced parity D(beta) P D(beta)' = D(2 beta) P, evaluated from the
/// associated-Laguerre closed form of the displacement matrix elements.
/// Unlike exponentiating the truncated generator, these are the exact
/// infinite-dimensional matrix elements restricted to the truncation, so
/// Wigner values stay correct for grid points far from the origin.
Matrix displaced_parity(Complex beta, int n_osc);

/// Partial trace over the transmon, leaving the oscillator density matrix.
Matrix reduce_to_oscillator(const Matrix& joint_rho, const HilbertDims& dims);

/// Wigner samples W(beta) = (2/pi) Tr[D(beta)' rho D(beta) P] on a point list.
struct WignerGrid {
  std::vector<Complex> points;
  Eigen::VectorXd values;
  std::vector<bool> truncation_warning;  // per point: displaced state crowds the cutoff
};

std::vector<Complex> square_grid(double extent, int points_per_side);

WignerGrid wigner(const Matrix& rho_osc, const std::vector<Complex>& betas);

/// Regularized least-squares fit of an n_max x n_max density matrix to the
/// Wigner samples, projected onto the unit-trace positive-semidefinite cone.
/// Requires at least n_max^2 grid points.
Matrix reconstruct_from_wigner(const WignerGrid& grid, int n_max, double ridge = 1e-9);

/// 4x4 real qubit-channel representation over the Pauli basis (I, X, Y, Z),
/// entries R_ab = Tr(P_a E(P_b)) / 2.
struct PauliTransferMatrix {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();

  bool trace_preserving(double tol = 1e-9) const;
  static PauliTransferMatrix identity() { return {}; }
};

/// PTM of a 2x2 unitary.
PauliTransferMatrix ptm_of_unitary(const Eigen::Matrix2cd& u);

/// PTM of a general channel given by its action on a density matrix.
PauliTransferMatrix ptm_of_channel(
    const std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>& channel);

/// Applies the channel to a density matrix via its PTM.
Eigen::Matrix2cd apply_ptm(const PauliTransferMatrix& ptm, const Eigen::Matrix2cd& rho);

/// Qubit process tomography from the 6 cardinal input states, assembled in
/// the Pauli transfer representation. For a unitary V the result is the
/// Bloch rotation matrix of V.
PauliTransferMatrix process_tomography(
    const std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>& channel);

/// F_avg = (Tr(R_ideal^T R_meas)/2 + 1)/3 for trace-preserving qubit PTMs.
double average_fidelity(const PauliTransferMatrix& measured, const PauliTransferMatrix& ideal);

/// Infidelity of the bare operation estimated by subtracting the
/// encode-decode baseline: F(R_encdec vs identity) - F(R_full vs ideal gate).
double delta_fidelity(const PauliTransferMatrix& full_measured,
                      const PauliTransferMatrix& full_ideal,
                      const PauliTransferMatrix& encdec_measured);

}  // namespace catgrape
