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

#include "catgrape/operators.hpp"

#include <cmath>
#include <string>

namespace catgrape {

void HilbertDims::validate() const {
  // A 1-level mode is allowed as the degenerate "mode absent" case; the
  // joint space must still be a nontrivial quantum system.
  if (n_osc < 1) throw Error("HilbertDims: n_osc must be >= 1, got " + std::to_string(n_osc));
  if (n_trans < 1) throw Error("HilbertDims: n_trans must be >= 1, got " + std::to_string(n_trans));
  if (joint() < 2) throw Error("HilbertDims: joint dimension must be >= 2");
}

namespace {

// Ladder operator for operator construction; a 1-level mode has none.
Matrix ladder_or_zero(int n) { return n >= 2 ? annihilation(n) : Matrix::Zero(1, 1); }

}  // namespace

void HamiltonianModel::validate() const {
  if (t1_trans <= 0 || tphi_trans <= 0 || t1_osc <= 0)
    throw Error("HamiltonianModel: decoherence times must be positive");
}

HamiltonianModel HamiltonianModel::from_linear_units(double chi_mhz, double kerr_mhz,
                                                     double anh_mhz, double chi_prime_mhz,
                                                     double t1_trans_us, double tphi_trans_us,
                                                     double t1_osc_us, double omega_t_mhz,
                                                     double omega_c_mhz) {
  HamiltonianModel m;
  m.chi = mhz_to_rad_ns(chi_mhz);
  m.kerr = mhz_to_rad_ns(kerr_mhz);
  m.anh = mhz_to_rad_ns(anh_mhz);
  m.chi_prime = mhz_to_rad_ns(chi_prime_mhz);
  m.t1_trans = us_to_ns(t1_trans_us);
  m.tphi_trans = us_to_ns(tphi_trans_us);
  m.t1_osc = us_to_ns(t1_osc_us);
  m.omega_t = mhz_to_rad_ns(omega_t_mhz);
  m.omega_c = mhz_to_rad_ns(omega_c_mhz);
  m.validate();
  return m;
}

Matrix annihilation(int n) {
  if (n < 2) throw Error("annihilation: dimension must be >= 2, got " + std::to_string(n));
  Matrix a = Matrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(double(k + 1));
  return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix oscillator_op(const Matrix& op, const HilbertDims& dims) {
  return kron(op, Matrix::Identity(dims.n_trans, dims.n_trans));
}

Matrix transmon_op(const Matrix& op, const HilbertDims& dims) {
  return kron(Matrix::Identity(dims.n_osc, dims.n_osc), op);
}

Matrix build_static_hamiltonian(const HamiltonianModel& model, const HilbertDims& dims) {
  dims.validate();
  model.validate();
  const Matrix a = oscillator_op(ladder_or_zero(dims.n_osc), dims);
  const Matrix b = transmon_op(ladder_or_zero(dims.n_trans), dims);
  const Matrix ad = a.adjoint();
  const Matrix bd = b.adjoint();
  const Matrix n_osc = ad * a;
  const Matrix n_trans = bd * b;
  const Matrix a2 = ad * ad * a * a;  // a'^2 a^2 = n(n-1) on the oscillator
  const Matrix b2 = bd * bd * b * b;

  return model.chi * n_osc * n_trans + 0.5 * model.kerr * a2 + 0.5 * model.anh * b2 +
         0.5 * model.chi_prime * n_trans * a2;
}

std::array<Matrix, 4> build_drive_operators(const HilbertDims& dims) {
  dims.validate();
  const Complex im(0.0, 1.0);
  const Matrix a = oscillator_op(ladder_or_zero(dims.n_osc), dims);
  const Matrix b = transmon_op(ladder_or_zero(dims.n_trans), dims);
  return {Matrix(a + a.adjoint()), Matrix(im * (a - a.adjoint())),
          Matrix(b + b.adjoint()), Matrix(im * (b - b.adjoint()))};
}

SystemOperators SystemOperators::build(const HamiltonianModel& model, const HilbertDims& dims) {
  return {dims, build_static_hamiltonian(model, dims), build_drive_operators(dims)};
}

}  // namespace catgrape
