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

#include "catgrape/lindblad.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace catgrape {

namespace {

constexpr Complex kI{0.0, 1.0};

struct CollapseTerm {
  Matrix op;       // jump operator scaled by sqrt(rate)
  Matrix op_dag;
  Matrix anti;     // (1/2) op' op, the anticommutator half
};

// Jump operators with rates folded in. The dephasing dissipator carries a
// factor 2/Tphi so that an undriven transmon superposition loses coherence
// as exp(-t/Tphi).
std::vector<CollapseTerm> collapse_terms(const SystemOperators& sys, const DecoherenceSpec& dec) {
  dec.validate();
  std::vector<CollapseTerm> terms;
  auto add = [&terms](double rate, const Matrix& op) {
    if (rate <= 0.0) return;
    CollapseTerm t;
    t.op = std::sqrt(rate) * op;
    t.op_dag = t.op.adjoint();
    t.anti = 0.5 * t.op_dag * t.op;
    terms.push_back(std::move(t));
  };
  const HilbertDims& dims = sys.dims;
  if (dims.n_osc >= 2) add(dec.gamma1_osc, oscillator_op(annihilation(dims.n_osc), dims));
  if (dims.n_trans >= 2) {
    const Matrix b = transmon_op(annihilation(dims.n_trans), dims);
    add(dec.gamma1_trans, b);
    add(2.0 * dec.gamma_phi_trans, Matrix(b.adjoint() * b));
  }
  return terms;
}

Matrix lindblad_rhs(const Matrix& h, const std::vector<CollapseTerm>& terms, const Matrix& rho) {
  Matrix drho = -kI * (h * rho - rho * h);
  for (const auto& t : terms) {
    drho.noalias() += t.op * rho * t.op_dag;
    drho.noalias() -= t.anti * rho;
    drho.noalias() -= rho * t.anti;
  }
  return drho;
}

// Column-stacking vectorization: vec(A rho B) = (B^T (x) A) vec(rho).
Matrix liouvillian_superoperator(const Matrix& h, const std::vector<CollapseTerm>& terms) {
  const Eigen::Index d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& t : terms) {
    l += kron(t.op.conjugate(), t.op);
    l -= kron(id, t.anti);
    l -= kron(t.anti.transpose(), id);
  }
  return l;
}

}  // namespace

void DecoherenceSpec::validate() const {
  if (gamma1_trans < 0 || gamma_phi_trans < 0 || gamma1_osc < 0)
    throw Error("DecoherenceSpec: rates must be nonnegative");
}

DecoherenceSpec DecoherenceSpec::from_model(const HamiltonianModel& model) {
  model.validate();
  return {1.0 / model.t1_trans, 1.0 / model.tphi_trans, 1.0 / model.t1_osc};
}

Matrix dissipator(const Matrix& op, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols() || rho.rows() != rho.cols())
    throw Error("dissipator: shape mismatch");
  const Matrix nd = op.adjoint() * op;
  return op * rho * op.adjoint() - 0.5 * (nd * rho + rho * nd);
}

void validate_density(const Matrix& rho, const char* where) {
  if (rho.rows() != rho.cols()) throw Error(std::string(where) + ": density matrix not square");
  if (hermiticity_defect(rho) > 1e-10)
    throw Error(std::string(where) + ": density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw Error(std::string(where) + ": density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw Error(std::string(where) + ": density matrix has negative eigenvalues");
}

Matrix evolve_density(const Matrix& rho0, const ControlWaveform& waveform,
                      const SystemOperators& sys, const DecoherenceSpec& dec,
                      const LindbladOptions& options) {
  waveform.validate();
  validate_density(rho0, "evolve_density");
  if (rho0.rows() != sys.dims.joint()) throw Error("evolve_density: dimension mismatch");
  if (options.substeps_per_sample < 1) throw Error("evolve_density: substeps must be >= 1");

  const auto terms = collapse_terms(sys, dec);
  Matrix rho = rho0;
  const int n = waveform.steps();

  for (int k = 0; k < n; ++k) {
    Matrix h = sys.h0;
    for (int i = 0; i < 4; ++i)
      if (waveform.samples(k, i) != 0.0) h += waveform.samples(k, i) * sys.drives[i];

    if (options.superoperator_mode) {
      const Matrix l = liouvillian_superoperator(h, terms);
      const Matrix propagator = Matrix(waveform.dt * l).exp();
      const Eigen::Index d = rho.rows();
      Vector vec_rho(d * d);
      for (Eigen::Index c = 0; c < d; ++c) vec_rho.segment(c * d, d) = rho.col(c);
      const Vector out = propagator * vec_rho;
      for (Eigen::Index c = 0; c < d; ++c) rho.col(c) = out.segment(c * d, d);
    } else {
      const double h_sub = waveform.dt / options.substeps_per_sample;
      for (int s = 0; s < options.substeps_per_sample; ++s) {
        const Matrix k1 = lindblad_rhs(h, terms, rho);
        const Matrix k2 = lindblad_rhs(h, terms, Matrix(rho + 0.5 * h_sub * k1));
        const Matrix k3 = lindblad_rhs(h, terms, Matrix(rho + 0.5 * h_sub * k2));
        const Matrix k4 = lindblad_rhs(h, terms, Matrix(rho + h_sub * k3));
        rho += (h_sub / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    // The generator is trace-free and Hermiticity-preserving; keep roundoff
    // from accumulating over long pulses.
    rho = 0.5 * (rho + rho.adjoint().eval());
  }
  return rho;
}

GateSimResult simulated_gate_fidelity(const ControlWaveform& waveform, const GateSpec& gate,
                                      const LogicalBasis& basis, const SystemOperators& sys,
                                      const DecoherenceSpec& dec,
                                      const LindbladOptions& options) {
  if (!(basis.dims == sys.dims)) throw Error("simulated_gate_fidelity: dimension mismatch");

  // Tomographically complete logical inputs.
  const Vector* inputs[4] = {&basis.plus_z, &basis.minus_z, &basis.plus_x, &basis.plus_y};
  Eigen::Matrix2cd outputs[4];
  double max_leakage = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Matrix rho0 = (*inputs[i]) * inputs[i]->adjoint();
    const Matrix rho_t = evolve_density(rho0, waveform, sys, dec, options);
    outputs[i] = basis.project_density(rho_t);
    max_leakage = std::max(max_leakage, 1.0 - outputs[i].trace().real());
  }

  // Channel action on the Pauli basis by linearity:
  // E(I) = E(+Z) + E(-Z); E(Z) = E(+Z) - E(-Z); E(P) = 2 E(+P) - E(I).
  const Eigen::Matrix2cd e_i = outputs[0] + outputs[1];
  const Eigen::Matrix2cd e_z = outputs[0] - outputs[1];
  const Eigen::Matrix2cd e_x = 2.0 * outputs[2] - e_i;
  const Eigen::Matrix2cd e_y = 2.0 * outputs[3] - e_i;

  Eigen::Matrix2cd paulis[4] = {Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd(), Eigen::Matrix2cd(),
                                Eigen::Matrix2cd()};
  paulis[1] << 0, 1, 1, 0;
  paulis[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  paulis[3] << 1, 0, 0, -1;
  const Eigen::Matrix2cd* images[4] = {&e_i, &e_x, &e_y, &e_z};

  GateSimResult result;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      result.ptm.r(a, b) = 0.5 * (paulis[a] * (*images[b])).trace().real();
  result.ideal_ptm = ptm_of_unitary(gate.unitary);
  result.leakage = max_leakage;
  result.average_fidelity =
      (result.ideal_ptm.r.transpose() * result.ptm.r).trace() / 2.0 / 3.0 + 1.0 / 3.0;
  return result;
}

}  // namespace catgrape
