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

#include "catgrape/dynamics.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace catgrape {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix total_hamiltonian(const Matrix& h0, const std::array<Matrix, 4>& drives,
                         const Eigen::RowVector4d& sample) {
  if (!sample.allFinite()) throw Error("invalid control sample: non-finite value");
  Matrix h = h0;
  for (int i = 0; i < 4; ++i)
    if (sample(i) != 0.0) h += sample(i) * drives[i];
  return h;
}

Vector step_phases(const Eigen::VectorXd& eigvals, double dt) {
  return (-kI * dt * eigvals.array().cast<Complex>()).exp().matrix();
}

// Divided-difference kernel G_pq = (f(l_p) - f(l_q)) / (l_p - l_q) for
// f(l) = exp(-i dt l), confluent limit f'(l_p) on the diagonal. Computed
// from the precomputed phases; the series branch keeps near-degenerate
// eigenvalue pairs accurate.
Matrix expm_divided_differences(const Eigen::VectorXd& eigvals, const Vector& phases, double dt) {
  const Eigen::Index d = eigvals.size();
  Matrix g(d, d);
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = 0; q < d; ++q) {
      const double delta = eigvals(q) - eigvals(p);
      if (std::abs(dt * delta) < 1e-5) {
        const Complex z = -kI * dt * delta;
        g(p, q) = phases(p) * (-kI * dt) * (1.0 + z / 2.0 + z * z / 6.0);
      } else {
        g(p, q) = (phases(q) - phases(p)) / delta;
      }
    }
  }
  return g;
}

}  // namespace

ControlWaveform ControlWaveform::zeros(int steps, double dt) {
  if (steps < 1) throw Error("ControlWaveform: steps must be >= 1");
  if (dt <= 0) throw Error("ControlWaveform: dt must be positive");
  ControlWaveform w;
  w.dt = dt;
  w.samples = Eigen::Matrix<double, Eigen::Dynamic, 4>::Zero(steps, 4);
  return w;
}

void ControlWaveform::validate() const {
  if (steps() < 1) throw Error("ControlWaveform: steps must be >= 1");
  if (dt <= 0) throw Error("ControlWaveform: dt must be positive");
  if (!samples.allFinite()) throw Error("ControlWaveform: non-finite sample");
}

void StateTransferSet::validate() const {
  if (initial.empty() || initial.size() != target.size())
    throw Error("StateTransferSet: need M >= 1 matched (initial, target) pairs");
  const Eigen::Index d = dims.joint();
  for (const auto* side : {&initial, &target}) {
    for (const auto& v : *side) {
      if (v.size() != d) throw Error("StateTransferSet: vector dimension mismatch");
      if (std::abs(v.norm() - 1.0) > 1e-10)
        throw Error("StateTransferSet: state not normalized (|norm - 1| = " +
                    std::to_string(std::abs(v.norm() - 1.0)) + ")");
    }
  }
}

Matrix step_propagator(const Matrix& h0, const std::array<Matrix, 4>& drives,
                       const Eigen::RowVector4d& sample, double dt) {
  const Matrix h = total_hamiltonian(h0, drives, sample);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error("step_propagator: eigendecomposition failed");
  const Vector phases = step_phases(es.eigenvalues(), dt);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix propagator_derivative(const Matrix& h0, const std::array<Matrix, 4>& drives,
                             const Eigen::RowVector4d& sample, double dt, int direction) {
  if (direction < 0 || direction > 3) throw Error("propagator_derivative: direction in 0..3");
  const Matrix h = total_hamiltonian(h0, drives, sample);
  const Eigen::Index d = h.rows();
  Matrix aug = Matrix::Zero(2 * d, 2 * d);
  aug.topLeftCorner(d, d) = h;
  aug.bottomRightCorner(d, d) = h;
  aug.topRightCorner(d, d) = drives[direction];
  const Matrix e = Matrix(-kI * dt * aug).exp();
  return e.topRightCorner(d, d);
}

PropagationCache propagate(const ControlWaveform& waveform, const StateTransferSet& transfers,
                           const SystemOperators& sys) {
  waveform.validate();
  transfers.validate();
  if (!(transfers.dims == sys.dims)) throw Error("propagate: dimension mismatch");

  const int n = waveform.steps();
  const int m = transfers.size();

  PropagationCache cache;
  cache.dims = sys.dims;
  cache.dt = waveform.dt;
  cache.eigvecs.resize(n);
  cache.eigvals.resize(n);
  cache.forward.assign(m, std::vector<Vector>(n + 1));
  cache.backward.assign(m, std::vector<Vector>(n + 1));

  for (int i = 0; i < m; ++i) cache.forward[i][0] = transfers.initial[i];
  for (int k = 0; k < n; ++k) {
    const Matrix h = total_hamiltonian(sys.h0, sys.drives, waveform.samples.row(k));
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw Error("propagate: eigendecomposition failed");
    cache.eigvecs[k] = es.eigenvectors();
    cache.eigvals[k] = es.eigenvalues();
    const Vector phases = step_phases(cache.eigvals[k], waveform.dt);
    const Matrix& v = cache.eigvecs[k];
    for (int i = 0; i < m; ++i)
      cache.forward[i][k + 1] = v * (phases.asDiagonal() * (v.adjoint() * cache.forward[i][k]));
  }

  for (int i = 0; i < m; ++i) cache.backward[i][n] = transfers.target[i];
  for (int k = n - 1; k >= 0; --k) {
    // backward[k] = U_{k+1}' backward[k+1]; the adjoint conjugates the phases.
    const Matrix& v = cache.eigvecs[k];
    const Vector phases = step_phases(cache.eigvals[k], -waveform.dt);
    for (int i = 0; i < m; ++i)
      cache.backward[i][k] = v * (phases.asDiagonal() * (v.adjoint() * cache.backward[i][k + 1]));
  }
  return cache;
}

Complex transfer_overlap(const PropagationCache& cache) {
  const int n = cache.steps();
  Complex v = 0.0;
  for (int i = 0; i < cache.transfers(); ++i)
    v += cache.backward[i][n].dot(cache.forward[i][n]);  // <target|U|init>
  return v;
}

double transfer_fidelity(const PropagationCache& cache) {
  const int m = cache.transfers();
  return std::norm(transfer_overlap(cache)) / double(m * m);
}

Eigen::Matrix<double, Eigen::Dynamic, 4> fidelity_gradient(const PropagationCache& cache,
                                                           const SystemOperators& sys,
                                                           const ControlWaveform& waveform) {
  const int n = cache.steps();
  const int m = cache.transfers();
  if (n != waveform.steps()) throw Error("fidelity_gradient: cache/waveform step mismatch");

  const Complex v = transfer_overlap(cache);
  Eigen::Matrix<double, Eigen::Dynamic, 4> grad(n, 4);

  for (int k = 0; k < n; ++k) {
    const Matrix& vec = cache.eigvecs[k];
    const Vector phases = step_phases(cache.eigvals[k], waveform.dt);
    const Matrix gamma = expm_divided_differences(cache.eigvals[k], phases, waveform.dt);

    // dv/dc_i at step k is sum_m <chi_k | dU_k/dc_i | phi_{k-1}> with
    // dU = V [(V' H_i V) o Gamma] V' in the eigenbasis of the step
    // Hamiltonian. Accumulating the transfer outer products first makes
    // the per-step cost independent of both the number of transfers and
    // the number of drive directions:
    //   s_i = sum_ab (H_i)_ab Q_ab,
    //   Q = conj(V) [Gamma o sum_m conj(chi~) phi~^T] V^T.
    Matrix outer = Matrix::Zero(vec.rows(), vec.cols());
    for (int i = 0; i < m; ++i) {
      const Vector phi = vec.adjoint() * cache.forward[i][k];
      const Vector chi = vec.adjoint() * cache.backward[i][k + 1];
      outer.noalias() += chi.conjugate() * phi.transpose();
    }
    const Matrix q = vec.conjugate() * gamma.cwiseProduct(outer) * vec.transpose();
    for (int i = 0; i < 4; ++i) {
      const Complex s = (sys.drives[i].array() * q.array()).sum();
      grad(k, i) = 2.0 * (std::conj(v) * s).real() / double(m * m);
    }
  }
  return grad;
}

Eigen::Matrix<double, Eigen::Dynamic, 4> fidelity_gradient_first_order(
    const PropagationCache& cache, const SystemOperators& sys, const ControlWaveform& waveform) {
  const int n = cache.steps();
  const int m = cache.transfers();
  if (n != waveform.steps()) throw Error("fidelity_gradient: cache/waveform step mismatch");

  const Complex v = transfer_overlap(cache);
  Eigen::Matrix<double, Eigen::Dynamic, 4> grad(n, 4);

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < 4; ++i) {
      Complex s = 0.0;
      for (int t = 0; t < m; ++t) {
        // <chi_k| (-i dt H_i) U_k |phi_{k-1}> = -i dt <chi_k| H_i |phi_k>
        s += -kI * waveform.dt *
             cache.backward[t][k + 1].dot(sys.drives[i] * cache.forward[t][k + 1]);
      }
      grad(k, i) = 2.0 * (std::conj(v) * s).real() / double(m * m);
    }
  }
  return grad;
}

}  // namespace catgrape
