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

// Test-only reference implementations, independent of the library code paths
// they check.

#pragma once

#include <functional>
#include <random>

#include "catgrape/dynamics.hpp"
#include "catgrape/grape.hpp"

namespace catgrape::oracles {

inline Vector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

inline ControlWaveform random_waveform(int steps, double dt, double amplitude,
                                       std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, amplitude);
  ControlWaveform w = ControlWaveform::zeros(steps, dt);
  for (int k = 0; k < steps; ++k)
    for (int c = 0; c < 4; ++c) w.samples(k, c) = normal(rng);
  return w;
}

inline StateTransferSet random_transfers(const HilbertDims& dims, int m, std::mt19937_64& rng) {
  StateTransferSet set;
  set.dims = dims;
  for (int i = 0; i < m; ++i) {
    set.initial.push_back(random_state(dims.joint(), rng));
    set.target.push_back(random_state(dims.joint(), rng));
  }
  return set;
}

// Central finite differences of the transfer fidelity with respect to every
// control sample; the brute-force check for the analytic gradient.
inline Eigen::Matrix<double, Eigen::Dynamic, 4> finite_difference_gradient(
    const ControlWaveform& waveform, const StateTransferSet& transfers,
    const SystemOperators& sys, double h = 1e-6) {
  auto fidelity_at = [&](const ControlWaveform& w) {
    return transfer_fidelity(propagate(w, transfers, sys));
  };
  Eigen::Matrix<double, Eigen::Dynamic, 4> grad(waveform.steps(), 4);
  for (int k = 0; k < waveform.steps(); ++k) {
    for (int c = 0; c < 4; ++c) {
      ControlWaveform plus = waveform, minus = waveform;
      plus.samples(k, c) += h;
      minus.samples(k, c) -= h;
      grad(k, c) = (fidelity_at(plus) - fidelity_at(minus)) / (2.0 * h);
    }
  }
  return grad;
}

// Full propagator by explicit matrix-chain multiplication.
inline Matrix propagator_chain(const ControlWaveform& waveform, const SystemOperators& sys) {
  Matrix u = Matrix::Identity(sys.dims.joint(), sys.dims.joint());
  for (int k = 0; k < waveform.steps(); ++k)
    u = step_propagator(sys.h0, sys.drives, waveform.samples.row(k), waveform.dt) * u;
  return u;
}

// Central finite differences of a scalar function of a real vector.
inline Eigen::VectorXd finite_difference(const std::function<double(const Eigen::VectorXd&)>& f,
                                         const Eigen::VectorXd& x, double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd plus = x, minus = x;
    plus(i) += h;
    minus(i) -= h;
    g(i) = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

// Relative max-norm mismatch of two gradients, scaled by the larger one.
inline double gradient_mismatch(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Completes a partial isometry (two orthonormal input/output pairs) to a full
// unitary by Gram-Schmidt over the orthogonal complement.
inline Matrix complete_to_unitary(const std::vector<Vector>& from, const std::vector<Vector>& to) {
  const int d = static_cast<int>(from.front().size());
  const int m = static_cast<int>(from.size());
  Matrix a(d, d), b(d, d);
  for (int i = 0; i < m; ++i) {
    a.col(i) = from[i];
    b.col(i) = to[i];
  }
  // Extend both frames with the same Gram-Schmidt procedure over the
  // standard basis.
  auto extend = [d, m](Matrix& frame) {
    int filled = m;
    for (int cand = 0; cand < d && filled < d; ++cand) {
      Vector v = Vector::Zero(d);
      v(cand) = 1.0;
      for (int j = 0; j < filled; ++j) v -= frame.col(j).dot(v) * frame.col(j);
      if (v.norm() > 1e-8) frame.col(filled++) = v / v.norm();
    }
    if (filled != d) throw std::runtime_error("complete_to_unitary: frame completion failed");
  };
  extend(a);
  extend(b);
  return b * a.adjoint();
}

}  // namespace catgrape::oracles
