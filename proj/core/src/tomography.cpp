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

#include "catgrape/tomography.hpp"

#include <cmath>
#include <string>

namespace catgrape {

namespace {

constexpr Complex kI{0.0, 1.0};

const Eigen::Matrix2cd& pauli(int a) {
  static const std::array<Eigen::Matrix2cd, 4> paulis = [] {
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] = Eigen::Matrix2cd::Identity();
    p[1] << 0, 1, 1, 0;
    p[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return paulis[a];
}

}  // namespace

Matrix displacement(Complex beta, int n_osc) {
  if (n_osc < 2) throw Error("displacement: n_osc must be >= 2");
  const Matrix a = annihilation(n_osc);
  // exp(beta a' - beta* a) = exp(i M) with Hermitian M = -i(beta a' - beta* a).
  const Matrix m = -kI * (beta * a.adjoint() - std::conj(beta) * a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector phases = (kI * es.eigenvalues().array().cast<Complex>()).exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix parity_operator(int n_osc) {
  Matrix p = Matrix::Zero(n_osc, n_osc);
  for (int n = 0; n < n_osc; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

namespace {

// <m|D(gamma)|n> for m >= n is sqrt(n!/m!) gamma^(m-n) e^(-|g|^2/2)
// L_n^(m-n)(|g|^2); the m < n entries follow from D' = D(-gamma).
Matrix displacement_closed_form(Complex gamma, int dim) {
  const double x = std::norm(gamma);
  Matrix d(dim, dim);
  std::vector<double> log_fact(dim, 0.0);
  for (int i = 1; i < dim; ++i) log_fact[i] = log_fact[i - 1] + std::log(double(i));

  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n <= m; ++n) {
      const int k = m - n;
      // L_n^(k)(x) by the three-term recurrence.
      double l0 = 1.0, l1 = 1.0 + k - x, l = (n == 0) ? l0 : l1;
      for (int i = 2; i <= n; ++i) {
        l = ((2.0 * i - 1.0 + k - x) * l1 - (i - 1.0 + k) * l0) / i;
        l0 = l1;
        l1 = l;
      }
      const double log_pref = 0.5 * (log_fact[n] - log_fact[m]) - 0.5 * x;
      const Complex phase_pow = std::pow(gamma, k);
      const Complex value = std::exp(log_pref) * phase_pow * l;
      d(m, n) = value;
      if (m != n) {
        // <n|D|m> = conj(<m|D(-gamma)|n>) with gamma -> -gamma sign in the power.
        const Complex upper = std::exp(log_pref) * std::pow(-std::conj(gamma), k) * l;
        d(n, m) = upper;
      }
    }
  }
  return d;
}

}  // namespace

Matrix displaced_parity(Complex beta, int n_osc) {
  const Matrix d2 = displacement_closed_form(2.0 * beta, n_osc);
  Matrix m = d2;
  for (int n = 1; n < n_osc; n += 2) m.col(n) *= -1.0;
  return m;
}

Matrix reduce_to_oscillator(const Matrix& joint_rho, const HilbertDims& dims) {
  if (joint_rho.rows() != dims.joint() || joint_rho.cols() != dims.joint())
    throw Error("reduce_to_oscillator: dimension mismatch");
  Matrix out = Matrix::Zero(dims.n_osc, dims.n_osc);
  for (int i = 0; i < dims.n_osc; ++i)
    for (int j = 0; j < dims.n_osc; ++j)
      for (int t = 0; t < dims.n_trans; ++t)
        out(i, j) += joint_rho(i * dims.n_trans + t, j * dims.n_trans + t);
  return out;
}

std::vector<Complex> square_grid(double extent, int points_per_side) {
  if (points_per_side < 2) throw Error("square_grid: need at least 2 points per side");
  std::vector<Complex> betas;
  betas.reserve(std::size_t(points_per_side) * points_per_side);
  const double step = 2.0 * extent / (points_per_side - 1);
  for (int iy = 0; iy < points_per_side; ++iy)
    for (int ix = 0; ix < points_per_side; ++ix)
      betas.emplace_back(-extent + ix * step, -extent + iy * step);
  return betas;
}

WignerGrid wigner(const Matrix& rho_osc, const std::vector<Complex>& betas) {
  const int n_osc = static_cast<int>(rho_osc.rows());
  if (rho_osc.rows() != rho_osc.cols()) throw Error("wigner: density matrix not square");

  const double nbar = [&] {
    double v = 0.0;
    for (int n = 0; n < n_osc; ++n) v += n * rho_osc(n, n).real();
    return std::max(0.0, v);
  }();

  WignerGrid grid;
  grid.points = betas;
  grid.values.resize(static_cast<Eigen::Index>(betas.size()));
  grid.truncation_warning.resize(betas.size());

  for (std::size_t i = 0; i < betas.size(); ++i) {
    const Complex beta = betas[i];
    // W = (2/pi) Tr[D(b)' rho D(b) P] = (2/pi) Tr[rho D(2b) P].
    const Matrix m = displaced_parity(beta, n_osc);
    const Complex val = (rho_osc.transpose().array() * m.array()).sum();
    grid.values(static_cast<Eigen::Index>(i)) = (2.0 / M_PI) * val.real();
    // Conservative flag: values are exact for the truncated state, but far
    // points of a state crowding its cutoff no longer represent the
    // physical (untruncated) state.
    const double n_disp = std::pow(std::abs(beta) + std::sqrt(nbar), 2.0);
    grid.truncation_warning[i] = n_disp + 6.0 * std::sqrt(n_disp) + 3.0 > n_osc;
  }
  return grid;
}

Matrix reconstruct_from_wigner(const WignerGrid& grid, int n_max, double ridge) {
  const int n_points = static_cast<int>(grid.points.size());
  const int n_params = n_max * n_max;  // Hermitian parametrization
  if (n_points < n_params)
    throw Error("reconstruct_from_wigner: need at least " + std::to_string(n_params) +
                " grid points for n_max = " + std::to_string(n_max) + ", got " +
                std::to_string(n_points));

  // Real parametrization: diagonal entries, then (Re, Im) of the upper
  // triangle. W is linear in rho: W_i = (2/pi) Tr[M_i rho] with Hermitian
  // M_i = D_i P D_i'.
  Eigen::MatrixXd design(n_points, n_params);
  for (int i = 0; i < n_points; ++i) {
    const Matrix m = displaced_parity(grid.points[i], n_max);
    int col = 0;
    for (int n = 0; n < n_max; ++n) design(i, col++) = (2.0 / M_PI) * m(n, n).real();
    for (int r = 0; r < n_max; ++r) {
      for (int c = r + 1; c < n_max; ++c) {
        design(i, col++) = (2.0 / M_PI) * 2.0 * m(c, r).real();
        design(i, col++) = (2.0 / M_PI) * 2.0 * (-m(c, r).imag());
      }
    }
  }

  const Eigen::MatrixXd gram =
      design.transpose() * design + ridge * Eigen::MatrixXd::Identity(n_params, n_params);
  const Eigen::VectorXd rhs = design.transpose() * grid.values;
  const Eigen::VectorXd params = Eigen::LLT<Eigen::MatrixXd>(gram).solve(rhs);

  Matrix rho = Matrix::Zero(n_max, n_max);
  int col = 0;
  for (int n = 0; n < n_max; ++n) rho(n, n) = params(col++);
  for (int r = 0; r < n_max; ++r) {
    for (int c = r + 1; c < n_max; ++c) {
      const double re = params(col++);
      const double im = params(col++);
      rho(r, c) = Complex(re, im);
      rho(c, r) = Complex(re, -im);
    }
  }

  // Project onto the density-matrix set: eigenvalues onto the probability
  // simplex (Frobenius-nearest unit-trace PSD matrix).
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXd sorted = lam;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  int active = 0;
  for (int j = 0; j < sorted.size(); ++j) {
    cumulative += sorted(j);
    const double candidate = (cumulative - 1.0) / (j + 1);
    if (sorted(j) - candidate > 0) {
      theta = candidate;
      active = j + 1;
    }
  }
  (void)active;
  for (int j = 0; j < lam.size(); ++j) lam(j) = std::max(0.0, lam(j) - theta);
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

bool PauliTransferMatrix::trace_preserving(double tol) const {
  return std::abs(r(0, 0) - 1.0) <= tol && std::abs(r(0, 1)) <= tol && std::abs(r(0, 2)) <= tol &&
         std::abs(r(0, 3)) <= tol;
}

PauliTransferMatrix ptm_of_unitary(const Eigen::Matrix2cd& u) {
  return ptm_of_channel([&u](const Eigen::Matrix2cd& rho) {
    return Eigen::Matrix2cd(u * rho * u.adjoint());
  });
}

PauliTransferMatrix ptm_of_channel(
    const std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>& channel) {
  PauliTransferMatrix out;
  for (int b = 0; b < 4; ++b) {
    // Paulis are differences of density-like matrices; channels extend by
    // linearity. Evaluate on the Hermitian inputs directly.
    const Eigen::Matrix2cd image = channel(pauli(b));
    for (int a = 0; a < 4; ++a) out.r(a, b) = 0.5 * (pauli(a) * image).trace().real();
  }
  return out;
}

Eigen::Matrix2cd apply_ptm(const PauliTransferMatrix& ptm, const Eigen::Matrix2cd& rho) {
  Eigen::Vector4d in;
  for (int a = 0; a < 4; ++a) in(a) = (pauli(a) * rho).trace().real();
  const Eigen::Vector4d out = ptm.r * in;
  Eigen::Matrix2cd result = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 4; ++a) result += 0.5 * out(a) * pauli(a);
  return result;
}

PauliTransferMatrix process_tomography(
    const std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>& channel) {
  // 6 cardinal pure-state inputs; the three (+P, -P) pairs overdetermine
  // E(I), which is averaged for stability.
  std::array<Eigen::Matrix2cd, 6> inputs;
  for (int axis = 0; axis < 3; ++axis) {
    inputs[2 * axis] = 0.5 * (pauli(0) + pauli(axis + 1));
    inputs[2 * axis + 1] = 0.5 * (pauli(0) - pauli(axis + 1));
  }
  std::array<Eigen::Matrix2cd, 6> outputs;
  for (int i = 0; i < 6; ++i) {
    outputs[i] = channel(inputs[i]);
    if (!outputs[i].allFinite()) throw Error("process_tomography: non-physical channel output");
    if ((outputs[i] - outputs[i].adjoint()).cwiseAbs().maxCoeff() > 1e-6)
      throw Error("process_tomography: channel output is not Hermitian");
  }

  const Eigen::Matrix2cd e_identity = ((outputs[0] + outputs[1]) + (outputs[2] + outputs[3]) +
                                       (outputs[4] + outputs[5])) /
                                      3.0;
  std::array<Eigen::Matrix2cd, 4> images;
  images[0] = e_identity;
  images[1] = outputs[0] - outputs[1];  // E(X) from the +-X pair
  images[2] = outputs[2] - outputs[3];
  images[3] = outputs[4] - outputs[5];

  PauliTransferMatrix out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.r(a, b) = 0.5 * (pauli(a) * images[b]).trace().real();
  return out;
}

double average_fidelity(const PauliTransferMatrix& measured, const PauliTransferMatrix& ideal) {
  if (!measured.trace_preserving(1e-6) || !ideal.trace_preserving(1e-6))
    throw Error("average_fidelity: inputs must be trace-preserving PTMs");
  const double overlap = (ideal.r.transpose() * measured.r).trace();
  return (overlap / 2.0 + 1.0) / 3.0;
}

double delta_fidelity(const PauliTransferMatrix& full_measured,
                      const PauliTransferMatrix& full_ideal,
                      const PauliTransferMatrix& encdec_measured) {
  return average_fidelity(encdec_measured, PauliTransferMatrix::identity()) -
         average_fidelity(full_measured, full_ideal);
}

}  // namespace catgrape
