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

#include "catgrape/catcode.hpp"

#include <cmath>

namespace catgrape {

namespace {

constexpr Complex kI{0.0, 1.0};

// Unnormalized codeword amplitude at photon number n: alpha^n / sqrt(n!),
// evaluated by recursion to avoid overflow.
void accumulate_cat_amplitudes(Complex alpha, int offset, int n_max, std::vector<Complex>& amps,
                               double& tail_mass) {
  // amps[n] for n in the support {offset, offset+4, ...} below n_max;
  // tail_mass collects |amp|^2 beyond the truncation until convergence.
  Complex amp = std::pow(alpha, offset);
  for (int k = 2; k <= offset; ++k) amp /= std::sqrt(double(k));
  int n = offset;
  double tail = 0.0;
  while (true) {
    if (n < n_max) {
      amps[n] = amp;
    } else {
      tail += std::norm(amp);
      if (std::norm(amp) < 1e-24 * (1.0 + tail)) break;
    }
    // step n -> n + 4
    for (int k = n + 1; k <= n + 4; ++k) amp *= alpha / std::sqrt(double(k));
    n += 4;
    if (n > 100000) break;
  }
  tail_mass = tail;
}

}  // namespace

Vector codeword(Complex alpha, int sign, int n_osc) {
  if (std::norm(alpha) <= 0.0) throw Error("codeword: |alpha|^2 must be positive");
  if (sign != 1 && sign != -1) throw Error("codeword: sign must be +1 or -1");
  const double nbar = std::norm(alpha);
  if (n_osc < nbar + 6.0 * std::sqrt(nbar))
    throw Error("codeword: truncation too small for the Poisson tail of alpha");

  const int offset = (sign == 1) ? 0 : 2;
  std::vector<Complex> amps(n_osc, Complex(0.0));
  double tail_mass = 0.0;
  accumulate_cat_amplitudes(alpha, offset, n_osc, amps, tail_mass);

  Vector v(n_osc);
  for (int n = 0; n < n_osc; ++n) v(n) = amps[n];
  const double total = v.squaredNorm() + tail_mass;
  if (tail_mass / total > 1e-9)
    throw Error("codeword: truncated tail mass exceeds 1e-9; increase n_osc");
  return v / v.norm();
}

Vector fock_state(int n, int trans_level, const HilbertDims& dims) {
  dims.validate();
  if (n < 0 || n >= dims.n_osc) throw Error("fock_state: oscillator index out of range");
  if (trans_level < 0 || trans_level >= dims.n_trans)
    throw Error("fock_state: transmon index out of range");
  Vector v = Vector::Zero(dims.joint());
  v(n * dims.n_trans + trans_level) = 1.0;
  return v;
}

LogicalBasis LogicalBasis::make(Complex alpha, const HilbertDims& dims) {
  dims.validate();
  LogicalBasis b;
  b.alpha = alpha;
  b.dims = dims;

  const Vector plus = codeword(alpha, +1, dims.n_osc);
  const Vector minus = codeword(alpha, -1, dims.n_osc);
  const Matrix ground = Matrix::Identity(dims.n_trans, dims.n_trans).col(0);

  auto embed = [&](const Vector& osc) { return Vector(kron(osc, ground)); };
  b.plus_z = embed(plus);
  b.minus_z = embed(minus);
  b.plus_x = (b.plus_z + b.minus_z) / std::sqrt(2.0);
  b.minus_x = (b.plus_z - b.minus_z) / std::sqrt(2.0);
  b.plus_y = (b.plus_z + kI * b.minus_z) / std::sqrt(2.0);
  b.minus_y = (b.plus_z - kI * b.minus_z) / std::sqrt(2.0);
  return b;
}

Eigen::Matrix2cd LogicalBasis::project_density(const Matrix& joint_rho) const {
  Eigen::Matrix2cd out;
  const Vector* basis[2] = {&plus_z, &minus_z};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = basis[i]->dot(joint_rho * (*basis[j]));
  return out;
}

Matrix LogicalBasis::embed_density(const Eigen::Matrix2cd& logical_rho) const {
  const Vector* basis[2] = {&plus_z, &minus_z};
  Matrix out = Matrix::Zero(dims.joint(), dims.joint());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out += logical_rho(i, j) * (*basis[i]) * basis[j]->adjoint();
  return out;
}

Vector LogicalBasis::embed_state(const Eigen::Vector2cd& amplitudes) const {
  return amplitudes(0) * plus_z + amplitudes(1) * minus_z;
}

namespace {

Eigen::Matrix2cd rotation(double theta, const Eigen::Matrix2cd& axis) {
  return std::cos(theta / 2.0) * Eigen::Matrix2cd::Identity() -
         kI * std::sin(theta / 2.0) * axis;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

}  // namespace

GateSpec GateSpec::named(std::string_view name) {
  const double pi = M_PI;
  if (name == "I") return {"I", Eigen::Matrix2cd::Identity()};
  if (name == "X90") return {"X90", rotation(pi / 2, pauli_x())};
  if (name == "mX90") return {"mX90", rotation(-pi / 2, pauli_x())};
  if (name == "X180") return {"X180", pauli_x()};
  if (name == "Y90") return {"Y90", rotation(pi / 2, pauli_y())};
  if (name == "mY90") return {"mY90", rotation(-pi / 2, pauli_y())};
  if (name == "Y180") return {"Y180", pauli_y()};
  if (name == "H") {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return {"H", h / std::sqrt(2.0)};
  }
  if (name == "T") {
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Identity();
    t(1, 1) = std::exp(kI * (pi / 4.0));
    return {"T", t};
  }
  if (name == "Z180") {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
    z(1, 1) = -1.0;
    return {"Z180", z};
  }
  throw Error("GateSpec: unknown gate name '" + std::string(name) + "'");
}

const std::vector<std::string>& GateSpec::all_names() {
  static const std::vector<std::string> names = {"I",   "X90",  "mX90", "X180", "Y90",
                                                 "mY90", "Y180", "H",    "T"};
  return names;
}

const std::vector<std::string>& GateSpec::rb_names() {
  static const std::vector<std::string> names = {"I",    "X90",  "mX90", "X180",
                                                 "Y90",  "mY90", "Y180", "H"};
  return names;
}

StateTransferSet encode_transfer_set(const LogicalBasis& basis) {
  StateTransferSet set;
  set.dims = basis.dims;
  set.initial = {fock_state(0, 0, basis.dims), fock_state(0, 1, basis.dims)};
  set.target = {basis.plus_z, basis.minus_z};
  return set;
}

StateTransferSet decode_transfer_set(const LogicalBasis& basis) {
  StateTransferSet set = encode_transfer_set(basis);
  std::swap(set.initial, set.target);
  return set;
}

StateTransferSet gate_transfer_set(const LogicalBasis& basis, const GateSpec& gate) {
  StateTransferSet set;
  set.dims = basis.dims;
  set.initial = {basis.plus_z, basis.minus_z};
  set.target = {basis.embed_state(gate.unitary.col(0)), basis.embed_state(gate.unitary.col(1))};
  return set;
}

StateTransferSet fock_preparation_set(int n_target, const HilbertDims& dims) {
  if (n_target < 0 || n_target >= dims.n_osc)
    throw Error("fock_preparation_set: target level outside truncation");
  StateTransferSet set;
  set.dims = dims;
  set.initial = {fock_state(0, 0, dims)};
  set.target = {fock_state(n_target, 0, dims)};
  return set;
}

StateTransferSet parity_map_set(const std::vector<Vector>& probes, const HilbertDims& dims) {
  dims.validate();
  if (dims.n_trans < 2) throw Error("parity_map_set: needs a transmon");
  if (probes.empty()) throw Error("parity_map_set: need at least one probe");

  // P_even (x) I + P_odd (x) X on the transmon g/e pair.
  Matrix flip = Matrix::Zero(dims.joint(), dims.joint());
  for (int n = 0; n < dims.n_osc; ++n) {
    const bool odd = n % 2 == 1;
    for (int t = 0; t < dims.n_trans; ++t) {
      const int row = n * dims.n_trans + t;
      if (!odd || t > 1) {
        flip(row, row) = 1.0;
      } else {
        const int partner = n * dims.n_trans + (1 - t);
        flip(row, partner) = 1.0;
      }
    }
  }

  StateTransferSet set;
  set.dims = dims;
  for (const auto& probe : probes) {
    set.initial.push_back(probe / probe.norm());
    set.target.push_back(flip * set.initial.back());
  }
  return set;
}

std::vector<Vector> fock_parity_probes(int n_probe, const HilbertDims& dims) {
  if (n_probe < 1 || n_probe > dims.n_osc) throw Error("fock_parity_probes: bad probe count");
  std::vector<Vector> probes;
  probes.reserve(n_probe);
  for (int n = 0; n < n_probe; ++n) probes.push_back(fock_state(n, 0, dims));
  return probes;
}

StateTransferSet kerr_correction_set(double delta_t, const HamiltonianModel& model,
                                     const LogicalBasis& basis) {
  if (delta_t < 0) throw Error("kerr_correction_set: delta_t must be nonnegative");
  const HilbertDims& dims = basis.dims;

  // Diagonal phases exp(+i delta_t (K/2) n(n-1)) on the oscillator.
  Vector phases(dims.joint());
  for (int n = 0; n < dims.n_osc; ++n) {
    const Complex phase = std::exp(kI * delta_t * 0.5 * model.kerr * double(n) * double(n - 1));
    for (int t = 0; t < dims.n_trans; ++t) phases(n * dims.n_trans + t) = phase;
  }

  StateTransferSet set;
  set.dims = dims;
  set.initial = {basis.plus_z, basis.minus_z, basis.plus_x, basis.plus_y};
  for (const auto& v : set.initial) set.target.push_back(phases.asDiagonal() * v);
  return set;
}

}  // namespace catgrape
