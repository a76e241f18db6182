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

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace catgrape {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Thrown on violated preconditions and invalid inputs across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unit conventions: hbar = 1, time in ns, angular frequency in rad/ns.
// External inputs quote linear frequency in MHz and times in us.
inline double mhz_to_rad_ns(double f_mhz) { return 2.0 * M_PI * 1e-3 * f_mhz; }
inline double rad_ns_to_mhz(double w) { return w / (2.0 * M_PI * 1e-3); }
inline double us_to_ns(double t_us) { return 1e3 * t_us; }
inline double ns_to_us(double t_ns) { return 1e-3 * t_ns; }

/// Truncated Hilbert space sizes for the oscillator x transmon system.
/// Joint indexing is oscillator-major: index = i_osc * n_trans + i_trans.
struct HilbertDims {
  int n_osc = 2;
  int n_trans = 2;

  int joint() const { return n_osc * n_trans; }
  void validate() const;
  bool operator==(const HilbertDims&) const = default;
};

/// Static system parameters in internal units (rad/ns for couplings,
/// ns for decoherence times). Carrier frequencies are metadata only;
/// dynamics are computed in the doubly rotating frame at the drive carriers.
struct HamiltonianModel {
  double chi = 0.0;        // dispersive shift
  double kerr = 0.0;       // oscillator anharmonicity K
  double anh = 0.0;        // transmon anharmonicity alpha
  double chi_prime = 0.0;  // second-order dispersive shift
  double t1_trans = 1e12;  // transmon relaxation time (ns)
  double tphi_trans = 1e12;  // transmon dephasing time (ns)
  double t1_osc = 1e12;    // oscillator relaxation time (ns)
  double omega_t = 0.0;    // transmon carrier (metadata)
  double omega_c = 0.0;    // oscillator carrier (metadata)

  void validate() const;

  /// Builds a model from linear-frequency (MHz) and time (us) inputs.
  static HamiltonianModel from_linear_units(double chi_mhz, double kerr_mhz,
                                            double anh_mhz, double chi_prime_mhz,
                                            double t1_trans_us, double tphi_trans_us,
                                            double t1_osc_us, double omega_t_mhz = 0.0,
                                            double omega_c_mhz = 0.0);
};

/// Ladder operator on an n-level mode: A[k, k+1] = sqrt(k+1).
Matrix annihilation(int n);

/// Kronecker product with oscillator-major joint indexing.
Matrix kron(const Matrix& a, const Matrix& b);

/// Embeds a single-mode operator into the joint space.
Matrix oscillator_op(const Matrix& op, const HilbertDims& dims);
Matrix transmon_op(const Matrix& op, const HilbertDims& dims);

/// Rotating-frame static Hamiltonian
///   H0 = chi a'a b'b + (K/2) a'^2 a^2 + (anh/2) b'^2 b^2 + (chi'/2) b'b a'^2 a^2.
/// Diagonal in the joint Fock basis.
Matrix build_static_hamiltonian(const HamiltonianModel& model, const HilbertDims& dims);

/// Hermitian drive quadrature operators, ordered to match waveform columns:
/// X_C = a + a', Y_C = i(a - a'), X_T = b + b', Y_T = i(b - b'), so that
/// H_drive = Re(eC) X_C + Im(eC) Y_C + Re(eT) X_T + Im(eT) Y_T = eC a + eT b + h.c.
std::array<Matrix, 4> build_drive_operators(const HilbertDims& dims);

/// Static + drive operators for one truncation, the bundle consumed by the
/// propagation and open-system code.
struct SystemOperators {
  HilbertDims dims;
  Matrix h0;
  std::array<Matrix, 4> drives;

  static SystemOperators build(const HamiltonianModel& model, const HilbertDims& dims);
};

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
inline double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

}  // namespace catgrape
