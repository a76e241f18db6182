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

#include <doctest.h>

#include "catgrape/operators.hpp"

using namespace catgrape;

namespace {

HamiltonianModel device_model() {
  return HamiltonianModel::from_linear_units(-2.194, -0.0037, -236.0, -0.019, 170.0, 43.0,
                                             2700.0, 5664.0, 4452.6);
}

}  // namespace

TEST_CASE("annihilation ladder matrix") {
  const Matrix a2 = annihilation(2);
  CHECK(a2(0, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(a2(0, 0)) == 0.0);
  CHECK(std::abs(a2(1, 0)) == 0.0);
  CHECK(std::abs(a2(1, 1)) == 0.0);

  CHECK(annihilation(3)(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

  // a|3> = sqrt(3)|2>
  Vector three = Vector::Zero(4);
  three(3) = 1.0;
  const Vector lowered = annihilation(4) * three;
  CHECK(std::abs(lowered(2) - std::sqrt(3.0)) < 1e-14);
  CHECK(lowered.head(2).norm() == 0.0);

  CHECK_THROWS_AS(annihilation(1), Error);
}

TEST_CASE("static Hamiltonian diagonal values") {
  HilbertDims dims{2, 2};
  HamiltonianModel chi_only;
  chi_only.chi = -2.0 * M_PI * 2.194e-3;
  const Matrix h = build_static_hamiltonian(chi_only, dims);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(h(i, j)) == 0.0);
  CHECK(std::abs(h(0, 0)) == 0.0);
  CHECK(std::abs(h(1, 1)) == 0.0);
  CHECK(std::abs(h(2, 2)) == 0.0);  // |1, g>
  CHECK(h(3, 3).real() == doctest::Approx(-2.0 * M_PI * 2.194e-3));  // |1, e>

  HamiltonianModel zero;
  CHECK(max_abs(build_static_hamiltonian(zero, {5, 2})) == 0.0);

  HamiltonianModel kerr_only;
  kerr_only.kerr = -2.0 * M_PI * 3.7e-6;
  const Matrix hk = build_static_hamiltonian(kerr_only, {8, 2});
  const int idx = 6 * 2 + 0;  // |n=6, g>
  CHECK(hk(idx, idx).real() == doctest::Approx(0.5 * kerr_only.kerr * 6.0 * 5.0));
}

TEST_CASE("static Hamiltonian eigenvalue formula with transmon excited") {
  const auto model = device_model();
  const HilbertDims dims{9, 2};
  const Matrix h = build_static_hamiltonian(model, dims);
  for (int n = 0; n < 9; ++n) {
    const int idx = n * 2 + 1;
    const double expected =
        model.chi * n + 0.5 * model.kerr * n * (n - 1) + 0.5 * model.chi_prime * n * (n - 1);
    CHECK(h(idx, idx).real() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("drive operators") {
  const auto drives = build_drive_operators({3, 2});
  for (const auto& d : drives) CHECK(hermiticity_defect(d) < 1e-12);

  // Real oscillator drive creates |1> from vacuum: dims (3, 1).
  const auto osc_only = build_drive_operators({3, 1});
  Vector vac = Vector::Zero(3);
  vac(0) = 1.0;
  const double eps = 0.37;
  const Vector driven = eps * osc_only[0] * vac;
  CHECK(std::abs(driven(1) - eps) < 1e-14);

  // Re(e)(a + a') + Im(e) i(a - a') == e a + e* a' checked entrywise.
  const auto d4 = build_drive_operators({4, 1});
  const Complex e{1.0, 2.0};
  const Matrix a = annihilation(4);
  const Matrix direct = e * a + std::conj(e) * a.adjoint();
  const Matrix recombined = e.real() * d4[0] + e.imag() * d4[1];
  CHECK(max_abs(direct - recombined) < 1e-14);
}

TEST_CASE("static Hamiltonian commutes with both number operators") {
  const auto model = device_model();
  const HilbertDims dims{6, 3};
  const Matrix h = build_static_hamiltonian(model, dims);
  CHECK(hermiticity_defect(h) < 1e-12);

  const Matrix n_osc =
      oscillator_op(annihilation(6).adjoint() * annihilation(6), dims);
  const Matrix n_trans = transmon_op(annihilation(3).adjoint() * annihilation(3), dims);
  CHECK(max_abs(h * n_osc - n_osc * h) < 1e-12);
  CHECK(max_abs(h * n_trans - n_trans * h) < 1e-12);
}

TEST_CASE("embedding into a larger truncation preserves the block") {
  const auto model = device_model();
  const Matrix small = build_static_hamiltonian(model, {6, 2});
  const Matrix large = build_static_hamiltonian(model, {9, 2});
  CHECK(max_abs(large.topLeftCorner(12, 12) - small) == 0.0);
}

TEST_CASE("unit conversions") {
  CHECK(mhz_to_rad_ns(-2.194) == doctest::Approx(-2.0 * M_PI * 2.194e-3));
  CHECK(us_to_ns(170.0) == doctest::Approx(170000.0));
  CHECK(rad_ns_to_mhz(mhz_to_rad_ns(17.5)) == doctest::Approx(17.5));

  const auto model = device_model();
  CHECK(model.chi == doctest::Approx(-0.013785839897413286));
  CHECK(model.t1_osc == doctest::Approx(2.7e6));
}

TEST_CASE("dimension validation") {
  CHECK_THROWS_AS((HilbertDims{0, 2}.validate()), Error);
  CHECK_THROWS_AS((HilbertDims{1, 1}.validate()), Error);
  CHECK_NOTHROW((HilbertDims{1, 2}.validate()));
  HamiltonianModel bad;
  bad.t1_trans = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}
