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

#include "catgrape/catcode.hpp"
#include "catgrape/tomography.hpp"
#include "oracles.hpp"

using namespace catgrape;

namespace {

// Brute-force mean photon number of the + codeword from the series
// amplitudes alpha^(4n)/sqrt((4n)!), summed far past the truncation.
double plus_codeword_mean_photon(double alpha) {
  long double norm = 0.0L, mean = 0.0L;
  long double log_fact = 0.0L;
  int n = 0;
  while (n <= 400) {
    if (n % 4 == 0) {
      const long double log_amp2 = 2.0L * n * std::log((long double)alpha) - log_fact;
      const long double w = std::exp(log_amp2);
      norm += w;
      mean += n * w;
    }
    ++n;
    log_fact += std::log((long double)n);
  }
  return static_cast<double>(mean / norm);
}

}  // namespace

TEST_CASE("codeword structure for alpha in {1, sqrt(3), 2}") {
  for (double alpha : {1.0, std::sqrt(3.0), 2.0}) {
    CAPTURE(alpha);
    const int n_osc = 24;
    const Vector plus = codeword(alpha, +1, n_osc);
    const Vector minus = codeword(alpha, -1, n_osc);

    CHECK(std::abs(plus.norm() - 1.0) < 1e-12);
    CHECK(std::abs(minus.norm() - 1.0) < 1e-12);
    CHECK(std::abs(plus.dot(minus)) < 1e-12);

    // Support strictly on n = 0 mod 4 and n = 2 mod 4.
    double off_plus = 0.0, off_minus = 0.0;
    for (int n = 0; n < n_osc; ++n) {
      if (n % 4 != 0) off_plus += std::norm(plus(n));
      if (n % 4 != 2) off_minus += std::norm(minus(n));
    }
    CHECK(off_plus < 1e-12);
    CHECK(off_minus < 1e-12);

    // Both have even parity.
    const Matrix par = parity_operator(n_osc);
    CHECK(std::abs((plus.adjoint() * par * plus)(0, 0).real() - 1.0) < 1e-12);
    CHECK(std::abs((minus.adjoint() * par * minus)(0, 0).real() - 1.0) < 1e-12);
  }
}

TEST_CASE("codeword mean photon number against the series oracle") {
  const double alpha = std::sqrt(3.0);
  const Vector plus = codeword(alpha, +1, 26);
  double mean = 0.0;
  for (int n = 0; n < 26; ++n) mean += n * std::norm(plus(n));
  CHECK(mean == doctest::Approx(plus_codeword_mean_photon(alpha)).epsilon(1e-9));
}

TEST_CASE("codeword truncation guard") {
  CHECK_THROWS_AS(codeword(std::sqrt(3.0), +1, 8), Error);
  CHECK_THROWS_AS(codeword(2.0, -1, 14), Error);  // tail mass above 1e-9
  CHECK_THROWS_AS(codeword(0.0, +1, 10), Error);
  CHECK_NOTHROW(codeword(std::sqrt(3.0), -1, 20));
}

TEST_CASE("encode transfer set") {
  const HilbertDims dims{20, 2};
  const auto basis = LogicalBasis::make(std::sqrt(3.0), dims);
  const auto set = encode_transfer_set(basis);
  CHECK(set.size() == 2);
  set.validate();  // normalization of all four states

  // The ideal encode unitary (any completion of the 2D map) achieves F = 1.
  const Matrix u = oracles::complete_to_unitary(set.initial, set.target);
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(dims.joint(), dims.joint())) < 1e-10);
  Complex v = 0.0;
  for (int i = 0; i < 2; ++i) v += set.target[i].dot(u * set.initial[i]);
  CHECK(std::norm(v) / 4.0 == doctest::Approx(1.0).epsilon(1e-10));

  const auto decode = decode_transfer_set(basis);
  CHECK((decode.initial[0] - set.target[0]).norm() == 0.0);
  CHECK((decode.target[1] - set.initial[1]).norm() == 0.0);
}

TEST_CASE("gate transfer sets") {
  const HilbertDims dims{20, 2};
  const auto basis = LogicalBasis::make(std::sqrt(3.0), dims);

  SUBCASE("identity gate targets equal inputs") {
    const auto set = gate_transfer_set(basis, GateSpec::named("I"));
    CHECK((set.target[0] - set.initial[0]).norm() < 1e-14);
    CHECK((set.target[1] - set.initial[1]).norm() < 1e-14);
  }

  SUBCASE("X180 swaps the codewords") {
    const auto set = gate_transfer_set(basis, GateSpec::named("X180"));
    CHECK((set.target[0] - basis.minus_z).norm() < 1e-14);
    CHECK((set.target[1] - basis.plus_z).norm() < 1e-14);
  }

  SUBCASE("T puts a pi/4 phase on the -Z target") {
    const auto set = gate_transfer_set(basis, GateSpec::named("T"));
    CHECK((set.target[0] - basis.plus_z).norm() < 1e-14);
    const Complex phase = std::exp(Complex(0, M_PI / 4.0));
    CHECK((set.target[1] - phase * basis.minus_z).norm() < 1e-14);
  }

  SUBCASE("gate composition is a homomorphism on the targets") {
    const auto g1 = GateSpec::named("X90");
    const auto g2 = GateSpec::named("H");
    GateSpec composed{"H*X90", g2.unitary * g1.unitary};
    const auto direct = gate_transfer_set(basis, composed);

    // Apply g1's matrix, then g2's, to the logical amplitudes.
    const auto step = gate_transfer_set(basis, g1);
    Eigen::Matrix2cd after1;
    after1.col(0) = g1.unitary.col(0);
    after1.col(1) = g1.unitary.col(1);
    const Eigen::Matrix2cd total = g2.unitary * after1;
    for (int col = 0; col < 2; ++col) {
      const Vector expected = basis.embed_state(total.col(col));
      CHECK((direct.target[col] - expected).norm() < 1e-12);
    }
  }
}

TEST_CASE("gate algebra") {
  const auto x180 = GateSpec::named("X180").unitary;
  CHECK((x180 * x180 - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const auto h = GateSpec::named("H").unitary;
  CHECK((h * h - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const auto t = GateSpec::named("T").unitary;
  const auto z180 = GateSpec::named("Z180").unitary;
  CHECK((t * t * t * t - z180).cwiseAbs().maxCoeff() < 1e-15);

  for (const auto& name : GateSpec::all_names()) {
    const auto u = GateSpec::named(name).unitary;
    CHECK((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fock preparation set") {
  const HilbertDims dims{10, 2};
  const auto id_set = fock_preparation_set(0, dims);
  CHECK((id_set.initial[0] - id_set.target[0]).norm() == 0.0);

  const auto set = fock_preparation_set(6, dims);
  CHECK(set.size() == 1);
  CHECK(std::abs(set.target[0](6 * 2 + 0) - 1.0) == 0.0);

  CHECK_THROWS_AS(fock_preparation_set(10, dims), Error);
}

TEST_CASE("parity map set") {
  const HilbertDims dims{8, 2};

  SUBCASE("fock probes map even to identity, odd to transmon flip") {
    const auto set = parity_map_set(fock_parity_probes(4, dims), dims);
    CHECK((set.target[0] - fock_state(0, 0, dims)).norm() == 0.0);
    CHECK((set.target[1] - fock_state(1, 1, dims)).norm() == 0.0);
    CHECK((set.target[2] - fock_state(2, 0, dims)).norm() == 0.0);
    CHECK((set.target[3] - fock_state(3, 1, dims)).norm() == 0.0);
  }

  SUBCASE("coherent probe splits by photon parity") {
    // Coherent state in the oscillator, transmon ground.
    const Matrix d = displacement(Complex(0.9, 0.2), dims.n_osc);
    Vector osc_vac = Vector::Zero(dims.n_osc);
    osc_vac(0) = 1.0;
    const Vector coherent = d * osc_vac;
    Vector probe = Vector::Zero(dims.joint());
    for (int n = 0; n < dims.n_osc; ++n) probe(n * dims.n_trans) = coherent(n);

    const auto set = parity_map_set({probe}, dims);
    // Oracle: split the Fock series by parity by hand.
    Vector expected = Vector::Zero(dims.joint());
    for (int n = 0; n < dims.n_osc; ++n)
      expected(n * dims.n_trans + (n % 2)) = coherent(n);
    CHECK((set.target[0] - expected).norm() < 1e-12);
  }
}

TEST_CASE("kerr correction set") {
  const HilbertDims dims{20, 2};
  HamiltonianModel model;
  model.kerr = -2.0 * M_PI * 3.7e-6;
  const auto basis = LogicalBasis::make(std::sqrt(3.0), dims);

  SUBCASE("zero delay gives identity targets") {
    const auto set = kerr_correction_set(0.0, model, basis);
    for (int i = 0; i < set.size(); ++i)
      CHECK((set.target[i] - set.initial[i]).norm() < 1e-14);
  }

  SUBCASE("fock phases are exp(+i dt K/2 n(n-1))") {
    const double delta_t = us_to_ns(25.0);
    const auto set = kerr_correction_set(delta_t, model, basis);
    // Check on the +Z codeword component by component.
    for (int n = 0; n < dims.n_osc; ++n) {
      const Complex expected =
          std::exp(Complex(0, delta_t * 0.5 * model.kerr * n * (n - 1)));
      const Complex in = set.initial[0](n * dims.n_trans);
      if (std::abs(in) > 1e-12)
        CHECK(std::abs(set.target[0](n * dims.n_trans) / in - expected) < 1e-12);
    }
  }

  SUBCASE("revival time is the identity") {
    const double revival = 2.0 * M_PI / std::abs(model.kerr);
    const auto set = kerr_correction_set(revival, model, basis);
    for (int i = 0; i < set.size(); ++i)
      CHECK((set.target[i] - set.initial[i]).norm() < 1e-9);
  }
}

TEST_CASE("logical basis projections") {
  const HilbertDims dims{20, 2};
  const auto basis = LogicalBasis::make(std::sqrt(3.0), dims);

  const Eigen::Matrix2cd rho_l = (Eigen::Matrix2cd() << 0.7, Complex(0.1, -0.2),
                                  Complex(0.1, 0.2), 0.3)
                                     .finished();
  const Matrix joint = basis.embed_density(rho_l);
  const Eigen::Matrix2cd back = basis.project_density(joint);
  CHECK((back - rho_l).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(std::abs(basis.plus_x.dot(basis.minus_x)) < 1e-12);
  CHECK(std::abs(basis.plus_y.norm() - 1.0) < 1e-12);
}
