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

#include "catgrape/config.hpp"

using namespace catgrape;

namespace {

const char* kDeviceConfig = R"(# measured device parameters
[model]
chi_mhz = -2.194
kerr_mhz = -0.0037
chi_prime_mhz = -0.019
anh_mhz = -236
t1_trans_us = 170
tphi_trans_us = 43
t1_osc_us = 2700
omega_t_mhz = 5664.0
omega_c_mhz = 4452.6

[target]
kind = fock
fock_n = 6

[pulse]
steps = 250
dt_ns = 2

[truncation]
n_osc = 14
pads = 0,2
)";

}  // namespace

TEST_CASE("device parameters parse and convert") {
  const auto c = parse_config(kDeviceConfig);
  CHECK(c.model.chi == doctest::Approx(mhz_to_rad_ns(-2.194)));
  CHECK(c.model.kerr == doctest::Approx(mhz_to_rad_ns(-0.0037)));
  CHECK(c.model.chi_prime == doctest::Approx(mhz_to_rad_ns(-0.019)));
  CHECK(c.model.anh == doctest::Approx(mhz_to_rad_ns(-236.0)));
  CHECK(c.model.t1_trans == doctest::Approx(170000.0));
  CHECK(c.model.tphi_trans == doctest::Approx(43000.0));
  CHECK(c.model.t1_osc == doctest::Approx(2.7e6));
  CHECK(c.target.kind == TargetSpec::Kind::Fock);
  CHECK(c.target.fock_n == 6);
  CHECK(c.steps == 250);
  CHECK(c.dt == 2.0);
  CHECK(c.base_dims.n_osc == 14);
  CHECK(c.truncation_pads == std::vector<int>{0, 2});
  // Defaults fill the rest.
  CHECK(c.penalties.lambda_amplitude == 1e4);
  CHECK(c.band.omega_max_c == doctest::Approx(mhz_to_rad_ns(20.0)));
}

TEST_CASE("config round-trip is a fixed point") {
  const auto first = parse_config(kDeviceConfig);
  const std::string text = serialize_config(first);
  const auto second = parse_config(text);
  CHECK(serialize_config(second) == text);
  CHECK(second.model.chi == first.model.chi);
  CHECK(second.optimizer.seed == first.optimizer.seed);
  CHECK(second.target.fock_n == first.target.fock_n);
}

TEST_CASE("gate duration matches the published pulse length") {
  std::string text(kDeviceConfig);
  text.replace(text.find("kind = fock"), 11, "kind = gate");
  text.replace(text.find("fock_n = 6"), 10, "gate = X180");
  text.replace(text.find("steps = 250"), 11, "steps = 550");
  text.replace(text.find("n_osc = 14"), 10, "n_osc = 20");
  const auto c = parse_config(text);
  CHECK(c.steps * c.dt == doctest::Approx(1100.0));
}

TEST_CASE("parse errors carry line numbers and names") {
  SUBCASE("unknown key") {
    std::string text(kDeviceConfig);
    text += "\n[model]\n";  // duplicate section is fine, but:
    CHECK_THROWS_WITH_AS(parse_config(text + "bogus_key = 3\n"),
                         doctest::Contains("unknown key 'bogus_key'"), ConfigError);
  }

  SUBCASE("unknown section") {
    CHECK_THROWS_WITH_AS(parse_config(std::string(kDeviceConfig) + "\n[bogus]\nx = 1\n"),
                         doctest::Contains("unknown section [bogus]"), ConfigError);
  }

  SUBCASE("missing target") {
    std::string text(kDeviceConfig);
    const auto pos = text.find("[target]");
    text.replace(pos, std::string("[target]\nkind = fock\nfock_n = 6").size(), "");
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("missing required key 'kind'"),
                         ConfigError);
  }

  SUBCASE("bad number reports the line") {
    std::string text(kDeviceConfig);
    text.replace(text.find("steps = 250"), 11, "steps = abc");
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() > 0);
      CHECK(std::string(e.what()).find("expected a number") != std::string::npos);
    }
  }

  SUBCASE("range violations are named") {
    std::string text(kDeviceConfig);
    text.replace(text.find("dt_ns = 2"), 9, "dt_ns = 0");
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("dt_ns must be positive"),
                         ConfigError);

    std::string text2(kDeviceConfig);
    text2.replace(text2.find("t1_trans_us = 170"), 17, "t1_trans_us = -1");
    CHECK_THROWS_AS(parse_config(text2), Error);
  }

  SUBCASE("duplicate keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config(std::string(kDeviceConfig) + "\n[pulse]\nsteps = 9\n"),
                         doctest::Contains("duplicate key"), ConfigError);
  }

  SUBCASE("malformed lines") {
    CHECK_THROWS_WITH_AS(parse_config("[model\n"), doctest::Contains("unterminated"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("chi_mhz = 1\n"), doctest::Contains("outside"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[model]\nchi_mhz 1\n"),
                         doctest::Contains("expected key = value"), ConfigError);
  }

  SUBCASE("unknown gate name") {
    std::string text(kDeviceConfig);
    text.replace(text.find("kind = fock"), 11, "kind = gate");
    text.replace(text.find("fock_n = 6"), 10, "gate = Q42");
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("unknown gate 'Q42'"),
                         ConfigError);
  }

  SUBCASE("fock level must fit the truncation") {
    std::string text(kDeviceConfig);
    text.replace(text.find("fock_n = 6"), 10, "fock_n = 14");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
}

TEST_CASE("problem assembly per target") {
  std::string text(kDeviceConfig);
  text.replace(text.find("n_osc = 14"), 10, "n_osc = 20");

  SUBCASE("fock problem") {
    const auto p = parse_config(text).make_problem();
    CHECK(p.transfer_sets.size() == 2);
    CHECK(p.transfer_sets[0].size() == 1);
    CHECK(p.transfer_sets[1].dims.n_osc == 22);
  }

  SUBCASE("encode problem embeds the same states at both truncations") {
    std::string t2(text);
    t2.replace(t2.find("kind = fock"), 11, "kind = encode");
    t2.replace(t2.find("fock_n = 6"), 10, "");
    const auto p = parse_config(t2).make_problem();
    CHECK(p.transfer_sets[0].size() == 2);
    const auto& small = p.transfer_sets[0].target[0];
    const auto& large = p.transfer_sets[1].target[0];
    // Oscillator-major layout: the small-truncation state maps onto the
    // first entries of the large one.
    CHECK((large.head(small.size()) - small).norm() < 1e-6);
  }

  SUBCASE("kerr correction problem") {
    std::string t2(text);
    t2.replace(t2.find("kind = fock"), 11, "kind = kerr_correct");
    t2.replace(t2.find("fock_n = 6"), 10, "delta_t_us = 25");
    const auto c = parse_config(t2);
    CHECK(c.target.delta_t == doctest::Approx(25000.0));
    const auto p = c.make_problem();
    CHECK(p.transfer_sets[0].size() == 4);
  }
}

TEST_CASE("model hash is stable and sensitive") {
  const auto a = parse_config(kDeviceConfig);
  auto b = a;
  CHECK(model_hash(a.model) == model_hash(b.model));
  b.model.chi *= 1.0000001;
  CHECK(model_hash(a.model) != model_hash(b.model));
}
