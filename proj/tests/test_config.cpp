// SPDX-License-Identifier: Apache-2.0
//
// risnoma: hybrid-RIS uplink NOMA link-level simulator
// Copyright (C) 2026 The risnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risnoma/config.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace risnoma;

TEST_CASE("dbm_to_watt reference points")
{
    CHECK(dbm_to_watt(0.0) == doctest::Approx(1.0e-3).epsilon(1e-12));
    CHECK(dbm_to_watt(15.0) == doctest::Approx(3.16227766e-2).epsilon(1e-8));
    CHECK(dbm_to_watt(-130.0) == doctest::Approx(1.0e-16).epsilon(1e-12));
}

TEST_CASE("db_to_linear reference points")
{
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(30.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(linear_to_db(8.5) == doctest::Approx(9.294).epsilon(1e-4));
}

TEST_CASE("unit conversions reject bad input")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(dbm_to_watt(nan), Error);
    CHECK_THROWS_AS(dbm_to_watt(inf), Error);
    CHECK_THROWS_AS(db_to_linear(nan), Error);
    CHECK_THROWS_AS(linear_to_db(0.0), Error);
    CHECK_THROWS_AS(linear_to_db(-1.0), Error);
    CHECK_THROWS_AS(watt_to_dbm(0.0), Error);
}

TEST_CASE("dBm round trip holds to 1e-12 relative")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> p(-200.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double dbm = p(rng);
        const double back = watt_to_dbm(dbm_to_watt(dbm));
        CHECK(std::abs(back - dbm) <= 1e-12 * std::max(1.0, std::abs(dbm)));
        const double w = dbm_to_watt(dbm);
        CHECK(std::abs(dbm_to_watt(watt_to_dbm(w)) - w) <= 1e-12 * w);
    }
}

TEST_CASE("defaults validate unchanged")
{
    const SystemConfig c;
    const auto v = validate(c);
    CHECK(v.config == c);
    CHECK(v.warnings.empty());
    CHECK(c.sinr_threshold() == 3.0);
}

TEST_CASE("alpha above 30 dB is clamped with a warning")
{
    SystemConfig c;
    c.alpha_linear = 2000.0;
    const auto v = validate(c);
    CHECK(v.config.alpha_linear == 1000.0);
    REQUIRE(v.warnings.size() == 1);

    c.alpha_linear = 0.5;
    CHECK(validate(c).config.alpha_linear == 1.0);
}

TEST_CASE("validate rejects out-of-range values and names each one")
{
    SystemConfig c;
    c.fc_ghz = 1.0;
    CHECK_THROWS_AS(validate(c), ConfigError);

    c.d_u1_ris_m = 5.0;
    c.epsilon_sic = 1.5;
    c.m_active = 0;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems().size() == 4);
    }
}

TEST_CASE("validate is idempotent")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> alpha(0.1, 5000.0);
    for (int i = 0; i < 200; ++i) {
        SystemConfig c;
        c.alpha_linear = alpha(rng);
        const auto once = validate(c).config;
        const auto twice = validate(once);
        CHECK(twice.config == once);
        CHECK(twice.warnings.empty());
    }
}

TEST_CASE("config text round-trips exactly")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        SystemConfig c;
        c.pt_user_dbm = -10.0 + 40.0 * u(rng);
        c.pt_ris_dbm = -70.0 + 60.0 * u(rng);
        c.alpha_linear = 1.0 + 999.0 * u(rng);
        c.m_active = 1 + static_cast<int>(1000 * u(rng));
        c.epsilon_sic = u(rng);
        c.d_u2_ris_m = 10.0 + 100.0 * u(rng);
        c.alpha_mode = i % 2 ? AlphaMode::FromPower : AlphaMode::Optimized;
        c.joint_sic_outage = i % 3 == 0;
        c.seed = rng();
        CHECK(parse_config(to_config_text(c)) == c);
    }
}

TEST_CASE("parse_config handles comments and rejects unknown keys")
{
    const SystemConfig c = parse_config("# comment\nm_active = 64  # trailing\n\nalpha_mode = from_power\n");
    CHECK(c.m_active == 64);
    CHECK(c.alpha_mode == AlphaMode::FromPower);
    CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("m_active = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("m_active 64\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("alpha_mode = maximal\n"), ConfigError);
}

TEST_CASE("digest tracks every field")
{
    const SystemConfig a;
    SystemConfig b;
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a).size() == 16);
    b.seed = 2;
    CHECK(config_digest(a) != config_digest(b));
    b = a;
    b.quadrature.tolerance = 1e-9;
    CHECK(config_digest(a) != config_digest(b));
}
