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

#include "oracles.hpp"
#include "risnoma/analytic.hpp"
#include "risnoma/monte_carlo.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace risnoma;

namespace {

// Unit-variance channels, unit transmit power and negligible amplifier noise.
SystemConfig unit_config(int size, double alpha, double eps, double w0_over_m2, std::uint64_t trials)
{
    SystemConfig c;
    c.variance_override = 1.0;
    c.m_active = size;
    c.n_passive = size;
    c.alpha_linear = alpha;
    c.epsilon_sic = eps;
    c.pt_user_dbm = 30.0;
    c.namp_dbm = -400.0;
    c.w0_dbm = watt_to_dbm(w0_over_m2 * size * size);
    c.mc_trials = trials;
    return c;
}

} // namespace

TEST_CASE("estimates are identical for any worker count")
{
    SystemConfig c = unit_config(16, 8.5, 0.01, 0.2, 5000);
    const OutagePair one = estimate_outage_pair(c, 1);
    for (unsigned w : {2u, 3u, 8u}) {
        const OutagePair many = estimate_outage_pair(c, w);
        CHECK(many.user1.events == one.user1.events);
        CHECK(many.user2.events == one.user2.events);
        CHECK(many.user1.op == one.user1.op);
        CHECK(many.user2.err == one.user2.err);
    }
    CHECK(one.user1.config_digest == config_digest(validate(c).config));
}

TEST_CASE("per-user and paired estimators agree")
{
    SystemConfig c = unit_config(16, 3.0, 0.0, 0.3, 3000);
    const OutagePair pair = estimate_outage_pair(c, 1);
    CHECK(estimate_outage(c, 1, 1).events == pair.user1.events);
    CHECK(estimate_outage(c, 2, 1).events == pair.user2.events);
    CHECK_THROWS_AS(estimate_outage(c, 3, 1), Error);
}

TEST_CASE("binomial standard error")
{
    SystemConfig c = unit_config(16, 8.5, 0.0, 0.2, 4000);
    const OutagePair p = estimate_outage_pair(c, 1);
    for (const auto* r : {&p.user1, &p.user2}) {
        CHECK(r->trials == 4000);
        CHECK(r->op == static_cast<double>(r->events) / 4000.0);
        CHECK(r->err == doctest::Approx(std::sqrt(r->op * (1.0 - r->op) / 4000.0)));
        CHECK(r->method == Method::MonteCarlo);
        CHECK(r->alpha == 8.5);
    }
}

TEST_CASE("zero rate threshold never outages")
{
    SystemConfig c = unit_config(8, 1.0, 0.0, 5.0, 2000);
    c.rate_threshold_bps_hz = 0.0;
    const OutagePair p = estimate_outage_pair(c, 1);
    CHECK(p.user1.op == 0.0);
    CHECK(p.user2.op == 0.0);
}

TEST_CASE("outage counts grow with the rate threshold under common draws")
{
    SystemConfig c = unit_config(16, 8.5, 0.01, 0.2, 3000);
    std::uint64_t prev1 = 0, prev2 = 0;
    for (double r : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
        c.rate_threshold_bps_hz = r;
        const OutagePair p = estimate_outage_pair(c, 1);
        CHECK(p.user1.events >= prev1);
        CHECK(p.user2.events >= prev2);
        prev1 = p.user1.events;
        prev2 = p.user2.events;
    }
}

TEST_CASE("joint SIC outage is never below the plain count")
{
    SystemConfig c = unit_config(16, 8.5, 0.0, 0.25, 3000);
    const OutagePair plain = estimate_outage_pair(c, 1);
    c.joint_sic_outage = true;
    const OutagePair joint = estimate_outage_pair(c, 1);
    CHECK(joint.user1.events == plain.user1.events);
    CHECK(joint.user2.events >= plain.user2.events);
}

TEST_CASE("sampled SINRs are non-negative and reproduce the estimator")
{
    SystemConfig c = unit_config(16, 8.5, 0.0, 0.2, 3000);
    const double v = c.sinr_threshold();
    for (int user : {1, 2}) {
        const auto samples = sample_sinr(c, user, 3000, 1);
        std::uint64_t below = 0;
        for (double g : samples) {
            CHECK(g >= 0.0);
            below += g < v;
        }
        CHECK(below == estimate_outage(c, user, 1).events);
    }
}

TEST_CASE("mean of the second SINR drops as SIC residual grows")
{
    SystemConfig c = unit_config(16, 8.5, 0.0, 0.2, 1);
    double previous = std::numeric_limits<double>::infinity();
    for (double eps : {0.0, 0.001, 0.01, 0.1}) {
        c.epsilon_sic = eps;
        const auto s = sample_sinr(c, 2, 4000, 1);
        const double mean = oracle::sample_stats(s).mean;
        CHECK(mean < previous);
        previous = mean;
    }
}

TEST_CASE("active user selection swaps the SINR roles")
{
    SystemConfig c = unit_config(8, 20.0, 0.0, 0.2, 1);
    TrialSimulator one(c);
    c.active_user = 2;
    TrialSimulator two(c);
    one.run(5);
    two.run(5);
    CHECK(one.gamma(1) == one.sinr().gamma1);
    CHECK(two.gamma(2) == two.sinr().gamma1);
    CHECK(two.gamma(1) == two.sinr().gamma2);
}

TEST_CASE("gamma fit recovers exponential and gamma parameters")
{
    std::mt19937_64 rng(2024);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x(100000);
    for (auto& v : x)
        v = expo(rng);
    GammaFit fit = fit_gamma(x);
    CHECK(fit.shape == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.scale == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.ks_stat < oracle::ks_critical_001(x.size()));

    std::gamma_distribution<double> gam(2.0, 3.0);
    for (auto& v : x)
        v = gam(rng);
    fit = fit_gamma(x);
    CHECK(fit.shape == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.scale == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("gamma fit rejects degenerate input")
{
    CHECK_THROWS_AS(fit_gamma(std::vector<double>(1000, 2.5)), Error);
    CHECK_THROWS_AS(fit_gamma(std::vector<double>(10, 1.0)), Error);
    std::vector<double> with_negative(1000, 1.0);
    with_negative[3] = -1.0;
    with_negative[4] = 3.0;
    CHECK_THROWS_AS(fit_gamma(with_negative), Error);
}

TEST_CASE("KS statistic agrees with an independent computation")
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd(0.3, 1.0);
    std::vector<double> x(5000);
    for (auto& v : x)
        v = nd(rng);
    const double lib = ks_statistic(x, oracle::normal_cdf);
    CHECK(lib == doctest::Approx(oracle::ks_distance(x, oracle::normal_cdf)).epsilon(1e-12));
    CHECK(lib > 0.1);
}

TEST_CASE("term moments at moderate sample size")
{
    SystemConfig c = unit_config(64, 1.0, 0.0, 0.2, 1);
    const auto a = empirical_moments(c, Term::A, 200000, 1);
    CHECK(a.mean.real() == doctest::Approx(64.0 * std::numbers::pi / 4.0).epsilon(0.01));
    CHECK(a.variance == doctest::Approx(64.0 * (1.0 - std::numbers::pi * std::numbers::pi / 16.0)).epsilon(0.02));

    const auto b = empirical_moments(c, Term::B, 200000, 1);
    CHECK(std::abs(b.mean) < 0.1);
    CHECK(b.variance == doctest::Approx(64.0).epsilon(0.02));

    SystemConfig tiny = unit_config(1, 1.0, 0.0, 0.2, 1);
    const auto d = empirical_moments(tiny, Term::D, 1000000, 1);
    CHECK(d.mean.real() == doctest::Approx(std::numbers::pi / 4.0).epsilon(0.01));

    CHECK_THROWS_AS(empirical_moments(c, Term::A, 100, 1), Error);
}

TEST_CASE("term summary agrees with per-term estimators")
{
    SystemConfig c = unit_config(16, 1.0, 0.0, 0.2, 1);
    const TermSummary s = term_summary(c, 20000, 2);
    const TermMoments a = empirical_moments(c, Term::A, 20000, 1);
    const TermMoments d = empirical_moments(c, Term::D, 20000, 3);
    CHECK(std::abs(s.a.mean - a.mean) < 1e-9 * std::abs(a.mean));
    CHECK(s.a.variance == doctest::Approx(a.variance).epsilon(1e-9));
    CHECK(s.d.variance == doctest::Approx(d.variance).epsilon(1e-9));
    CHECK(s.rho_ac == doctest::Approx(term_correlation(c, Term::A, Term::C, 20000, 1)).epsilon(1e-9));
    CHECK(s.a.samples == 20000);
    CHECK_THROWS_AS(term_summary(c, 100, 1), Error);
}
