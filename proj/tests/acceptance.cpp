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

// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--only N]... [--workers W]

#include "oracles.hpp"
#include "risnoma/analytic.hpp"
#include "risnoma/experiment.hpp"
#include "risnoma/monte_carlo.hpp"
#include "risnoma/optimizer.hpp"

#include <CLI11.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace risnoma;

namespace {

unsigned g_workers = 0;

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
    void note(const std::string& what)
    {
        if (!detail.empty())
            detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SystemConfig unit_config(int size, double alpha, double eps, double w0_over_m2, double amp_share)
{
    SystemConfig c;
    c.variance_override = 1.0;
    c.m_active = size;
    c.n_passive = size;
    c.alpha_linear = alpha;
    c.epsilon_sic = eps;
    c.pt_user_dbm = 30.0;
    const double w0 = w0_over_m2 * size * size;
    c.w0_dbm = watt_to_dbm(w0);
    // Amplifier noise contributes amp_share * W0 on average.
    c.namp_dbm = amp_share > 0.0 ? watt_to_dbm(amp_share * w0 / (alpha * size)) : -400.0;
    return c;
}

// Shared by criteria 1 and 2.
std::optional<TermSummary> g_summary;
double g_summary_seconds = 0.0;

const TermSummary& unit_summary()
{
    if (!g_summary) {
        const auto t0 = std::chrono::steady_clock::now();
        g_summary = term_summary(unit_config(64, 1.0, 0.0, 0.2, 0.0), 1000000, g_workers);
        g_summary_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return *g_summary;
}

// ---- 1: term moments ------------------------------------------------------

Verdict moments()
{
    Verdict v;
    const int m = 64;
    // Product of two independent unit-variance Rayleigh amplitudes.
    const double prod_mean = std::numbers::pi / 4.0;
    const double prod_var = 1.0 - std::numbers::pi * std::numbers::pi / 16.0;
    struct Expect {
        const char* name;
        double mean, var;
        TermStats lib;
        const TermMoments* emp;
    };
    const auto& s = unit_summary();
    const Expect terms[] = {
        {"A", m * prod_mean, m * prod_var, stats_A(1.0, m, 1.0, 1.0), &s.a},
        {"B", 0.0, double(m), stats_B(m, 1.0, 1.0), &s.b},
        {"C", 0.0, double(m), stats_C(1.0, m, 1.0, 1.0), &s.c},
        {"D", m * prod_mean, m * prod_var, stats_D(m, 1.0, 1.0), &s.d},
    };
    for (const auto& t : terms) {
        if (std::abs(t.lib.mu - t.mean) > 1e-9 * (1.0 + t.mean) || std::abs(t.lib.var - t.var) > 1e-9 * t.var)
            v.fail(fmt("%s: stats (%g, %g) differ from closed form (%g, %g)", t.name, t.lib.mu, t.lib.var, t.mean, t.var));
        const double sd = std::sqrt(t.lib.var);
        // Zero-mean terms: relative error is undefined, so scale by the spread.
        const double mean_err = t.lib.mu != 0.0 ? std::abs(std::abs(t.emp->mean) - t.lib.mu) / t.lib.mu
                                                : std::abs(t.emp->mean) / sd;
        const double var_err = std::abs(t.emp->variance - t.lib.var) / t.lib.var;
        if (mean_err > 0.01)
            v.fail(fmt("%s mean off by %.3g", t.name, mean_err));
        if (var_err > 0.02)
            v.fail(fmt("%s variance off by %.3g", t.name, var_err));
        v.note(fmt("%s mean %.3g var %.3g", t.name, mean_err, var_err));
    }
    if (g_summary_seconds > 60.0)
        v.fail(fmt("took %.1f s", g_summary_seconds));
    return v;
}

// ---- 2: decorrelation -----------------------------------------------------

Verdict correlations()
{
    Verdict v;
    const auto& s = unit_summary();
    v.note(fmt("rho_ac %.2e rho_bd %.2e", s.rho_ac, s.rho_bd));
    if (std::abs(s.rho_ac) > 0.005)
        v.fail("|rho(A,C)| > 0.005");
    if (std::abs(s.rho_bd) > 0.005)
        v.fail("|rho(B,D)| > 0.005");
    return v;
}

// ---- 3: inversion engine --------------------------------------------------

Verdict inversion()
{
    Verdict v;
    double worst = 0.0;
    auto check = [&](const char* what, double g, double got, double want) {
        const double e = std::abs(got - want);
        worst = std::max(worst, e);
        if (e > 1e-4)
            v.fail(fmt("%s at %g: %.8f vs %.8f", what, g, got, want));
    };
    const CharacteristicFunction normal = [](double w) { return cplx(std::exp(-0.5 * w * w), 0.0); };
    for (double g : {-1.96, -1.0, 0.0, 1.0, 1.96})
        check("normal", g, gil_pelaez_cdf(normal, g).value, oracle::normal_cdf(g));

    const CharacteristicFunction expo = [](double w) { return 1.0 / cplx(1.0, -w); };
    for (double g : {0.5, 1.0, 2.0})
        check("exponential", g, gil_pelaez_cdf(expo, g).value, oracle::exponential_cdf(g));

    const QuadFormSpec chi2{{QuadComponent{1.0, 2, 1.0, 0.0}}};
    check("chi2(2)", 2.0, gil_pelaez_cdf(make_cf(chi2), 2.0).value, oracle::chi2_cdf(2.0, 2));

    const QuadFormSpec nc{{QuadComponent{1.0, 1, 1.0, 1.0}}};
    for (double g : {0.5, 1.0, 2.0, 4.0})
        check("nc chi2(1, 1)", g, gil_pelaez_cdf(make_cf(nc), g).value, oracle::noncentral_chi2_cdf(g, 1, 1.0));
    v.note(fmt("max abs error %.2e", worst));
    return v;
}

// ---- 4: analytic vs simulation --------------------------------------------

Verdict agreement()
{
    Verdict v;
    struct Case {
        int size;
        double alpha, eps, w0_over_m2, amp_share;
    };
    const Case cases[] = {
        {32, 1.0, 0.0, 0.2, 0.0},   {64, 8.5, 0.0, 0.2, 0.5},  {128, 100.0, 0.01, 0.05, 0.0},
        {64, 1.0, 0.01, 0.1, 0.5},  {32, 100.0, 0.0, 0.4, 0.5},
    };
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& k : cases) {
        SystemConfig c = unit_config(k.size, k.alpha, k.eps, k.w0_over_m2, k.amp_share);
        c.mc_trials = 1000000;
        const OutagePair an = analytic_outage_pair(c);
        const OutagePair mc = estimate_outage_pair(c, g_workers);
        for (int u : {1, 2}) {
            const double d = std::abs(an.for_user(u).op - mc.for_user(u).op);
            const double tol = std::max(0.01, 3.0 * mc.for_user(u).err);
            if (d > tol)
                v.fail(fmt("M=%d a=%g eps=%g user %d: |%.4f - %.4f| > %.4f", k.size, k.alpha, k.eps, u,
                           an.for_user(u).op, mc.for_user(u).op, tol));
        }
        v.note(fmt("M=%d a=%g eps=%g: %.4f/%.4f vs %.4f/%.4f", k.size, k.alpha, k.eps, an.user1.op, an.user2.op,
                   mc.user1.op, mc.user2.op));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > 600.0)
        v.fail(fmt("took %.0f s", secs));
    return v;
}

// ---- 5: optimum at defaults -------------------------------------------------

Verdict optimum()
{
    Verdict v;
    const auto out = optimize(SystemConfig{});
    v.note(fmt("P_RIS %.3f dBm alpha %.3f mode %s", out.pt_ris_dbm, out.alpha, std::string(to_string(out.mode)).c_str()));
    if (std::abs(out.pt_ris_dbm + 47.0) > 2.0)
        v.fail("P_RIS outside -47 +/- 2 dBm");
    if (out.alpha < 6.0 || out.alpha > 11.0)
        v.fail("alpha outside [6, 11]");
    return v;
}

// ---- 6: minimum size at fixed gain ----------------------------------------

OutagePair at_size(int size)
{
    SystemConfig c;
    c.m_active = size;
    c.n_passive = size;
    return analytic_outage_pair(c);
}

Verdict minimum_size()
{
    Verdict v;
    int found = 0;
    for (int size = 200; size <= 400 && found == 0; size += 4)
        if (at_size(size).user2.op < 0.5)
            found = size;
    if (found == 0) {
        v.fail("OP2 never drops below 0.5 up to 400");
        return v;
    }
    v.note(fmt("first size with OP2 < 0.5: %d", found));
    if (found < 240 || found > 360)
        v.fail("outside [240, 360]");

    OutagePair prev = at_size(found);
    for (int size = found + 16; size <= 1024; size += 16) {
        const OutagePair cur = at_size(size);
        for (int u : {1, 2}) {
            const double slack = prev.for_user(u).err + cur.for_user(u).err + 1e-12;
            if (cur.for_user(u).op > prev.for_user(u).op + slack)
                v.fail(fmt("user %d OP rises at size %d: %.4g -> %.4g", u, size, prev.for_user(u).op, cur.for_user(u).op));
        }
        prev = cur;
    }
    return v;
}

// ---- 7: orderings -----------------------------------------------------------

double served_op(const OutagePair& p, FairnessMode mode)
{
    switch (mode) {
    case FairnessMode::FallbackToUser1:
        return p.user1.op;
    case FairnessMode::FallbackToUser2:
        return p.user2.op;
    default:
        return std::max(p.user1.op, p.user2.op);
    }
}

Verdict orderings()
{
    Verdict v;
    int compared = 0;

    // OP non-increasing in user power at M = N = 512.
    {
        std::optional<OutagePair> prev;
        for (double pt = 0.0; pt <= 23.0; pt += 1.0) {
            SystemConfig c;
            c.pt_user_dbm = pt;
            const OutagePair cur = analytic_outage_pair(c);
            if (prev)
                for (int u : {1, 2})
                    if (cur.for_user(u).op > prev->for_user(u).op + prev->for_user(u).err + cur.for_user(u).err + 1e-12)
                        v.fail(fmt("user %d OP rises with P_t at %g dBm", u, pt));
            prev = cur;
            ++compared;
        }
    }

    // OP2 non-decreasing in the SIC residual.
    {
        double prev = -1.0, prev_err = 0.0;
        for (double eps : {0.0, 1e-4, 1e-3, 1e-2, 3e-2, 0.1, 0.3}) {
            SystemConfig c;
            c.epsilon_sic = eps;
            const OutageResult cur = analytic_outage(c, 2);
            if (cur.op + cur.err + prev_err + 1e-12 < prev)
                v.fail(fmt("OP2 falls with eps at %g", eps));
            prev = cur.op;
            prev_err = cur.err;
            ++compared;
        }
    }

    // Optimized gain never loses to the fixed gain for the user it serves.
    for (int size : {128, 512}) {
        for (double pt : {0.0, 5.0, 10.0, 15.0, 20.0, 23.0}) {
            SystemConfig c;
            c.m_active = size;
            c.n_passive = size;
            c.pt_user_dbm = pt;
            const OutagePair fixed = analytic_outage_pair(c);
            const auto opt = optimize(c);
            SystemConfig at = c;
            at.alpha_mode = AlphaMode::FromPower;
            at.pt_ris_dbm = opt.pt_ris_dbm;
            const OutagePair best = analytic_outage_pair(at);
            const double f = served_op(fixed, opt.mode), o = served_op(best, opt.mode);
            const double slack = 3.0 * (fixed.user1.err + fixed.user2.err + best.user1.err + best.user2.err) + 1e-12;
            if (o > f + slack)
                v.fail(fmt("M=%d P_t=%g: optimized %.4g > fixed %.4g (%s)", size, pt, o, f,
                           std::string(to_string(opt.mode)).c_str()));
            ++compared;
        }
    }
    v.note(fmt("%d points compared", compared));
    return v;
}

// ---- 8: path loss ---------------------------------------------------------

Verdict path_loss()
{
    Verdict v;
    const std::pair<double, double> table[] = {{20.22, 88.795}, {35.51, 97.772}, {55.73, 104.953}};
    for (auto [d, want] : table) {
        const double got = path_loss_db(d, 5.0);
        if (std::abs(got - oracle::path_loss_db(d, 5.0)) > 1e-9)
            v.fail(fmt("d=%g: %.6f disagrees with direct evaluation", d, got));
        if (std::abs(got - want) > 1e-3)
            v.fail(fmt("d=%g: %.5f vs listed %.3f", d, got, want));
        else
            v.note(fmt("d=%g: %.5f", d, got));
    }
    return v;
}

// ---- 9: gamma fit ---------------------------------------------------------

Verdict gamma_fit()
{
    Verdict v;
    const auto x = sample_sinr(SystemConfig{}, 1, 100000, g_workers);
    const GammaFit fit = fit_gamma(x);
    const auto s = oracle::sample_stats(x);
    const double k = s.mean * s.mean / s.variance, theta = s.variance / s.mean;
    const double ks = oracle::ks_distance(x, [&](double t) { return boost::math::gamma_p(k, t / theta); });
    v.note(fmt("shape %.4g scale %.4g KS %.4f", fit.shape, fit.scale, fit.ks_stat));
    if (std::abs(ks - fit.ks_stat) > 1e-6)
        v.fail(fmt("KS %.6f disagrees with oracle %.6f", fit.ks_stat, ks));
    if (fit.ks_stat >= 0.05)
        v.fail("KS >= 0.05");
    return v;
}

// ---- 10: determinism across worker counts ---------------------------------

std::string csv_body(const SweepSpec& spec, unsigned workers)
{
    RunOptions opt;
    opt.workers = workers;
    const SystemConfig base;
    std::ostringstream out;
    write_csv(out, spec, base, run_sweep(spec, base, opt));
    std::istringstream in(out.str());
    std::string line, body;
    while (std::getline(in, line))
        if (!line.starts_with("# generated"))
            body += line + '\n';
    return body;
}

Verdict determinism()
{
    Verdict v;
    SweepSpec spec = preset("fig3");
    spec.trials = 2000;
    const std::string one = csv_body(spec, 1);
    const std::string four = csv_body(spec, 4);
    v.note(fmt("%zu bytes", one.size()));
    if (one != four)
        v.fail("CSV bodies differ between 1 and 4 workers");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"risnoma acceptance suite"};
    std::vector<int> only;
    app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 10));
    app.add_option("-j,--workers", g_workers, "Monte Carlo worker threads (0 = all cores)");
    CLI11_PARSE(app, argc, argv);

    const std::map<int, std::function<Verdict()>> criteria = {
        {1, moments},   {2, correlations}, {3, inversion}, {4, agreement},  {5, optimum},
        {6, minimum_size}, {7, orderings}, {8, path_loss}, {9, gamma_fit}, {10, determinism},
    };
    int failures = 0;
    for (const auto& [id, run] : criteria) {
        if (!only.empty() && std::ranges::find(only, id) == only.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s  %s  (%.1f s)\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
