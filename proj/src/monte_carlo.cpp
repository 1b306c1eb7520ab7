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

#include "risnoma/monte_carlo.hpp"

#include "risnoma/parallel.hpp"
#include "risnoma/ris.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace risnoma {

namespace {

std::size_t block_count(std::uint64_t n)
{
    return static_cast<std::size_t>((n + kTrialBlock - 1) / kTrialBlock);
}

cplx term_value(const LinkTerms& lt, Term term)
{
    switch (term) {
    case Term::A: return {lt.a, 0.0};
    case Term::B: return lt.b;
    case Term::C: return lt.c;
    case Term::D: return {lt.d, 0.0};
    }
    return {};
}

// Running sums for first and second (cross) moments of two complex series.
struct PairSums {
    double n = 0.0;
    cplx sx{}, sy{};
    double sxx = 0.0, syy = 0.0;
    cplx sxy{};

    void add(cplx x, cplx y)
    {
        n += 1.0;
        sx += x;
        sy += y;
        sxx += std::norm(x);
        syy += std::norm(y);
        sxy += x * std::conj(y);
    }
    void merge(const PairSums& o)
    {
        n += o.n;
        sx += o.sx;
        sy += o.sy;
        sxx += o.sxx;
        syy += o.syy;
        sxy += o.sxy;
    }
};

template <class Visit>
std::vector<std::pair<PairSums, PairSums>> accumulate_blocks(const SystemConfig& config, std::uint64_t n,
                                                             unsigned workers, Visit visit)
{
    const auto blocks = block_count(n);
    std::vector<std::pair<PairSums, PairSums>> partial(blocks);
    parallel_for(blocks, workers, [&](std::size_t blk) {
        TrialSimulator sim(config);
        const std::uint64_t begin = blk * kTrialBlock;
        const std::uint64_t end = std::min<std::uint64_t>(n, begin + kTrialBlock);
        for (std::uint64_t t = begin; t < end; ++t)
            visit(sim.run(t), partial[blk]);
    });
    return partial;
}

PairSums accumulate_terms(const SystemConfig& config, Term x, Term y, std::uint64_t n, unsigned workers)
{
    const auto partial = accumulate_blocks(config, n, workers, [&](const LinkTerms& lt, auto& sums) {
        sums.first.add(term_value(lt, x), term_value(lt, y));
    });
    PairSums total;
    for (const auto& p : partial)
        total.merge(p.first);
    return total;
}

TermMoments moments_x(const PairSums& s)
{
    TermMoments m;
    m.samples = static_cast<std::uint64_t>(s.n);
    m.mean = s.sx / s.n;
    m.variance = (s.sxx - s.n * std::norm(m.mean)) / (s.n - 1.0);
    return m;
}

TermMoments moments_y(const PairSums& s)
{
    PairSums swapped = s;
    swapped.sx = s.sy;
    swapped.sxx = s.syy;
    return moments_x(swapped);
}

double correlation(const PairSums& s)
{
    const cplx mx = s.sx / s.n;
    const cplx my = s.sy / s.n;
    const cplx cov = s.sxy / s.n - mx * std::conj(my);
    const double vx = s.sxx / s.n - std::norm(mx);
    const double vy = s.syy / s.n - std::norm(my);
    if (!(vx > 0.0 && vy > 0.0))
        throw Error("term_correlation: degenerate term variance");
    return std::abs(cov) / std::sqrt(vx * vy);
}

OutageResult make_mc_result(const SystemConfig& config, int user, std::uint64_t events, double alpha)
{
    OutageResult r;
    r.method = Method::MonteCarlo;
    r.user = user;
    r.trials = config.mc_trials;
    r.events = events;
    r.op = static_cast<double>(events) / static_cast<double>(config.mc_trials);
    r.err = std::sqrt(r.op * (1.0 - r.op) / static_cast<double>(config.mc_trials));
    r.alpha = alpha;
    r.config_digest = config_digest(config);
    return r;
}

} // namespace

std::string_view to_string(Method method)
{
    return method == Method::MonteCarlo ? "mc" : "analytic";
}

TrialSimulator::TrialSimulator(const SystemConfig& config)
    : config_(validate(config).config),
      variances_(link_variances(config_)),
      alpha_(resolve_alpha(config_)),
      pt_(config_.pt_user_watt()),
      w0_(config_.w0_watt()),
      sigma_z2_(config_.namp_watt())
{
    ris_.alpha = alpha_;
}

const LinkTerms& TrialSimulator::run(std::uint64_t trial)
{
    RandomStream stream(config_.seed, trial);
    draw_realization(config_.m_active, config_.n_passive, variances_, stream, channel_);
    align_phases(channel_, config_.active_user, config_.passive_user(), ris_);
    terms_ = compute_link_terms(channel_, ris_, config_.active_user, w0_, sigma_z2_);
    return terms_;
}

SinrPair TrialSimulator::sinr() const
{
    return risnoma::sinr(terms_, pt_, config_.epsilon_sic);
}

double TrialSimulator::gamma(int user) const
{
    return sinr().for_user(user, config_.active_user);
}

OutagePair estimate_outage_pair(const SystemConfig& raw, unsigned workers)
{
    const SystemConfig config = validate(raw).config;
    const double v = config.sinr_threshold();
    const int active = config.active_user;
    const double alpha = resolve_alpha(config);

    struct Counts {
        std::uint64_t user1 = 0, user2 = 0;
    };
    const auto blocks = block_count(config.mc_trials);
    std::vector<Counts> partial(blocks);
    parallel_for(blocks, workers, [&](std::size_t blk) {
        TrialSimulator sim(config);
        const std::uint64_t begin = blk * kTrialBlock;
        const std::uint64_t end = std::min<std::uint64_t>(config.mc_trials, begin + kTrialBlock);
        Counts c;
        for (std::uint64_t t = begin; t < end; ++t) {
            sim.run(t);
            const SinrPair s = sim.sinr();
            const bool first_out = s.gamma1 < v;
            bool second_out = s.gamma2 < v;
            if (config.joint_sic_outage)
                second_out = second_out || first_out;
            // gamma1 belongs to the active-served user
            if (active == 1) {
                c.user1 += first_out;
                c.user2 += second_out;
            } else {
                c.user2 += first_out;
                c.user1 += second_out;
            }
        }
        partial[blk] = c;
    });

    Counts total;
    for (const auto& c : partial) {
        total.user1 += c.user1;
        total.user2 += c.user2;
    }
    return {make_mc_result(config, 1, total.user1, alpha), make_mc_result(config, 2, total.user2, alpha)};
}

OutageResult estimate_outage(const SystemConfig& config, int user, unsigned workers)
{
    if (user != 1 && user != 2)
        throw Error("estimate_outage: user must be 1 or 2");
    return estimate_outage_pair(config, workers).for_user(user);
}

std::vector<double> sample_sinr(const SystemConfig& raw, int user, std::uint64_t n, unsigned workers)
{
    if (user != 1 && user != 2)
        throw Error("sample_sinr: user must be 1 or 2");
    if (n < 1)
        throw Error("sample_sinr: need at least one sample");
    const SystemConfig config = validate(raw).config;
    std::vector<double> out(n);
    parallel_for(block_count(n), workers, [&](std::size_t blk) {
        TrialSimulator sim(config);
        const std::uint64_t begin = blk * kTrialBlock;
        const std::uint64_t end = std::min<std::uint64_t>(n, begin + kTrialBlock);
        for (std::uint64_t t = begin; t < end; ++t) {
            sim.run(t);
            out[t] = sim.gamma(user);
        }
    });
    return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    if (samples.empty())
        throw Error("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

GammaFit fit_gamma(std::span<const double> samples)
{
    if (samples.size() < 100)
        throw Error("fit_gamma: need at least 100 samples");
    double sum = 0.0;
    for (double x : samples) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw Error("fit_gamma: samples must be positive and finite");
        sum += x;
    }
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : samples)
        ss += (x - mean) * (x - mean);
    const double var = ss / (n - 1.0);
    if (!(var > 0.0))
        throw Error("fit_gamma: samples have zero variance");

    GammaFit fit;
    fit.shape = mean * mean / var;
    fit.scale = var / mean;
    fit.ks_stat = ks_statistic(std::vector<double>(samples.begin(), samples.end()),
                               [&](double x) { return boost::math::gamma_p(fit.shape, x / fit.scale); });
    return fit;
}

TermMoments empirical_moments(const SystemConfig& config, Term term, std::uint64_t n, unsigned workers)
{
    if (n < 10000)
        throw Error("empirical_moments: need at least 1e4 realizations");
    return moments_x(accumulate_terms(config, term, term, n, workers));
}

double term_correlation(const SystemConfig& config, Term x, Term y, std::uint64_t n, unsigned workers)
{
    if (n < 2)
        throw Error("term_correlation: need at least two realizations");
    return correlation(accumulate_terms(config, x, y, n, workers));
}

TermSummary term_summary(const SystemConfig& config, std::uint64_t n, unsigned workers)
{
    if (n < 10000)
        throw Error("term_summary: need at least 1e4 realizations");
    const auto partial = accumulate_blocks(config, n, workers, [](const LinkTerms& lt, auto& sums) {
        sums.first.add(lt.a, lt.c);
        sums.second.add(lt.b, lt.d);
    });
    PairSums ac, bd;
    for (const auto& p : partial) {
        ac.merge(p.first);
        bd.merge(p.second);
    }
    TermSummary out;
    out.a = moments_x(ac);
    out.c = moments_y(ac);
    out.b = moments_x(bd);
    out.d = moments_y(bd);
    out.rho_ac = correlation(ac);
    out.rho_bd = correlation(bd);
    return out;
}

} // namespace risnoma
