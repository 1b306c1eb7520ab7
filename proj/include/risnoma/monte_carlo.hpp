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

#pragma once

#include "risnoma/channel.hpp"
#include "risnoma/config.hpp"
#include "risnoma/link.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace risnoma {

enum class Method { MonteCarlo, Analytic };

std::string_view to_string(Method method);

/// Outage estimate for one user. For Monte Carlo `err` is the binomial
/// standard error; for the analytic route it is the quadrature error bound.
struct OutageResult {
    double op = 0.0;
    std::uint64_t trials = 0; // 0 for analytic results
    std::uint64_t events = 0;
    double err = 0.0;
    Method method = Method::MonteCarlo;
    int user = 1;
    double alpha = 1.0;
    std::string config_digest;

    double std_err() const { return err; }
};

struct OutagePair {
    OutageResult user1;
    OutageResult user2;

    const OutageResult& for_user(int user) const { return user == 1 ? user1 : user2; }
};

/// Moment-matched Gamma(shape, scale) fit with its KS distance.
struct GammaFit {
    double shape = 0.0;
    double scale = 0.0;
    double ks_stat = 0.0;
};

enum class Term { A, B, C, D };

struct TermMoments {
    cplx mean{};
    double variance = 0.0; // E|X - mean|^2
    std::uint64_t samples = 0;
};

/// Simulates one trial. Shared by every Monte Carlo entry point so that
/// trial `i` always sees the same realization for a given seed.
class TrialSimulator {
  public:
    explicit TrialSimulator(const SystemConfig& config);

    // Draws realization `trial` and returns its link terms.
    const LinkTerms& run(std::uint64_t trial);
    SinrPair sinr() const;
    // gamma of physical user 1 or 2 for the last trial.
    double gamma(int user) const;

    double alpha() const { return alpha_; }

  private:
    SystemConfig config_;
    LinkVariances variances_;
    double alpha_;
    double pt_;
    double w0_;
    double sigma_z2_;
    ChannelRealization channel_;
    HybridRisState ris_;
    LinkTerms terms_;
};

// Trials handed to one worker at a time; reductions combine blocks in order.
inline constexpr std::uint64_t kTrialBlock = 1024;

/// Monte Carlo outage of both users from the same realizations.
/// Deterministic in (config, seed); independent of `workers`.
OutagePair estimate_outage_pair(const SystemConfig& config, unsigned workers = 0);
OutageResult estimate_outage(const SystemConfig& config, int user, unsigned workers = 0);

/// n SINR samples of `user`; sample i comes from trial i.
std::vector<double> sample_sinr(const SystemConfig& config, int user, std::uint64_t n, unsigned workers = 0);

GammaFit fit_gamma(std::span<const double> samples);

/// Kolmogorov-Smirnov distance between samples and a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

TermMoments empirical_moments(const SystemConfig& config, Term term, std::uint64_t n, unsigned workers = 0);

/// |rho| between two link terms over n realizations (complex correlation
/// coefficient magnitude).
double term_correlation(const SystemConfig& config, Term x, Term y, std::uint64_t n, unsigned workers = 0);

/// Moments of all four terms and the A-C, B-D correlations from one pass.
struct TermSummary {
    TermMoments a, b, c, d;
    double rho_ac = 0.0;
    double rho_bd = 0.0;
};

TermSummary term_summary(const SystemConfig& config, std::uint64_t n, unsigned workers = 0);

} // namespace risnoma
