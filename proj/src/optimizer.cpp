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

#include "risnoma/optimizer.hpp"

#include "risnoma/analytic.hpp"
#include "risnoma/channel.hpp"
#include "risnoma/ris.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace risnoma {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

void check_settings(const OptimizerSettings& s)
{
    std::vector<std::string> problems;
    if (!(s.lo_dbm < s.hi_dbm))
        problems.emplace_back("search interval must be non-empty");
    if (!(s.tolerance_db > 0.0))
        problems.emplace_back("tolerance must be > 0");
    if (!(s.ceiling > 0.0 && s.ceiling < 1.0))
        problems.emplace_back("ceiling must lie in (0, 1)");
    if (!(s.grid_step_db > 0.0))
        problems.emplace_back("grid step must be > 0");
    if (!(s.sa_cooling > 0.0 && s.sa_cooling < 1.0) || s.sa_iterations < 1 || !(s.sa_initial_temperature > 0.0))
        problems.emplace_back("annealing schedule is invalid");
    if (!problems.empty())
        throw ConfigError(std::move(problems));
}

// Memoizes evaluations so repeated probes of a point are free and counted once.
class Evaluations {
  public:
    Evaluations(const SystemConfig& config, const OptimizerSettings& settings)
        : config_(config), settings_(settings)
    {
    }

    const OutagePair& at(double x)
    {
        auto it = cache_.find(x);
        if (it == cache_.end())
            it = cache_.emplace(x, evaluate_at_power(x, config_, settings_)).first;
        return it->second;
    }

    int count() const { return static_cast<int>(cache_.size()); }

  private:
    const SystemConfig& config_;
    const OptimizerSettings& settings_;
    std::map<double, OutagePair> cache_;
};

double objective_value(const OutagePair& p, FairnessMode mode, double ceiling)
{
    switch (mode) {
    case FairnessMode::Balanced:
        // Two users in joint outage have a zero gap but serve nobody.
        if (p.user1.op >= ceiling && p.user2.op >= ceiling)
            return 1.0 + std::max(p.user1.op, p.user2.op);
        return std::abs(p.user1.op - p.user2.op);
    case FairnessMode::FallbackToUser1: return p.user1.op;
    case FairnessMode::FallbackToUser2: return p.user2.op;
    }
    return 0.0;
}

template <class F>
double golden_section(F&& f, double lo, double hi, double tol)
{
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

template <class F>
double simulated_annealing(F&& f, const SystemConfig& config, const OptimizerSettings& s)
{
    // Acceptance works on log10 of the objective so that the near-zero
    // valley around the optimum is still resolved.
    auto energy = [&](double x) { return std::log10(f(x) + 1e-15); };
    RandomStream rng(config.seed, 0x5a5a5a5aULL);
    const double width = s.hi_dbm - s.lo_dbm;

    double x = 0.5 * (s.lo_dbm + s.hi_dbm);
    double e = energy(x);
    double best_x = x;
    double best_e = e;
    double temperature = s.sa_initial_temperature;
    for (int k = 0; k < s.sa_iterations; ++k) {
        const double step = 0.25 * width * temperature / s.sa_initial_temperature;
        const double candidate = std::clamp(x + step * rng.normal(), s.lo_dbm, s.hi_dbm);
        const double ce = energy(candidate);
        if (ce <= e || rng.uniform() < std::exp(-(ce - e) / temperature)) {
            x = candidate;
            e = ce;
        }
        if (e < best_e) {
            best_e = e;
            best_x = x;
        }
        temperature *= s.sa_cooling;
    }
    return best_x;
}

} // namespace

std::string_view to_string(FairnessMode mode)
{
    switch (mode) {
    case FairnessMode::Balanced: return "balanced";
    case FairnessMode::FallbackToUser1: return "fallback_u1";
    case FairnessMode::FallbackToUser2: return "fallback_u2";
    }
    return "balanced";
}

OutagePair evaluate_at_power(double pt_ris_dbm, const SystemConfig& config, const OptimizerSettings& settings)
{
    SystemConfig c = config;
    c.alpha_mode = AlphaMode::FromPower;
    c.pt_ris_dbm = pt_ris_dbm;
    // Monte Carlo reuses config.seed at every point (common random numbers).
    OutagePair p = settings.evaluator == Evaluator::Analytic ? analytic_outage_pair(c)
                                                               : estimate_outage_pair(c, settings.workers);
    if (!std::isfinite(p.user1.op) || !std::isfinite(p.user2.op))
        throw Error("optimizer: non-finite outage at " + std::to_string(pt_ris_dbm) + " dBm");
    return p;
}

double objective_gap(double pt_ris_dbm, const SystemConfig& config, const OptimizerSettings& settings)
{
    const OutagePair p = evaluate_at_power(pt_ris_dbm, config, settings);
    return std::abs(p.user1.op - p.user2.op);
}

OptimizationOutcome optimize(const SystemConfig& raw, const OptimizerSettings& settings)
{
    check_settings(settings);
    const SystemConfig config = validate(raw).config;
    Evaluations eval(config, settings);

    // Grid scan: decides the fairness mode and brackets the optimum.
    std::vector<double> grid;
    for (double x = settings.lo_dbm; x < settings.hi_dbm - 1e-9; x += settings.grid_step_db)
        grid.push_back(x);
    grid.push_back(settings.hi_dbm);

    bool user1_unservable = true;
    bool user2_unservable = true;
    double min1 = 1.0, min2 = 1.0;
    for (double x : grid) {
        const OutagePair& p = eval.at(x);
        user1_unservable = user1_unservable && p.user1.op >= settings.ceiling;
        user2_unservable = user2_unservable && p.user2.op >= settings.ceiling;
        min1 = std::min(min1, p.user1.op);
        min2 = std::min(min2, p.user2.op);
    }

    FairnessMode mode = FairnessMode::Balanced;
    if (user1_unservable && user2_unservable)
        mode = min2 < min1 ? FairnessMode::FallbackToUser2 : FairnessMode::FallbackToUser1;
    else if (user2_unservable)
        mode = FairnessMode::FallbackToUser1;
    else if (user1_unservable)
        mode = FairnessMode::FallbackToUser2;

    auto objective = [&](double x) { return objective_value(eval.at(x), mode, settings.ceiling); };

    // Lowest-power grid point among the minimizers.
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (objective(grid[i]) < objective(grid[best]))
            best = i;

    double x_opt;
    if (settings.method == SearchMethod::GoldenSection) {
        const double lo = grid[best == 0 ? 0 : best - 1];
        const double hi = grid[std::min(best + 1, grid.size() - 1)];
        x_opt = golden_section(objective, lo, hi, settings.tolerance_db);
    } else {
        x_opt = simulated_annealing(objective, config, settings);
    }

    // Never return something worse than what the scan already found.
    if (objective(grid[best]) < objective(x_opt))
        x_opt = grid[best];

    const OutagePair& p = eval.at(x_opt);
    OptimizationOutcome out;
    out.pt_ris_dbm = x_opt;
    out.alpha = p.user1.alpha;
    out.op1 = p.user1.op;
    out.op2 = p.user2.op;
    out.gap = std::abs(out.op1 - out.op2);
    out.max_op = std::max(out.op1, out.op2);
    out.mode = mode;
    out.evaluations = eval.count();
    return out;
}

} // namespace risnoma
