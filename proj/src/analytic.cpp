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

#include "risnoma/analytic.hpp"

#include "risnoma/channel.hpp"
#include "risnoma/ris.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace risnoma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRayleighVarFactor = 1.0 - kPi * kPi / 16.0;

// Below this the integrand is replaced by its (finite) limit.
constexpr double kOmegaHead = 1e-8;
constexpr double kFirstPanelEnd = 1.0 / 1024.0;
constexpr int kMaxSegments = 4000;
// Past w * |g| = this the remaining integral goes to a Fourier-type rule.
constexpr double kOscillatoryTailStart = 16.0 * 2.0 * kPi;

void require_positive(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw Error(std::string(what) + " must be positive");
}

void add_complex_sum(std::vector<QuadComponent>& out, double weight, const TermStats& real_part,
                     const TermStats& complex_part)
{
    // |R + Z|^2 = (R + Re Z)^2 + (Im Z)^2 with R real Gaussian, Z circular.
    out.push_back({weight, 1, real_part.var + complex_part.var / 2.0, real_part.mu});
    out.push_back({weight, 1, complex_part.var / 2.0, 0.0});
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod_segment(const std::function<double(double)>& f, double a, double b)
{
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    return {a, b, value, err};
}

// Globally adaptive G7/K15 with an absolute error target: always bisects
// the segment with the largest error estimate.
std::pair<double, double> integrate_absolute(const std::function<double(double)>& f, double a, double b,
                                             double abs_tol)
{
    std::priority_queue<Segment> heap;
    heap.push(kronrod_segment(f, a, b));
    double total_err = heap.top().error;
    int segments = 1;
    while (total_err > abs_tol && segments < kMaxSegments) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = kronrod_segment(f, worst.a, mid);
        const Segment right = kronrod_segment(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    double value = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {value, total_err};
}

// Integral over [a, inf) of Im{e^{-jwg} cf(w)} / w for g != 0, written as
// cosine and sine transforms of the smooth envelope H(t) = e^{-jag} cf(a+t) / (a+t).
std::pair<double, double> oscillatory_tail(const CharacteristicFunction& cf, double g, double a)
{
    // Fresh rules each call: they cache refinement levels, which would make
    // results depend on call history.
    boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-12);
    boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-12);
    const cplx shift = std::exp(cplx{0.0, -a * g});
    auto envelope = [&](double t) { return shift * cf(a + t) / (a + t); };
    const double k = std::abs(g);
    const auto [c, c_rel] = cos_rule.integrate([&](double t) { return envelope(t).imag(); }, k);
    const auto [s, s_rel] = sin_rule.integrate([&](double t) { return envelope(t).real(); }, k);
    const double sin_part = g > 0.0 ? s : -s;
    return {c - sin_part, std::abs(c) * c_rel + std::abs(s) * s_rel};
}

} // namespace

TermStats stats_A(double alpha, int m, double sigma_h, double sigma_hbs)
{
    require_positive(alpha, "stats_A: alpha");
    require_positive(m, "stats_A: m");
    require_positive(sigma_h, "stats_A: sigma_h");
    require_positive(sigma_hbs, "stats_A: sigma_hbs");
    const double p = sigma_h * sigma_hbs;
    return {std::sqrt(alpha) * m * kPi * p / 4.0, alpha * m * p * p * kRayleighVarFactor, TermKind::RealGaussian};
}

TermStats stats_B(int n, double sigma_g, double sigma_gbs)
{
    require_positive(n, "stats_B: n");
    require_positive(sigma_g, "stats_B: sigma_g");
    require_positive(sigma_gbs, "stats_B: sigma_gbs");
    const double p = sigma_g * sigma_gbs;
    return {0.0, n * p * p, TermKind::ComplexGaussian};
}

TermStats stats_C(double alpha, int m, double sigma_h, double sigma_hbs)
{
    require_positive(alpha, "stats_C: alpha");
    require_positive(m, "stats_C: m");
    require_positive(sigma_h, "stats_C: sigma_h");
    require_positive(sigma_hbs, "stats_C: sigma_hbs");
    const double p = sigma_h * sigma_hbs;
    return {0.0, alpha * m * p * p, TermKind::ComplexGaussian};
}

TermStats stats_D(int n, double sigma_g, double sigma_gbs)
{
    require_positive(n, "stats_D: n");
    require_positive(sigma_g, "stats_D: sigma_g");
    require_positive(sigma_gbs, "stats_D: sigma_gbs");
    const double p = sigma_g * sigma_gbs;
    return {n * kPi * p / 4.0, n * p * p * kRayleighVarFactor, TermKind::RealGaussian};
}

TermSet term_stats(const SystemConfig& config, double alpha)
{
    const LinkVariances var = link_variances(config);
    const double s_act = std::sqrt(config.active_user == 1 ? var.user1_ris : var.user2_ris);
    const double s_pas = std::sqrt(config.active_user == 1 ? var.user2_ris : var.user1_ris);
    const double s_bs = std::sqrt(var.ris_bs);
    return {stats_A(alpha, config.m_active, s_act, s_bs), stats_B(config.n_passive, s_act, s_bs),
            stats_C(alpha, config.m_active, s_pas, s_bs), stats_D(config.n_passive, s_pas, s_bs), var.ris_bs};
}

double QuadFormSpec::mean() const
{
    double m = 0.0;
    for (const auto& c : components)
        m += c.weight * (c.dof * c.variance + c.mean * c.mean);
    return m;
}

double QuadFormSpec::variance() const
{
    double v = 0.0;
    for (const auto& c : components)
        v += c.weight * c.weight *
             (2.0 * c.dof * c.variance * c.variance + 4.0 * c.mean * c.mean * c.variance);
    return v;
}

QuadFormSpec QuadFormSpec::scaled(double s) const
{
    QuadFormSpec out = *this;
    for (auto& c : out.components)
        c.weight /= s;
    return out;
}

QuadFormSpec build_quadform(const TermSet& stats, const SystemConfig& config, double alpha, int user, double v)
{
    if (!(v >= 0.0))
        throw Error("build_quadform: threshold must be >= 0");
    if (user != 1 && user != 2)
        throw Error("build_quadform: user must be 1 or 2");

    const double pt = config.pt_user_watt();
    const double noise_weight = config.namp_watt() * alpha * v;
    QuadFormSpec spec;

    if (user == config.active_user) {
        add_complex_sum(spec.components, pt, stats.a, stats.b);
        if (v > 0.0)
            add_complex_sum(spec.components, -pt * v, stats.d, stats.c);
    } else {
        add_complex_sum(spec.components, pt, stats.d, stats.c);
        if (v > 0.0 && config.epsilon_sic > 0.0)
            add_complex_sum(spec.components, -config.epsilon_sic * pt * v, stats.a, stats.b);
    }
    if (noise_weight > 0.0)
        spec.components.push_back({-noise_weight, 2 * config.m_active, stats.e_var / 2.0, 0.0});
    return spec;
}

cplx cf_eval(const QuadFormSpec& spec, double omega)
{
    cplx result{1.0, 0.0};
    for (const auto& c : spec.components) {
        const double t = c.weight * omega;
        const cplx den{1.0, -2.0 * t * c.variance};
        // Re(den) = 1, so the principal branch of the power is the right one.
        cplx term = std::pow(den, -0.5 * c.dof);
        if (c.mean != 0.0)
            term *= std::exp(cplx{0.0, t * c.mean * c.mean} / den);
        result *= term;
    }
    return result;
}

CharacteristicFunction make_cf(QuadFormSpec spec)
{
    return [spec = std::move(spec)](double omega) { return cf_eval(spec, omega); };
}

CdfResult gil_pelaez_cdf(const CharacteristicFunction& cf, double g, const QuadratureSettings& quad)
{
    const std::function<double(double)> integrand = [&](double w) {
        return (std::exp(cplx{0.0, -w * g}) * cf(w)).imag() / w;
    };

    CdfResult out;
    // The integrand tends to E[G] - g as w -> 0; a one-point rule is enough
    // on [0, kOmegaHead].
    const double head_value = integrand(kOmegaHead);
    double integral = kOmegaHead * head_value;
    double error = kOmegaHead * std::abs(head_value - integrand(2.0 * kOmegaHead));

    double a = kOmegaHead;
    double b = kFirstPanelEnd;
    for (;;) {
        if (std::abs(g) * a > kOscillatoryTailStart) {
            // Dyadic panels would now span many periods of e^{-jwg}.
            const auto [tail, tail_err] = oscillatory_tail(cf, g, a);
            integral += tail;
            error += tail_err;
            ++out.panels;
            out.omega_end = std::numeric_limits<double>::infinity();
            break;
        }
        // Each dyadic panel gets a slice of the absolute error budget.
        const auto [panel, panel_err] = integrate_absolute(integrand, a, b, quad.tolerance / 64.0);
        integral += panel;
        error += panel_err;
        ++out.panels;

        // Without help from oscillation, a tail decaying like w^-p integrates
        // to about |cf(b)| / p; p comes from the last dyadic step.
        const double psi_a = std::abs(cf(a));
        const double psi_b = std::abs(cf(b));
        const double decay = std::log2(psi_a / psi_b);
        const double tail = decay > 0.05 ? psi_b / decay : std::numeric_limits<double>::infinity();
        if (tail < quad.tolerance) {
            error += tail;
            out.omega_end = b;
            break;
        }
        if (b >= quad.omega_max)
            throw AccuracyError("gil_pelaez_cdf: characteristic function has not decayed by omega_max");
        a = b;
        b = 2.0 * b;
    }

    out.error = error / kPi;
    if (!std::isfinite(integral) || out.error > quad.max_error)
        throw AccuracyError("gil_pelaez_cdf: error estimate " + std::to_string(out.error) + " exceeds limit");
    out.value = std::clamp(0.5 - integral / kPi, 0.0, 1.0);
    return out;
}

CdfResult quadform_cdf(const QuadFormSpec& spec, double g, const QuadratureSettings& quad)
{
    bool any_positive = false;
    bool any_negative = false;
    double scale = 0.0;
    for (const auto& c : spec.components) {
        any_positive = any_positive || c.weight > 0.0;
        any_negative = any_negative || c.weight < 0.0;
        scale += std::abs(c.weight) * (c.dof * c.variance + c.mean * c.mean);
    }
    // One-sided forms have no mass beyond the origin.
    CdfResult edge;
    if (!any_negative && g <= 0.0)
        return edge;
    if (!any_positive && g >= 0.0) {
        edge.value = 1.0;
        return edge;
    }
    // Normalize so the CF varies on an O(1) scale in omega.
    return gil_pelaez_cdf(make_cf(spec.scaled(scale)), g / scale, quad);
}

OutageResult analytic_outage(const SystemConfig& raw, int user)
{
    if (user != 1 && user != 2)
        throw Error("analytic_outage: user must be 1 or 2");
    const SystemConfig config = validate(raw).config;
    if (config.joint_sic_outage)
        throw Error("analytic_outage: joint SIC outage is only available from Monte Carlo");

    OutageResult r;
    r.method = Method::Analytic;
    r.user = user;
    r.alpha = resolve_alpha(config);
    r.config_digest = config_digest(config);

    const double v = config.sinr_threshold();
    if (v == 0.0)
        return r; // gamma >= 0 can never fall below 0

    const QuadFormSpec spec = build_quadform(term_stats(config, r.alpha), config, r.alpha, user, v);
    const CdfResult cdf = quadform_cdf(spec, config.w0_watt() * v, config.quadrature);
    r.op = cdf.value;
    r.err = cdf.error;
    return r;
}

OutagePair analytic_outage_pair(const SystemConfig& config)
{
    return {analytic_outage(config, 1), analytic_outage(config, 2)};
}

} // namespace risnoma
