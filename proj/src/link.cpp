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

#include "risnoma/link.hpp"

#include <cmath>
#include <complex>

namespace risnoma {

LinkTerms compute_link_terms(const ChannelRealization& ch, const HybridRisState& ris, int active_user,
                             double w0_watt, double sigma_z2_watt)
{
    const std::size_t m_size = ch.h_bs.size();
    const std::size_t n_size = ch.g_bs.size();
    const int passive_user = active_user == 1 ? 2 : 1;
    const CVector& h_act = ch.h(active_user);
    const CVector& h_pas = ch.h(passive_user);
    const CVector& g_act = ch.g(active_user);
    const CVector& g_pas = ch.g(passive_user);

    if (h_act.size() != m_size || h_pas.size() != m_size || ris.theta.size() != m_size ||
        g_act.size() != n_size || g_pas.size() != n_size || ris.beta.size() != n_size)
        throw Error("compute_link_terms: dimension mismatch between channels and RIS state");

    LinkTerms lt;
    lt.alpha = ris.alpha;
    lt.w0 = w0_watt;
    lt.sigma_z2 = sigma_z2_watt;

    double a_sum = 0.0;
    cplx c_sum{};
    double noise_gain = 0.0;
    for (std::size_t m = 0; m < m_size; ++m) {
        a_sum += std::sqrt(std::norm(h_act[m]) * std::norm(ch.h_bs[m]));
        const cplx e = ris.theta[m] * ch.h_bs[m];
        c_sum += h_pas[m] * e;
        noise_gain += std::norm(e);
    }
    cplx b_sum{};
    double d_sum = 0.0;
    for (std::size_t n = 0; n < n_size; ++n) {
        b_sum += g_act[n] * ris.beta[n] * ch.g_bs[n];
        d_sum += std::sqrt(std::norm(g_pas[n]) * std::norm(ch.g_bs[n]));
    }

    const double root_alpha = std::sqrt(ris.alpha);
    lt.a = root_alpha * a_sum;
    lt.b = b_sum;
    lt.c = root_alpha * c_sum;
    lt.d = d_sum;
    lt.active_noise_gain = noise_gain;
    return lt;
}

LinkTerms compute_link_terms(const ChannelRealization& ch, const HybridRisState& ris, const SystemConfig& config)
{
    return compute_link_terms(ch, ris, config.active_user, config.w0_watt(), config.namp_watt());
}

SinrPair sinr(const LinkTerms& lt, double pt_user_watt, double epsilon_sic)
{
    const double first = pt_user_watt * std::norm(lt.a + lt.b);
    const double second = pt_user_watt * std::norm(lt.c + lt.d);
    const double noise = lt.sigma_z2 * lt.alpha * lt.active_noise_gain + lt.w0;
    return {first / (second + noise), second / (epsilon_sic * first + noise)};
}

SinrPair sinr(const LinkTerms& lt, const SystemConfig& config)
{
    return sinr(lt, config.pt_user_watt(), config.epsilon_sic);
}

cplx synthesize_received(const ChannelRealization& ch, const HybridRisState& ris, const SystemConfig& config,
                         cplx x1, cplx x2, std::span<const cplx> amp_noise, cplx awgn)
{
    const std::size_t m_size = ch.h_bs.size();
    const std::size_t n_size = ch.g_bs.size();
    if (amp_noise.size() != m_size || ris.theta.size() != m_size || ris.beta.size() != n_size)
        throw Error("synthesize_received: dimension mismatch");

    const double root_alpha = std::sqrt(ris.alpha);
    const double root_pt = std::sqrt(config.pt_user_watt());
    const cplx symbols[2] = {x1, x2};

    cplx y{};
    for (int k = 1; k <= 2; ++k) {
        cplx active{}, passive{};
        for (std::size_t m = 0; m < m_size; ++m)
            active += ch.h(k)[m] * ris.theta[m] * ch.h_bs[m];
        for (std::size_t n = 0; n < n_size; ++n)
            passive += ch.g(k)[n] * ris.beta[n] * ch.g_bs[n];
        y += root_pt * (root_alpha * active + passive) * symbols[k - 1];
    }
    cplx amp{};
    for (std::size_t m = 0; m < m_size; ++m)
        amp += amp_noise[m] * ris.theta[m] * ch.h_bs[m];
    return y + root_alpha * amp + awgn;
}

} // namespace risnoma
