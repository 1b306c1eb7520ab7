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

#include "risnoma/ris.hpp"

#include <algorithm>
#include <cmath>

namespace risnoma {

namespace {

// e^{-j angle(p)} without trig.
cplx conj_phase(cplx p)
{
    const double mag = std::sqrt(std::norm(p));
    if (mag == 0.0)
        return {1.0, 0.0};
    return std::conj(p) / mag;
}

} // namespace

void align_phases(const ChannelRealization& ch, int active_user, int passive_user, HybridRisState& out)
{
    if (active_user == passive_user || (active_user != 1 && active_user != 2) ||
        (passive_user != 1 && passive_user != 2))
        throw Error("align_phases: users must be distinct and in {1, 2}");

    const CVector& h = ch.h(active_user);
    const CVector& g = ch.g(passive_user);
    out.theta.resize(ch.h_bs.size());
    out.beta.resize(ch.g_bs.size());
    for (std::size_t m = 0; m < ch.h_bs.size(); ++m)
        out.theta[m] = conj_phase(h[m] * ch.h_bs[m]);
    for (std::size_t n = 0; n < ch.g_bs.size(); ++n)
        out.beta[n] = conj_phase(g[n] * ch.g_bs[n]);
}

HybridRisState align_phases(const ChannelRealization& ch, int active_user, int passive_user)
{
    HybridRisState out;
    align_phases(ch, active_user, passive_user, out);
    return out;
}

double element_output_power(double pt_ris_watt, int m_active)
{
    if (m_active < 1)
        throw Error("element_output_power: element count must be >= 1");
    return pt_ris_watt / m_active;
}

double pa_consumption(double p_out_watt, double efficiency)
{
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw Error("pa_consumption: efficiency must lie in (0, 1]");
    return p_out_watt / efficiency;
}

double amplifier_gain(double p_o_watt, double pt_user_watt, double mean_sq_channel, double g_max)
{
    if (!(p_o_watt >= 0.0 && pt_user_watt > 0.0 && mean_sq_channel > 0.0 && g_max > 0.0))
        throw Error("amplifier_gain: inputs must be positive");
    return std::min(std::sqrt(p_o_watt / (pt_user_watt * mean_sq_channel)), g_max);
}

double clamp_alpha(double alpha)
{
    return std::clamp(alpha, kAlphaMin, kAlphaMax);
}

double alpha_from_power(const SystemConfig& config)
{
    // The budget pays for PA consumption, so output = efficiency * share.
    const double p_o = config.pa_efficiency * element_output_power(config.pt_ris_watt(), config.m_active);
    const LinkVariances var = link_variances(config);
    const double sigma2 = config.active_user == 1 ? var.user1_ris : var.user2_ris;
    const double g_max = std::pow(10.0, config.g_max_db / 20.0);
    const double gain = amplifier_gain(p_o, config.pt_user_watt(), sigma2, g_max);
    return clamp_alpha(gain * gain);
}

double resolve_alpha(const SystemConfig& config)
{
    switch (config.alpha_mode) {
    case AlphaMode::Fixed: return clamp_alpha(config.alpha_linear);
    case AlphaMode::FromPower: return alpha_from_power(config);
    case AlphaMode::Optimized: break;
    }
    throw Error("resolve_alpha: optimized alpha must be resolved by the gain optimizer");
}

} // namespace risnoma
