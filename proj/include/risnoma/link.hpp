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
#include "risnoma/ris.hpp"

#include <span>

namespace risnoma {

/// Effective scalars of one realization.
///   a = sqrt(alpha) * sum_m |h_act^m||h_bs^m|         (coherent, real)
///   b = sum_n g_act^n beta^n g_bs^n                    (unaligned)
///   c = sqrt(alpha) * sum_m h_pas^m theta^m h_bs^m     (unaligned)
///   d = sum_n |g_pas^n||g_bs^n|                        (coherent, real)
/// where "act" is the user served by the active partition.
struct LinkTerms {
    double a = 0.0;
    cplx b{};
    cplx c{};
    double d = 0.0;
    double active_noise_gain = 0.0; // sum_m |theta^m h_bs^m|^2
    double alpha = 1.0;
    double w0 = 0.0;       // watt
    double sigma_z2 = 0.0; // watt
};

/// gamma1 belongs to the active-served user (decoded first), gamma2 to the
/// passive-served user (decoded after SIC).
struct SinrPair {
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    double for_user(int user, int active_user) const { return user == active_user ? gamma1 : gamma2; }
};

LinkTerms compute_link_terms(const ChannelRealization& ch, const HybridRisState& ris, const SystemConfig& config);
LinkTerms compute_link_terms(const ChannelRealization& ch, const HybridRisState& ris, int active_user,
                             double w0_watt, double sigma_z2_watt);

SinrPair sinr(const LinkTerms& lt, const SystemConfig& config);
SinrPair sinr(const LinkTerms& lt, double pt_user_watt, double epsilon_sic);

/// Literal evaluation of the received sample
///   y = sqrt(Pt) sum_k (sqrt(alpha) sum_m h_k theta h_bs + sum_n g_k beta g_bs) x_k
///       + sqrt(alpha) sum_m z^m theta^m h_bs^m + w0.
/// Used to cross-check the coefficients carried by LinkTerms.
cplx synthesize_received(const ChannelRealization& ch, const HybridRisState& ris, const SystemConfig& config,
                         cplx x1, cplx x2, std::span<const cplx> amp_noise, cplx awgn);

} // namespace risnoma
