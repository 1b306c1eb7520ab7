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

namespace risnoma {

/// Phase configuration of both partitions plus the active power gain.
struct HybridRisState {
    CVector theta; // active part, unit modulus, length M
    CVector beta;  // passive part, unit modulus, length N
    double alpha = 1.0;
};

/// Aligns the active part coherently for `active_user` and the passive part
/// for `passive_user`. An exactly-zero channel product gets phase 0.
HybridRisState align_phases(const ChannelRealization& ch, int active_user, int passive_user);
// Buffer-reusing variant; leaves out.alpha untouched.
void align_phases(const ChannelRealization& ch, int active_user, int passive_user, HybridRisState& out);

// Output power available to each active element.
double element_output_power(double pt_ris_watt, int m_active);

// PA consumption for a given output power and efficiency.
double pa_consumption(double p_out_watt, double efficiency);

/// Amplitude gain G = min(sqrt(p_o / (pt_user * mean_sq_channel)), g_max).
/// The power amplification factor is alpha = G^2.
double amplifier_gain(double p_o_watt, double pt_user_watt, double mean_sq_channel, double g_max);

/// alpha implied by the RIS power budget of `config` (clamped to [1, 1000]
/// and to the amplifier cap). Uses the per-element mean channel power of
/// the active-served user.
double alpha_from_power(const SystemConfig& config);

/// alpha for Fixed or FromPower configs. Optimized configs must be
/// resolved through the gain optimizer first; they throw here.
double resolve_alpha(const SystemConfig& config);

double clamp_alpha(double alpha);

} // namespace risnoma
