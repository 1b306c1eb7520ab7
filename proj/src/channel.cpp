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

#include "risnoma/channel.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>

namespace risnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void fill(CVector& v, int size, double variance, RandomStream& stream)
{
    v.resize(static_cast<std::size_t>(size));
    for (auto& x : v)
        x = stream.complex_normal(variance);
}

} // namespace

double path_loss_db(double distance_m, double fc_ghz)
{
    if (!(distance_m >= 10.0 && distance_m <= 2000.0))
        throw Error("path_loss_db: distance must lie in [10, 2000] m");
    if (!(fc_ghz >= 2.0 && fc_ghz <= 6.0))
        throw Error("path_loss_db: carrier frequency must lie in [2, 6] GHz");
    return 36.7 * std::log10(distance_m) + 22.7 + 26.0 * std::log10(fc_ghz);
}

double channel_variance(double distance_m, double fc_ghz)
{
    return std::pow(10.0, -path_loss_db(distance_m, fc_ghz) / 10.0);
}

LinkVariances link_variances(const SystemConfig& config)
{
    if (config.variance_override > 0.0)
        return {config.variance_override, config.variance_override, config.variance_override};
    return {channel_variance(config.d_u1_ris_m, config.fc_ghz), channel_variance(config.d_u2_ris_m, config.fc_ghz),
            channel_variance(config.d_ris_bs_m, config.fc_ghz)};
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed)
{
    // splitmix64 is a bijection, so four distinct inputs cannot all map to 0.
    for (std::uint64_t k = 0; k < 4; ++k)
        s_[k] = splitmix64(seed + k * 0x9e3779b97f4a7c15ULL);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(splitmix64(seed ^ splitmix64(stream_id)))
{
}

double RandomStream::uniform()
{
    // 53 random bits, offset by half an ulp so 0 is never returned.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal()
{
    // The ziggurat keeps no state between calls, so the stream alone
    // determines the output.
    return boost::random::normal_distribution<double>{}(engine_);
}

cplx RandomStream::complex_normal(double variance)
{
    const double sd = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {sd * re, sd * im};
}

void draw_realization(int m, int n, const LinkVariances& var, RandomStream& stream, ChannelRealization& out)
{
    fill(out.h1, m, var.user1_ris, stream);
    fill(out.h2, m, var.user2_ris, stream);
    fill(out.g1, n, var.user1_ris, stream);
    fill(out.g2, n, var.user2_ris, stream);
    fill(out.h_bs, m, var.ris_bs, stream);
    fill(out.g_bs, n, var.ris_bs, stream);
}

void draw_realization(const SystemConfig& config, RandomStream& stream, ChannelRealization& out)
{
    draw_realization(config.m_active, config.n_passive, link_variances(config), stream, out);
}

ChannelRealization draw_realization(const SystemConfig& config, RandomStream& stream)
{
    ChannelRealization out;
    draw_realization(config, stream, out);
    return out;
}

} // namespace risnoma
