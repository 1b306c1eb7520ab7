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

#include "risnoma/config.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace risnoma {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// 3GPP UMi street canyon NLOS, single path. Valid for 2-6 GHz, 10-2000 m.
double path_loss_db(double distance_m, double fc_ghz);

// Channel variance sigma^2 = 1/L (linear).
double channel_variance(double distance_m, double fc_ghz);

/// Per-link variances implied by a config.
struct LinkVariances {
    double user1_ris;
    double user2_ris;
    double ris_bs;
};
LinkVariances link_variances(const SystemConfig& config);

/// xoshiro256++ (Blackman and Vigna). Four words of state make it cheap to
/// key a fresh generator per trial, which the Mersenne Twister is not.
class Xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

/// Counter-based random substream keyed by (seed, stream_id). The same key
/// always yields the same sequence, independent of which thread draws it.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Uniform in (0, 1).
    double uniform();
    // Standard normal (Boost ziggurat).
    double normal();
    // Circularly-symmetric complex Gaussian with total variance `variance`.
    cplx complex_normal(double variance);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    Xoshiro256pp engine_;
};

/// One draw of every fading vector. h* have length M, g* length N.
struct ChannelRealization {
    CVector h1, h2, g1, g2, h_bs, g_bs;

    std::size_t active_size() const { return h_bs.size(); }
    std::size_t passive_size() const { return g_bs.size(); }
    const CVector& h(int user) const { return user == 1 ? h1 : h2; }
    const CVector& g(int user) const { return user == 1 ? g1 : g2; }
};

ChannelRealization draw_realization(const SystemConfig& config, RandomStream& stream);
// Reuses the buffers of `out`.
void draw_realization(const SystemConfig& config, RandomStream& stream, ChannelRealization& out);
// Same, with the variances already resolved.
void draw_realization(int m, int n, const LinkVariances& var, RandomStream& stream, ChannelRealization& out);

} // namespace risnoma
