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

#include "risnoma/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace risnoma {

namespace {

std::string join_problems(const std::vector<std::string>& problems)
{
    std::string out = "invalid configuration:";
    for (const auto& p : problems)
        out += "\n  - " + p;
    return out;
}

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x))
        throw Error(std::string(what) + ": input must be finite");
}

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    // std::from_chars for double is available in libstdc++ 11.
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError({std::string(key) + ": expected a number, got '" + std::string(text) + "'"});
    return value;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text)
{
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc{} && ptr == end)
        return value;
    // Allow 1e6-style counts when they are exact integers.
    const double d = parse_double(key, text);
    if (d < 0 || d != std::floor(d) || d > 1.8e19)
        throw ConfigError({std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'"});
    return static_cast<std::uint64_t>(d);
}

int parse_int(std::string_view key, std::string_view text)
{
    const double d = parse_double(key, text);
    if (d != std::floor(d) || std::abs(d) > 2e9)
        throw ConfigError({std::string(key) + ": expected an integer, got '" + std::string(text) + "'"});
    return static_cast<int>(d);
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ConfigError({std::string(key) + ": expected a boolean, got '" + std::string(text) + "'"});
}

struct Field {
    const char* name;
    std::function<std::string(const SystemConfig&)> get;
    std::function<void(SystemConfig&, std::string_view, std::string_view)> set;
};

#define RISNOMA_DOUBLE_FIELD(member)                                                     \
    Field{#member, [](const SystemConfig& c) { return format_double(c.member); },       \
          [](SystemConfig& c, std::string_view k, std::string_view v) { c.member = parse_double(k, v); }}

#define RISNOMA_INT_FIELD(member)                                                        \
    Field{#member, [](const SystemConfig& c) { return std::to_string(c.member); },      \
          [](SystemConfig& c, std::string_view k, std::string_view v) { c.member = parse_int(k, v); }}

#define RISNOMA_U64_FIELD(member)                                                        \
    Field{#member, [](const SystemConfig& c) { return std::to_string(c.member); },      \
          [](SystemConfig& c, std::string_view k, std::string_view v) { c.member = parse_u64(k, v); }}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        RISNOMA_DOUBLE_FIELD(pt_user_dbm),
        RISNOMA_DOUBLE_FIELD(pt_ris_dbm),
        Field{"alpha_mode", [](const SystemConfig& c) { return std::string(to_string(c.alpha_mode)); },
              [](SystemConfig& c, std::string_view, std::string_view v) { c.alpha_mode = alpha_mode_from_string(v); }},
        RISNOMA_DOUBLE_FIELD(alpha_linear),
        RISNOMA_INT_FIELD(m_active),
        RISNOMA_INT_FIELD(n_passive),
        RISNOMA_DOUBLE_FIELD(rate_threshold_bps_hz),
        RISNOMA_DOUBLE_FIELD(epsilon_sic),
        RISNOMA_DOUBLE_FIELD(w0_dbm),
        RISNOMA_DOUBLE_FIELD(namp_dbm),
        RISNOMA_DOUBLE_FIELD(pa_efficiency),
        RISNOMA_DOUBLE_FIELD(g_max_db),
        RISNOMA_DOUBLE_FIELD(fc_ghz),
        RISNOMA_DOUBLE_FIELD(d_u1_ris_m),
        RISNOMA_DOUBLE_FIELD(d_u2_ris_m),
        RISNOMA_DOUBLE_FIELD(d_ris_bs_m),
        RISNOMA_U64_FIELD(mc_trials),
        RISNOMA_U64_FIELD(seed),
        RISNOMA_DOUBLE_FIELD(quadrature.omega_max),
        RISNOMA_DOUBLE_FIELD(quadrature.tolerance),
        RISNOMA_DOUBLE_FIELD(quadrature.max_error),
        RISNOMA_INT_FIELD(active_user),
        RISNOMA_DOUBLE_FIELD(variance_override),
        Field{"joint_sic_outage", [](const SystemConfig& c) { return std::string(c.joint_sic_outage ? "true" : "false"); },
              [](SystemConfig& c, std::string_view k, std::string_view v) { c.joint_sic_outage = parse_bool(k, v); }},
        RISNOMA_DOUBLE_FIELD(d_u1_bs_m),
        RISNOMA_DOUBLE_FIELD(d_u2_bs_m),
        RISNOMA_DOUBLE_FIELD(h_u1_m),
        RISNOMA_DOUBLE_FIELD(h_u2_m),
        RISNOMA_DOUBLE_FIELD(h_ris_m),
        RISNOMA_DOUBLE_FIELD(h_bs_m),
    };
    return table;
}

#undef RISNOMA_DOUBLE_FIELD
#undef RISNOMA_INT_FIELD
#undef RISNOMA_U64_FIELD

const Field& find_field(std::string_view key)
{
    for (const auto& f : fields())
        if (key == f.name)
            return f;
    throw ConfigError({"unknown key '" + std::string(key) + "'"});
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems))
{
}

double dbm_to_watt(double dbm)
{
    require_finite(dbm, "dbm_to_watt");
    return std::pow(10.0, dbm / 10.0) * 1e-3;
}

double watt_to_dbm(double watt)
{
    require_finite(watt, "watt_to_dbm");
    if (watt <= 0.0)
        throw Error("watt_to_dbm: power must be positive");
    return 10.0 * std::log10(watt * 1e3);
}

double db_to_linear(double db)
{
    require_finite(db, "db_to_linear");
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double ratio)
{
    require_finite(ratio, "linear_to_db");
    if (ratio <= 0.0)
        throw Error("linear_to_db: ratio must be positive");
    return 10.0 * std::log10(ratio);
}

std::string_view to_string(AlphaMode mode)
{
    switch (mode) {
    case AlphaMode::Fixed: return "fixed";
    case AlphaMode::FromPower: return "from_power";
    case AlphaMode::Optimized: return "optimized";
    }
    return "fixed";
}

AlphaMode alpha_mode_from_string(std::string_view text)
{
    if (text == "fixed")
        return AlphaMode::Fixed;
    if (text == "from_power")
        return AlphaMode::FromPower;
    if (text == "optimized")
        return AlphaMode::Optimized;
    throw ConfigError({"alpha_mode: expected fixed|from_power|optimized, got '" + std::string(text) + "'"});
}

double SystemConfig::sinr_threshold() const
{
    return std::exp2(rate_threshold_bps_hz) - 1.0;
}

ValidatedConfig validate(const SystemConfig& config)
{
    ValidatedConfig out{config, {}};
    std::vector<std::string> problems;
    auto check = [&](bool ok, std::string what) {
        if (!ok)
            problems.push_back(std::move(what));
    };

    for (const auto& f : fields()) {
        const std::string text = f.get(config);
        if (text == "nan" || text == "-nan" || text == "inf" || text == "-inf")
            problems.push_back(std::string(f.name) + " must be finite");
    }

    check(config.m_active >= 1, "m_active must be >= 1");
    check(config.n_passive >= 1, "n_passive must be >= 1");
    check(config.mc_trials >= 1, "mc_trials must be >= 1");
    check(config.epsilon_sic >= 0.0 && config.epsilon_sic <= 1.0, "epsilon_sic must lie in [0, 1]");
    check(config.pa_efficiency > 0.0 && config.pa_efficiency <= 1.0, "pa_efficiency must lie in (0, 1]");
    check(config.fc_ghz >= 2.0 && config.fc_ghz <= 6.0, "fc_ghz must lie in [2, 6]");
    for (auto [name, d] : {std::pair{"d_u1_ris_m", config.d_u1_ris_m}, std::pair{"d_u2_ris_m", config.d_u2_ris_m},
                           std::pair{"d_ris_bs_m", config.d_ris_bs_m}})
        check(d >= 10.0 && d <= 2000.0, std::string(name) + " must lie in [10, 2000]");
    check(config.rate_threshold_bps_hz >= 0.0, "rate_threshold_bps_hz must be >= 0");
    check(config.active_user == 1 || config.active_user == 2, "active_user must be 1 or 2");
    check(config.variance_override >= 0.0, "variance_override must be >= 0");
    check(config.g_max_db >= 0.0, "g_max_db must be >= 0");
    check(config.quadrature.tolerance > 0.0, "quadrature.tolerance must be > 0");
    check(config.quadrature.max_error > 0.0, "quadrature.max_error must be > 0");
    check(config.quadrature.omega_max > 0.0, "quadrature.omega_max must be > 0");
    check(std::isfinite(config.alpha_linear) && config.alpha_linear > 0.0, "alpha_linear must be positive");

    if (!problems.empty())
        throw ConfigError(std::move(problems));

    if (config.alpha_linear < kAlphaMin || config.alpha_linear > kAlphaMax) {
        out.config.alpha_linear = std::clamp(config.alpha_linear, kAlphaMin, kAlphaMax);
        out.warnings.push_back("alpha_linear " + format_double(config.alpha_linear) + " clamped to " +
                               format_double(out.config.alpha_linear));
    }
    return out;
}

void set_field(SystemConfig& config, std::string_view key, std::string_view value)
{
    find_field(key).set(config, key, trim(value));
}

std::string get_field(const SystemConfig& config, std::string_view key)
{
    return find_field(key).get(config);
}

const std::vector<std::string>& field_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& f : fields())
            n.emplace_back(f.name);
        return n;
    }();
    return names;
}

SystemConfig parse_config(std::string_view text, SystemConfig base)
{
    std::vector<std::string> problems;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        try {
            set_field(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            for (const auto& p : e.problems())
                problems.push_back("line " + std::to_string(line_no) + ": " + p);
        }
    }
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return base;
}

SystemConfig load_config(const std::string& path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string to_config_text(const SystemConfig& config)
{
    std::string out;
    for (const auto& f : fields())
        out += std::string(f.name) + " = " + f.get(config) + "\n";
    return out;
}

std::map<std::string, std::string> to_key_values(const SystemConfig& config)
{
    std::map<std::string, std::string> kv;
    for (const auto& f : fields())
        kv.emplace(f.name, f.get(config));
    return kv;
}

std::string config_digest(const SystemConfig& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_config_text(config)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace risnoma
