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

#include "risnoma/experiment.hpp"

#include "risnoma/analytic.hpp"
#include "risnoma/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>

namespace risnoma {

namespace {

std::string format_value(double x, int digits = 10)
{
    if (std::isnan(x))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

double to_number(const std::string& s)
{
    SystemConfig scratch;
    set_field(scratch, "alpha_linear", s); // reuses the strict number parser
    return scratch.alpha_linear;
}

std::string param_label(const SweepSpec& spec, const SweepVariant& variant)
{
    return variant.label.empty() ? spec.parameter : spec.parameter + "[" + variant.label + "]";
}

SweepVariant variant(std::string label, std::vector<std::pair<std::string, std::string>> overrides)
{
    return {std::move(label), std::move(overrides)};
}

std::vector<double> range(double start, double stop, double step)
{
    std::vector<double> v;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i)
        v.push_back(start + static_cast<double>(i) * step);
    return v;
}

ResultRow base_row(const std::string& param, double value, int user, Method method, const SystemConfig& c)
{
    ResultRow r;
    r.sweep_param = param;
    r.sweep_value = value;
    r.user = user;
    r.method = method;
    r.config_digest = config_digest(c);
    r.seed = c.seed;
    return r;
}

std::vector<Method> methods_of(MethodSet set)
{
    switch (set) {
    case MethodSet::MonteCarlo: return {Method::MonteCarlo};
    case MethodSet::Analytic: return {Method::Analytic};
    case MethodSet::Both: return {Method::MonteCarlo, Method::Analytic};
    }
    return {};
}

} // namespace

MethodSet method_set_from_string(std::string_view text)
{
    if (text == "mc")
        return MethodSet::MonteCarlo;
    if (text == "analytic")
        return MethodSet::Analytic;
    if (text == "both")
        return MethodSet::Both;
    throw ConfigError({"method: expected mc|analytic|both, got '" + std::string(text) + "'"});
}

std::string_view to_string(MethodSet methods)
{
    switch (methods) {
    case MethodSet::MonteCarlo: return "mc";
    case MethodSet::Analytic: return "analytic";
    case MethodSet::Both: return "both";
    }
    return "both";
}

std::vector<double> parse_sweep_values(std::string_view text)
{
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        bool db = false;
        if (!parts.empty() && parts.front() == "db") {
            db = true;
            parts.erase(parts.begin());
        }
        if (parts.size() != 3)
            throw ConfigError({"sweep values: expected start:stop:step, got '" + std::string(text) + "'"});
        const double start = to_number(parts[0]);
        const double stop = to_number(parts[1]);
        const double step = to_number(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw ConfigError({"sweep values: need step > 0 and stop >= start"});
        values = range(start, stop, step);
        if (db)
            for (auto& v : values)
                v = db_to_linear(v);
    } else {
        for (const auto& part : split(text, ','))
            values.push_back(to_number(part));
    }
    return values;
}

void validate_sweep(const SweepSpec& spec, const SystemConfig& base)
{
    std::vector<std::string> problems;
    const auto& names = field_names();
    auto known = [&](const std::string& key) { return std::find(names.begin(), names.end(), key) != names.end(); };

    if (spec.values.size() < 2)
        problems.emplace_back("sweep needs at least 2 points");
    if (spec.parameter != "m_n" && !known(spec.parameter))
        problems.push_back("unknown sweep parameter '" + spec.parameter + "'");
    if (spec.variants.empty())
        problems.emplace_back("sweep needs at least one variant");
    for (const auto& v : spec.variants)
        for (const auto& [key, value] : v.overrides)
            if (!known(key))
                problems.push_back("variant '" + v.label + "': unknown key '" + key + "'");
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    validate(base);
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return names;
}

SweepSpec preset(std::string_view name)
{
    const std::pair<std::string, std::string> fixed_mode{"alpha_mode", "fixed"};
    const std::pair<std::string, std::string> fixed_alpha{"alpha_linear", "8.5"};
    const std::pair<std::string, std::string> optimized{"alpha_mode", "optimized"};
    auto size = [](int s) {
        return std::vector<std::pair<std::string, std::string>>{{"m_active", std::to_string(s)},
                                                                 {"n_passive", std::to_string(s)}};
    };
    auto with = [](std::vector<std::pair<std::string, std::string>> a,
                   std::initializer_list<std::pair<std::string, std::string>> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    SweepSpec s;
    s.name = std::string(name);
    s.variants.clear();
    if (name == "fig3") {
        s.parameter = "pt_ris_dbm";
        s.values = range(-70.0, -10.0, 2.0);
        s.variants = {variant("", {{"alpha_mode", "from_power"}})};
        s.trials = 20000;
        s.description = "RIS power budget vs outage at the default parameters";
    } else if (name == "fig4") {
        s.parameter = "m_n";
        s.values = range(64.0, 1024.0, 64.0);
        s.variants = {variant("fixed", {fixed_mode, fixed_alpha}), variant("optimized", {optimized})};
        s.trials = 10000;
        s.description = "RIS size (M = N) vs outage, fixed and optimized alpha";
    } else if (name == "fig5") {
        s.parameter = "pt_user_dbm";
        s.values = range(0.0, 23.0, 1.0);
        for (int m : {128, 512}) {
            const std::string tag = "M=N=" + std::to_string(m);
            s.variants.push_back(variant(tag + ",fixed", with(size(m), {fixed_mode, fixed_alpha})));
            s.variants.push_back(variant(tag + ",optimized", with(size(m), {optimized})));
        }
        s.trials = 5000;
        s.description = "user transmit power vs outage for two RIS sizes";
    } else if (name == "fig6") {
        s.parameter = "rate_threshold_bps_hz";
        s.values = range(0.0, 12.0, 0.5);
        s.variants = {variant("fixed", {fixed_mode, fixed_alpha}), variant("optimized", {optimized})};
        s.trials = 5000;
        s.description = "QoS rate threshold vs outage, fixed and optimized alpha";
    } else if (name == "fig7") {
        s.parameter = "pt_ris_dbm";
        s.values = range(-70.0, -10.0, 2.0);
        for (const char* eps : {"0", "0.001", "0.01", "0.1"})
            s.variants.push_back(
                variant(std::string("eps=") + eps, {{"alpha_mode", "from_power"}, {"epsilon_sic", eps}}));
        s.trials = 5000;
        s.description = "RIS power budget vs outage under imperfect SIC";
    } else if (name == "fig8") {
        s.parameter = "epsilon_sic";
        s.values = {0.0};
        for (double db = -40.0; db <= 0.0 + 1e-9; db += 5.0)
            s.values.push_back(db_to_linear(db));
        for (int m : {128, 512}) {
            const std::string tag = "M=N=" + std::to_string(m);
            s.variants.push_back(variant(tag + ",fixed", with(size(m), {fixed_mode, fixed_alpha})));
            s.variants.push_back(variant(tag + ",optimized", with(size(m), {optimized})));
        }
        s.trials = 5000;
        s.description = "residual SIC fraction vs outage for two RIS sizes";
    } else {
        throw ConfigError({"unknown preset '" + std::string(name) + "'"});
    }
    return s;
}

SystemConfig sweep_point_config(const SweepSpec& spec, const SweepVariant& variant, double value,
                                const SystemConfig& base)
{
    SystemConfig c = base;
    if (spec.trials > 0)
        c.mc_trials = spec.trials;
    for (const auto& [key, text] : variant.overrides)
        set_field(c, key, text);
    const std::string text = format_value(value, 17);
    if (spec.parameter == "m_n") {
        set_field(c, "m_active", text);
        set_field(c, "n_passive", text);
    } else {
        set_field(c, spec.parameter, text);
    }
    return c;
}

std::vector<ResultRow> run_point(const SystemConfig& config, const RunOptions& options,
                                 const std::string& sweep_param, double sweep_value)
{
    using clock = std::chrono::steady_clock;
    std::vector<ResultRow> rows;
    SystemConfig c = validate(config).config;
    std::string mode(to_string(c.alpha_mode));
    std::string optimizer_error;
    double optimizer_ms = 0.0;

    if (c.alpha_mode == AlphaMode::Optimized) {
        const auto t0 = clock::now();
        try {
            const OptimizationOutcome o = optimize(c, options.optimizer);
            c.alpha_mode = AlphaMode::FromPower;
            c.pt_ris_dbm = o.pt_ris_dbm;
            mode = to_string(o.mode);
        } catch (const std::exception& e) {
            optimizer_error = e.what();
        }
        optimizer_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }

    for (Method method : methods_of(options.methods)) {
        const auto t0 = clock::now();
        OutagePair pair;
        std::string error = optimizer_error;
        if (error.empty()) {
            try {
                pair = method == Method::MonteCarlo ? estimate_outage_pair(c, options.workers)
                                                    : analytic_outage_pair(c);
            } catch (const std::exception& e) {
                error = e.what();
            }
        }
        const double ms = optimizer_ms + std::chrono::duration<double, std::milli>(clock::now() - t0).count();

        for (int user : {1, 2}) {
            ResultRow r = base_row(sweep_param, sweep_value, user, method, c);
            r.mode = mode;
            r.ms = options.timing ? ms : 0.0;
            if (!error.empty()) {
                r.error = error;
                r.op = std::numeric_limits<double>::quiet_NaN();
                r.err = std::numeric_limits<double>::quiet_NaN();
                r.mode = "error";
                rows.push_back(std::move(r));
                continue;
            }
            const OutageResult& res = pair.for_user(user);
            r.op = res.op;
            r.err = res.err;
            r.alpha = res.alpha;
            if (method == Method::MonteCarlo) {
                if (res.events == 0) {
                    r.mode += "|floor";
                } else if (res.err > 0.2 * res.op) {
                    r.mode += "|noisy";
                    if (!options.allow_noisy)
                        r.op = std::numeric_limits<double>::quiet_NaN();
                }
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

bool SweepResult::ok() const
{
    return abort_message.empty() && std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.ok(); });
}

SweepResult run_sweep(const SweepSpec& spec, const SystemConfig& base, const RunOptions& options)
{
    validate_sweep(spec, base);

    struct Point {
        std::string label;
        double value;
        SystemConfig config;
    };
    std::vector<Point> points;
    SweepResult result;
    for (const auto& v : spec.variants) {
        for (double value : spec.values) {
            try {
                SystemConfig c = sweep_point_config(spec, v, value, base);
                validate(c);
                points.push_back({param_label(spec, v), value, std::move(c)});
            } catch (const std::exception& e) {
                result.abort_message = param_label(spec, v) + "=" + format_value(value) + ": " + e.what();
                break;
            }
        }
        if (!result.abort_message.empty())
            break;
    }

    const unsigned workers = resolve_workers(options.workers);
    RunOptions inner = options;
    if (workers > 1)
        inner.workers = 1; // parallelism lives at the point level
    inner.optimizer.workers = inner.workers;

    std::vector<std::vector<ResultRow>> per_point(points.size());
    parallel_for(points.size(), workers, [&](std::size_t i) {
        per_point[i] = run_point(points[i].config, inner, points[i].label, points[i].value);
    });
    for (auto& rows : per_point)
        for (auto& r : rows)
            result.rows.push_back(std::move(r));
    return result;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const SystemConfig& base, const SweepResult& result)
{
    nlohmann::ordered_json header;
    header["sweep"] = spec.name.empty() ? spec.parameter : spec.name;
    header["parameter"] = spec.parameter;
    header["methods"] = std::string(to_string(spec.methods));
    header["seed"] = base.seed;
    header["trials"] = spec.trials > 0 ? spec.trials : base.mc_trials;
    header["values"] = spec.values;
    nlohmann::ordered_json variants = nlohmann::ordered_json::array();
    for (const auto& v : spec.variants) {
        nlohmann::ordered_json jv;
        jv["label"] = v.label;
        nlohmann::ordered_json ov = nlohmann::ordered_json::object();
        for (const auto& [k, val] : v.overrides)
            ov[k] = val;
        jv["overrides"] = ov;
        variants.push_back(jv);
    }
    header["variants"] = variants;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& key : field_names())
        cfg[key] = get_field(base, key);
    header["config"] = cfg;
    nlohmann::ordered_json digests = nlohmann::ordered_json::array();
    for (const auto& r : result.rows)
        digests.push_back(r.config_digest);
    header["row_digests"] = digests;

    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

    out << "# generated: " << stamp << "\n";
    out << "# header: " << header.dump() << "\n";
    out << kCsvColumns << "\n";
    for (const auto& r : result.rows) {
        out << r.sweep_param << ',' << format_value(r.sweep_value) << ',' << r.user << ',' << to_string(r.method)
            << ',' << format_value(r.op) << ',' << format_value(r.err) << ',' << format_value(r.alpha) << ','
            << r.mode << ',' << format_value(r.ms, 6) << "\n";
    }
    for (const auto& r : result.rows)
        if (!r.ok())
            out << "# row error: " << r.sweep_param << '=' << format_value(r.sweep_value) << " user " << r.user
                << ' ' << to_string(r.method) << ": " << r.error << "\n";
    if (!result.abort_message.empty())
        out << "# error: sweep aborted: " << result.abort_message << "\n";
}

void write_csv(const std::string& path, const SweepSpec& spec, const SystemConfig& base, const SweepResult& result)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    write_csv(out, spec, base, result);
    if (!out)
        throw Error("failed writing '" + path + "'");
}

} // namespace risnoma
