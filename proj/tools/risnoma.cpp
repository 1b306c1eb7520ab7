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

// Command-line front end: validate, point, sweep, preset, optimize.

#include "risnoma/analytic.hpp"
#include "risnoma/experiment.hpp"
#include "risnoma/optimizer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace risnoma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned workers = 0;
};

struct OutputOptions {
    std::string out;
    std::string method = "both";
    bool allow_noisy = false;
    bool timing = false;
};

void add_common(CLI::App* app, CommonOptions& o)
{
    app->add_option("-c,--config", o.config_path, "key = value config file");
    app->add_option("-s,--set", o.sets, "override a field, KEY=VALUE (repeatable)");
    app->add_option("--seed", o.seed, "master RNG seed");
    app->add_option("--trials", o.trials, "Monte Carlo trials per point");
    app->add_option("-j,--workers", o.workers, "worker threads (0 = hardware concurrency)");
}

void add_output(CLI::App* app, OutputOptions& o)
{
    app->add_option("-o,--out", o.out, "CSV output path (default stdout)");
    app->add_option("-m,--method", o.method, "mc | analytic | both")->check(CLI::IsMember({"mc", "analytic", "both"}));
    app->add_flag("--allow-noisy", o.allow_noisy, "keep Monte Carlo points with std_err above 20% of the estimate");
    app->add_flag("--timing", o.timing, "fill the ms column with wall time");
}

SystemConfig build_config(const CommonOptions& o)
{
    SystemConfig c = o.config_path.empty() ? SystemConfig{} : load_config(o.config_path);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError({"--set expects KEY=VALUE, got '" + kv + "'"});
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        set_field(c, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    if (o.seed)
        c.seed = *o.seed;
    if (o.trials)
        c.mc_trials = *o.trials;
    return c;
}

RunOptions run_options(const CommonOptions& common, const OutputOptions& out)
{
    RunOptions r;
    r.methods = method_set_from_string(out.method);
    r.allow_noisy = out.allow_noisy;
    r.timing = out.timing;
    r.workers = common.workers;
    return r;
}

void emit(const OutputOptions& out, const SweepSpec& spec, const SystemConfig& base, const SweepResult& result)
{
    if (out.out.empty())
        write_csv(std::cout, spec, base, result);
    else
        write_csv(out.out, spec, base, result);
}

void print_warnings(const SystemConfig& c)
{
    for (const auto& w : validate(c).warnings)
        std::cerr << "warning: " << w << "\n";
}

int report_rows(const SweepResult& result)
{
    for (const auto& r : result.rows)
        if (!r.ok())
            std::cerr << "error: " << r.sweep_param << "=" << r.sweep_value << " user " << r.user << " "
                      << to_string(r.method) << ": " << r.error << "\n";
    if (!result.abort_message.empty())
        std::cerr << "error: sweep aborted: " << result.abort_message << "\n";
    return result.ok() ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"risnoma: outage simulator for hybrid-RIS uplink NOMA"};
    app.require_subcommand(1);

    CommonOptions common;
    OutputOptions output;

    auto* cmd_validate = app.add_subcommand("validate", "check a configuration and print it in canonical form");
    add_common(cmd_validate, common);

    auto* cmd_point = app.add_subcommand("point", "outage of both users at one configuration");
    add_common(cmd_point, common);
    add_output(cmd_point, output);

    std::string sweep_param;
    std::string sweep_values;
    auto* cmd_sweep = app.add_subcommand("sweep", "sweep one parameter");
    add_common(cmd_sweep, common);
    add_output(cmd_sweep, output);
    cmd_sweep->add_option("-p,--param", sweep_param, "field to sweep (m_n sets both RIS sizes)")->required();
    cmd_sweep->add_option("-v,--values", sweep_values, "a,b,c | start:stop:step | db:start:stop:step")->required();

    std::string preset_name;
    bool list_presets = false;
    auto* cmd_preset = app.add_subcommand("preset", "run a named sweep");
    add_common(cmd_preset, common);
    add_output(cmd_preset, output);
    cmd_preset->add_option("name", preset_name, "preset name");
    cmd_preset->add_flag("-l,--list", list_presets, "list presets and exit");

    std::string search = "golden";
    std::string evaluator = "analytic";
    auto* cmd_opt = app.add_subcommand("optimize", "choose the RIS power budget that balances user outage");
    add_common(cmd_opt, common);
    cmd_opt->add_option("--search", search, "golden | anneal")->check(CLI::IsMember({"golden", "anneal"}));
    cmd_opt->add_option("--evaluator", evaluator, "analytic | mc")->check(CLI::IsMember({"analytic", "mc"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_preset->parsed() && list_presets) {
            for (const auto& name : preset_names())
                std::cout << name << "  " << preset(name).description << "\n";
            return kExitOk;
        }

        const SystemConfig base = build_config(common);
        print_warnings(base);

        if (cmd_validate->parsed()) {
            std::cout << to_config_text(validate(base).config);
            std::cout << "# digest: " << config_digest(validate(base).config) << "\n";
            return kExitOk;
        }

        if (cmd_point->parsed()) {
            SweepSpec spec;
            spec.name = "point";
            spec.parameter = "none";
            spec.methods = method_set_from_string(output.method);
            SweepResult result;
            result.rows = run_point(base, run_options(common, output), "none", 0.0);
            emit(output, spec, base, result);
            return report_rows(result);
        }

        if (cmd_sweep->parsed() || cmd_preset->parsed()) {
            SweepSpec spec;
            if (cmd_preset->parsed()) {
                if (preset_name.empty())
                    throw ConfigError({"preset: a name is required (see --list)"});
                spec = preset(preset_name);
                if (common.trials)
                    spec.trials = *common.trials;
            } else {
                spec.name = "sweep";
                spec.parameter = sweep_param;
                spec.values = parse_sweep_values(sweep_values);
            }
            spec.methods = method_set_from_string(output.method);
            const SweepResult result = run_sweep(spec, base, run_options(common, output));
            emit(output, spec, base, result);
            return report_rows(result);
        }

        if (cmd_opt->parsed()) {
            OptimizerSettings s;
            s.method = search == "golden" ? SearchMethod::GoldenSection : SearchMethod::SimulatedAnnealing;
            s.evaluator = evaluator == "analytic" ? Evaluator::Analytic : Evaluator::MonteCarlo;
            s.workers = common.workers;
            const OptimizationOutcome o = optimize(validate(base).config, s);
            std::printf("pt_ris_dbm = %.6f\nalpha = %.6g\nop1 = %.6g\nop2 = %.6g\ngap = %.6g\nmax_op = %.6g\n"
                        "mode = %s\nevaluations = %d\n",
                        o.pt_ris_dbm, o.alpha, o.op1, o.op2, o.gap, o.max_op, std::string(to_string(o.mode)).c_str(),
                        o.evaluations);
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        for (const auto& p : e.problems())
            std::cerr << "config error: " << p << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
