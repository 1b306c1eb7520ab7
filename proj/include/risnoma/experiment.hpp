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
#include "risnoma/monte_carlo.hpp"
#include "risnoma/optimizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace risnoma {

enum class MethodSet { MonteCarlo, Analytic, Both };

MethodSet method_set_from_string(std::string_view text);
std::string_view to_string(MethodSet methods);

/// Fixed overrides applied on top of the base config for one curve of a
/// sweep (e.g. RIS size 128 with optimized alpha).
struct SweepVariant {
    std::string label;
    std::vector<std::pair<std::string, std::string>> overrides;
};

/// One-dimensional sweep of a config key, repeated per variant. The key
/// `m_n` sets m_active and n_passive together.
struct SweepSpec {
    std::string name;
    std::string parameter;
    std::vector<double> values;
    MethodSet methods = MethodSet::Both;
    std::vector<SweepVariant> variants{SweepVariant{}};
    std::uint64_t trials = 0; // 0 keeps the base config's mc_trials
    std::string description;
};

/// Parses `a,b,c`, `start:stop:step` or `db:start:stop:step` (values
/// converted from dB to linear).
std::vector<double> parse_sweep_values(std::string_view text);

/// Checks the spec against a base config; throws ConfigError.
void validate_sweep(const SweepSpec& spec, const SystemConfig& base);

/// Built-in sweeps behind the published figures: fig3 ... fig8.
SweepSpec preset(std::string_view name);
const std::vector<std::string>& preset_names();

struct ResultRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    int user = 1;
    Method method = Method::MonteCarlo;
    double op = 0.0;
    double err = 0.0;
    double alpha = 1.0;
    std::string mode;
    double ms = 0.0;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string error; // empty on success

    bool ok() const { return error.empty(); }
};

struct RunOptions {
    MethodSet methods = MethodSet::Both;
    // Keep Monte Carlo points whose std_err exceeds 20% of the estimate.
    bool allow_noisy = false;
    // Record wall time in the ms column (makes output non-reproducible).
    bool timing = false;
    unsigned workers = 0;
    OptimizerSettings optimizer{};
};

/// Both users under every requested method at one config. Evaluator
/// failures are stored in the rows; the call itself does not throw for them.
std::vector<ResultRow> run_point(const SystemConfig& config, const RunOptions& options = {},
                                 const std::string& sweep_param = "", double sweep_value = 0.0);

/// Config of one sweep point.
SystemConfig sweep_point_config(const SweepSpec& spec, const SweepVariant& variant, double value,
                                const SystemConfig& base);

struct SweepResult {
    std::vector<ResultRow> rows;
    std::string abort_message; // set if the sweep stopped early

    bool ok() const;
};

SweepResult run_sweep(const SweepSpec& spec, const SystemConfig& base, const RunOptions& options = {});

/// CSV with a commented JSON header. Writes the trailer for aborted sweeps.
void write_csv(std::ostream& out, const SweepSpec& spec, const SystemConfig& base, const SweepResult& result);
void write_csv(const std::string& path, const SweepSpec& spec, const SystemConfig& base, const SweepResult& result);

inline constexpr const char* kCsvColumns = "sweep_param,sweep_value,user,method,op,err,alpha,mode,ms";

} // namespace risnoma
