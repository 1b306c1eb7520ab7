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

#include <string_view>

namespace risnoma {

enum class SearchMethod { GoldenSection, SimulatedAnnealing };
enum class Evaluator { Analytic, MonteCarlo };
enum class FairnessMode { Balanced, FallbackToUser1, FallbackToUser2 };

std::string_view to_string(FairnessMode mode);

struct OptimizerSettings {
    double lo_dbm = -70.0;
    double hi_dbm = -10.0;
    double tolerance_db = 0.1;
    SearchMethod method = SearchMethod::GoldenSection;
    Evaluator evaluator = Evaluator::Analytic;
    // A user whose outage stays at or above this everywhere is unservable.
    // Points where both users sit at or above it are infeasible.
    double ceiling = 0.1;
    // Spacing of the scan that decides the fairness mode and seeds the
    // golden-section bracket.
    double grid_step_db = 1.0;
    double sa_initial_temperature = 1.0;
    double sa_cooling = 0.97;
    int sa_iterations = 300;
    unsigned workers = 0; // Monte Carlo evaluator only
};

struct OptimizationOutcome {
    double pt_ris_dbm = 0.0;
    double alpha = 1.0;
    double op1 = 0.0;
    double op2 = 0.0;
    double gap = 0.0;
    double max_op = 0.0; // the common outage bound achieved at the optimum
    FairnessMode mode = FairnessMode::Balanced;
    int evaluations = 0;
};

/// Both users' outage with alpha derived from a RIS budget of `pt_ris_dbm`.
OutagePair evaluate_at_power(double pt_ris_dbm, const SystemConfig& config, const OptimizerSettings& settings = {});

/// |OP1 - OP2| at RIS budget `pt_ris_dbm`.
double objective_gap(double pt_ris_dbm, const SystemConfig& config, const OptimizerSettings& settings = {});

/// Chooses the RIS power budget that equalizes the users' outage, or
/// serves the only servable user when the other cannot reach the ceiling.
OptimizationOutcome optimize(const SystemConfig& config, const OptimizerSettings& settings = {});

} // namespace risnoma
