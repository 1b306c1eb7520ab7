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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace risnoma {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised by validate() and the config parser. Carries every violated rule.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

  private:
    std::vector<std::string> problems_;
};

// ---- unit conversions ---------------------------------------------------

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double db_to_linear(double db);
double linear_to_db(double ratio);

// ---- configuration ------------------------------------------------------

enum class AlphaMode { Fixed, FromPower, Optimized };

std::string_view to_string(AlphaMode mode);
AlphaMode alpha_mode_from_string(std::string_view text);

// Power amplification factor bounds (0 dB .. 30 dB).
inline constexpr double kAlphaMin = 1.0;
inline constexpr double kAlphaMax = 1000.0;

struct QuadratureSettings {
    double omega_max = 1e8;      // hard truncation cap, normalized units
    double tolerance = 1e-10;    // target absolute error of the CDF
    double max_error = 1e-6;     // reported error above this is a failure

    bool operator==(const QuadratureSettings&) const = default;
};

/// All scalar parameters of one run. Powers are stored in dBm / dB as
/// configured; use the accessors below for linear values.
struct SystemConfig {
    double pt_user_dbm = 15.0;
    double pt_ris_dbm = -47.0;
    AlphaMode alpha_mode = AlphaMode::Fixed;
    double alpha_linear = 8.5;
    int m_active = 512;
    int n_passive = 512;
    double rate_threshold_bps_hz = 2.0;
    double epsilon_sic = 0.0;
    double w0_dbm = -130.0;
    double namp_dbm = -130.0;
    double pa_efficiency = 1.0;
    double g_max_db = 30.0;
    double fc_ghz = 5.0;
    double d_u1_ris_m = 35.51;
    double d_u2_ris_m = 35.51;
    double d_ris_bs_m = 20.22;
    std::uint64_t mc_trials = 100000;
    std::uint64_t seed = 1;
    QuadratureSettings quadrature{};

    // Which user the active partition is aligned for (1 or 2).
    int active_user = 1;
    // When > 0, every link uses this linear variance instead of path loss.
    double variance_override = 0.0;
    // Outage of the SIC-decoded user also counts failed decoding of the
    // first user. Monte Carlo only.
    bool joint_sic_outage = false;

    // Geometry that does not enter the model; kept so configs round-trip.
    double d_u1_bs_m = 55.73;
    double d_u2_bs_m = 55.73;
    double h_u1_m = 10.0;
    double h_u2_m = 10.0;
    double h_ris_m = 4.0;
    double h_bs_m = 1.0;

    double pt_user_watt() const { return dbm_to_watt(pt_user_dbm); }
    double pt_ris_watt() const { return dbm_to_watt(pt_ris_dbm); }
    double w0_watt() const { return dbm_to_watt(w0_dbm); }
    double namp_watt() const { return dbm_to_watt(namp_dbm); }
    // SINR threshold v = 2^r - 1.
    double sinr_threshold() const;
    int passive_user() const { return active_user == 1 ? 2 : 1; }

    bool operator==(const SystemConfig&) const = default;
};

struct ValidatedConfig {
    SystemConfig config;
    std::vector<std::string> warnings;
};

/// Checks every invariant and clamps alpha_linear into [1, 1000].
/// Throws ConfigError naming all violations at once.
ValidatedConfig validate(const SystemConfig& config);

// ---- key/value I/O ------------------------------------------------------

/// Sets one field from its textual value. Unknown keys and malformed
/// values throw ConfigError.
void set_field(SystemConfig& config, std::string_view key, std::string_view value);
std::string get_field(const SystemConfig& config, std::string_view key);
const std::vector<std::string>& field_names();

/// Parses `key = value` lines; `#` starts a comment.
SystemConfig parse_config(std::string_view text, SystemConfig base = {});
SystemConfig load_config(const std::string& path, SystemConfig base = {});

/// Canonical `key = value` dump, one line per field in field_names() order.
std::string to_config_text(const SystemConfig& config);
std::map<std::string, std::string> to_key_values(const SystemConfig& config);

/// FNV-1a hash of the canonical text, printed as 16 hex digits.
std::string config_digest(const SystemConfig& config);

} // namespace risnoma
