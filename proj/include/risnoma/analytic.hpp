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

#include <complex>
#include <functional>
#include <vector>

namespace risnoma {

// Raised when the CDF inversion cannot meet its accuracy target.
class AccuracyError : public Error {
  public:
    using Error::Error;
};

enum class TermKind { RealGaussian, ComplexGaussian };

/// Large-array Gaussian statistics of one link term. `var` is the total
/// variance; complex terms split it evenly between real and imaginary parts.
struct TermStats {
    double mu = 0.0;
    double var = 0.0;
    TermKind kind = TermKind::RealGaussian;
};

// Standard deviations (sigma, not sigma^2) of the per-link channels.
TermStats stats_A(double alpha, int m, double sigma_h, double sigma_hbs);
TermStats stats_B(int n, double sigma_g, double sigma_gbs);
TermStats stats_C(double alpha, int m, double sigma_h, double sigma_hbs);
TermStats stats_D(int n, double sigma_g, double sigma_gbs);

struct TermSet {
    TermStats a, b, c, d;
    double e_var = 0.0; // variance of theta^m h_bs^m (= sigma_bs^2)
};

/// Term statistics implied by a config at amplification `alpha`.
TermSet term_stats(const SystemConfig& config, double alpha);

/// weight * X with X = sum_{k=1}^{dof} X_k^2, X_k ~ N(mu_k, variance).
/// `mean` is sqrt(sum_k mu_k^2); the central case has mean 0.
struct QuadComponent {
    double weight = 1.0;
    int dof = 1;
    double variance = 1.0;
    double mean = 0.0;
};

/// G = sum of independent weighted (non)central chi-square components.
struct QuadFormSpec {
    std::vector<QuadComponent> components;

    double mean() const;
    double variance() const;
    // Copy with every weight divided by `s` (CDF of G/s).
    QuadFormSpec scaled(double s) const;
};

/// G for user `user` at SINR threshold v, such that outage = P(G < W0 v).
QuadFormSpec build_quadform(const TermSet& stats, const SystemConfig& config, double alpha, int user, double v);

using CharacteristicFunction = std::function<cplx(double)>;

// Product of per-component chi-square CFs evaluated at weight * omega.
cplx cf_eval(const QuadFormSpec& spec, double omega);
CharacteristicFunction make_cf(QuadFormSpec spec);

struct CdfResult {
    double value = 0.0;
    double error = 0.0;     // quadrature + truncation estimate
    double omega_end = 0.0; // truncation point actually used
    int panels = 0;
};

/// F(g) = 1/2 - (1/pi) int_0^inf Im{e^{-j w g} cf(w)} / w dw.
/// Throws AccuracyError when the error estimate exceeds quad.max_error or
/// the integrand has not decayed by quad.omega_max.
CdfResult gil_pelaez_cdf(const CharacteristicFunction& cf, double g, const QuadratureSettings& quad = {});

/// Outage of `user` via the characteristic-function route.
/// CDF of a quadratic form at g. Forms with weights of one sign are resolved
/// exactly on the far side of the origin; otherwise the form is normalized
/// and inverted numerically.
CdfResult quadform_cdf(const QuadFormSpec& spec, double g, const QuadratureSettings& quad = {});

OutageResult analytic_outage(const SystemConfig& config, int user);
OutagePair analytic_outage_pair(const SystemConfig& config);

} // namespace risnoma
