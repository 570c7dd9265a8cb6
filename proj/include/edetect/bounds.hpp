// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/calibration.hpp"

#include <optional>

namespace edetect {

// Information rate and log-increment variance of an i.i.d. post-change law,
// under the oracle tuning lambda* = grad_conjugate(delta*).
struct DivergenceInfo {
    double divergence;  // E log L^(lambda*) = psi*(delta*) sigma^2
    double delta_star;  // mean-to-variance ratio of the sufficient maps
    double lambda_star; // oracle tuning parameter
    std::optional<double> variance; // Var log L^(lambda*); absent when the
                                    // supplied moments cannot determine it
};

// Bernoulli(q) post-change against the mean-bounded class at p0.
DivergenceInfo divergence_bernoulli(double p0, double q);

// Variance of log L^(lambda) = lambda (X - p0) - psi_B(lambda) under
// Bernoulli(q), for an arbitrary tuning lambda.
double bernoulli_log_increment_variance(double p0, double q, double lambda);

// A bounded post-change law on [0,1] described by central moments about the
// class boundary m. The first two determine the divergence; the variance of
// the log-increment additionally needs the third and fourth (no distribution
// shape is ever assumed).
struct BoundedMoments {
    double mean;             // E X, must exceed m
    double second_about_m;   // E (X - m)^2
    std::optional<double> third_about_m;
    std::optional<double> fourth_about_m;
};

// Exact moments of the two-point law on {0,1} with the given mean.
BoundedMoments two_point_moments(double mean, double m);

DivergenceInfo divergence_bounded(double m, const BoundedMoments& q);

// Variance of log L^(lambda) = lambda s - psi_E(lambda) s^2, s = (X-m)/m,
// at an arbitrary tuning lambda; throws config_error when third/fourth
// moments are missing.
double bounded_log_increment_variance(double m, const BoundedMoments& q, double lambda);

enum class DelayRegime { lorden, well_separated, nosep_high, nosep_mid, nosep_low };

struct DelayBoundReport {
    DelayRegime regime;
    double bound_value;    // leading + variance + constant
    double leading_term;   // g / D scale
    double variance_term;  // V / D^2 scale
    double constant_term;
    int k_star = -1; // first scheduled index past the oracle (nosep_low only)
};

// g / D + V / D^2 + 1 (single-baseline / first-passage form).
DelayBoundReport delay_bound_lorden(double g, double divergence, double variance);

// Same form at g = cal.g_alpha (well-separated mixture).
DelayBoundReport delay_bound_well_separated(const MixtureCalibration& cal,
                                            double divergence, double variance);

// Closed-form cap on the calibrated threshold:
//   inf_{eta > 1} eta [ log(1/alpha) + log(1 + ceil(log_eta(d_upper/d_lower))) ],
// evaluated exactly over the ceiling breakpoints eta = (d_upper/d_lower)^{1/j}.
double g_alpha_upper_bound(double alpha, double d_lower, double d_upper);

// Three-regime bound for the no-separation scheme, selected by comparing
// delta_star against (delta_lower, delta0). The variance argument must be
// taken at the tuning the regime uses: lambda* when delta_star < delta0,
// lambda_0 otherwise (they coincide on the regime boundary).
DelayBoundReport delay_bound_no_separation(const AdaptiveCalibration& cal,
                                           double divergence, double variance,
                                           double delta_star);

} // namespace edetect
