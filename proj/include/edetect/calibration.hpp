// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/psi.hpp"

#include <cstdint>
#include <vector>

namespace edetect {

// Output of the baseline-grid construction: tuning parameters lambda_0 > ...
// > lambda_K, normalized mixing weights, and the threshold g_alpha that
// enters the delay bounds. The single-baseline branch (separation large
// enough that one process suffices) is flagged; its g_alpha degenerates to
// log(1/alpha), eta to 1 and weight_mass to alpha so the record shape stays
// uniform.
struct MixtureCalibration {
    Family family;
    double family_param; // data-model parameter: p0 (bernoulli) or mean bound m
                         // (bounded data; informational, psi_E itself is parameter-free)
    double alpha;
    double delta_lower;
    double delta_upper;

    bool single_baseline;
    double g_alpha;
    int k_alpha;      // number of spacing intervals (argmin over k)
    double eta_alpha; // (D_U / D_L)^(1/k_alpha)
    double weight_mass; // pre-normalization mass W

    std::vector<double> lambdas; // decreasing; size k_alpha + 1 (or 1 if single)
    std::vector<double> omegas;  // normalized to sum 1, same size as lambdas
};

PsiFamily psi_family_of(const MixtureCalibration& cal);

// Infimum over g > log(1/alpha) of the defining weight-budget inequality
//   e^{-g} 1(g > v_min d_upper) + min_{k <= k_max} k e^{-g (d_upper/d_lower)^{-1/k}} <= alpha,
// located by the two-branch bisection with tolerance eps on g. The returned
// value satisfies the inequality; g - 2 eps does not.
double compute_threshold(double alpha, double d_lower, double d_upper,
                         double v_min, int k_max, double eps = 1e-9);

// Builds the full baseline grid for delta_star known to lie in
// (delta_lower, delta_upper).
MixtureCalibration compute_baseline(double alpha, double delta_lower,
                                    double delta_upper, int k_max,
                                    const PsiFamily& fam, double eps = 1e-9);

// zeta(s) - 1 = sum_{k>=1} (1+k)^{-s}, evaluated by partial sums plus an
// Euler-Maclaurin tail; accurate to well below 1e-12 for s >= 1.05.
double zeta_minus_one(double s);

// Solves zeta(s) - 1 = target for s > 1 (bisection, tolerance 1e-10 on the
// target). Larger targets give smaller s.
double solve_zeta_exponent(double target);

// No-separation scheme: a well-separated core at level r*alpha plus a
// slowly-growing schedule of extra baselines whose weights follow a
// zeta-series tail within the remaining (1-r)*alpha budget.
struct AdaptiveCalibration {
    MixtureCalibration core; // computed at level r*alpha over (delta_lower, delta0)
    double alpha;            // overall ARL level
    double importance_r;     // fraction of alpha bet on the core interval
    double zeta_s;           // tail decay exponent, > 1
    double schedule_density; // growth rate of the scheduling function, >= 1
    double delta0;
    double d0; // psi*(delta0)
    double v0; // g_{r alpha} / d0

    // Core weights rescaled by W/alpha (they sum to W/alpha; the remaining
    // mass is released to scheduled components over time).
    std::vector<double> omegas;

    bool zeta_precision_warning; // s fell below 1.05
};

AdaptiveCalibration build_adaptive_calibration(double alpha, double delta_lower,
                                               double delta0, double importance_r,
                                               double schedule_density, int k0,
                                               const PsiFamily& fam,
                                               double eps = 1e-9);

// Time-varying threshold of the no-separation scheme:
//   g(t) = g_{r alpha} + s eta log(1 + log_eta(max(t / (v0 eta^{K_L}), 1))).
double boundary_g(double t, const AdaptiveCalibration& cal);

// Scheduled component count at step n: K_L + ceil(density * log_eta n).
int scheduled_count(const AdaptiveCalibration& cal, std::int64_t n);

// Parameters of the k-th scheduled baseline (k > K_L).
struct MintedComponent {
    double lambda;
    double omega;
    double g_k;   // threshold slice g_{r alpha} + s eta log(1 + k - K_L)
    double delta; // solution of psi*(z) = g_k / (v0 eta^k)
};
MintedComponent mint_component(const AdaptiveCalibration& cal, int k);

} // namespace edetect
