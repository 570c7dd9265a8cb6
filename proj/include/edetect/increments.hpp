// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/psi.hpp"

namespace edetect {

// One parametrized baseline increment: a per-observation multiplicative
// factor whose conditional pre-change expectation is at most one.
enum class IncrementKind {
    exp_bernoulli, // exp{ l (x - p0) - psi_B(l) },      x in {0,1}, l > 0
    exp_bounded,   // exp{ l s - psi_E(l) s^2 }, s = x/m - 1, x in [0,1], l in (0,1)
    exact_bounded, // 1 + l (x/m - 1),                   x in [0,1], l in (0,1)
};

struct IncrementSpec {
    IncrementKind kind;
    double param;         // p0 for exp_bernoulli, mean bound m otherwise
    double lambda;
    double psi_at_lambda; // precomputed psi(lambda); 0 for exact_bounded
};

// Validates the (param, lambda) pair and precomputes psi(lambda).
IncrementSpec make_increment(IncrementKind kind, double param, double lambda);

// log of the increment at observation x. Throws data_error when x violates
// the family's range premise (the caller aborts the stream).
double log_increment(const IncrementSpec& spec, double x);

// Psi family driving calibration for a given increment kind: bernoulli(p0)
// for exp_bernoulli; the sub-exponential surrogate for both bounded kinds
// (the exact bounded increment dominates its exponential surrogate pointwise,
// so a surrogate calibration remains valid for it).
PsiFamily psi_family_for(IncrementKind kind, double param);

struct DeltaBounds {
    double lower;
    double upper;
};

// Bounds on the mean-to-variance ratio of a bounded law with mean at least
// mean_bound + min_gap: lower = m d / (1-m)^2, upper = m (1-m) / d^2.
DeltaBounds delta_bounds_bounded(double mean_bound, double min_gap);

// Affine map of a raw bounded observation into [0,1].
double normalize_bounded(double x_raw, double lo, double hi);

} // namespace edetect
