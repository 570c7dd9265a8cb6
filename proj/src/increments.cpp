// SPDX-License-Identifier: MIT
#include "edetect/increments.hpp"

#include "edetect/errors.hpp"

#include <cmath>
#include <string>

namespace edetect {

IncrementSpec make_increment(IncrementKind kind, double param, double lambda) {
    switch (kind) {
    case IncrementKind::exp_bernoulli: {
        if (!(param > 0.0 && param < 1.0))
            throw config_error("exp_bernoulli p0 must lie in (0,1)");
        if (!(lambda > 0.0 && lambda <= kBernoulliLambdaClamp))
            throw config_error("exp_bernoulli lambda must lie in (0, 700]");
        return {kind, param, lambda, PsiFamily::bernoulli(param).eval(lambda)};
    }
    case IncrementKind::exp_bounded:
    case IncrementKind::exact_bounded: {
        if (!(param > 0.0 && param < 1.0))
            throw config_error("bounded mean bound must lie in (0,1)");
        if (!(lambda > 0.0 && lambda < 1.0))
            throw config_error("bounded increment lambda must lie in (0,1)");
        const double psi = kind == IncrementKind::exp_bounded
                               ? PsiFamily::sub_exponential().eval(lambda)
                               : 0.0;
        return {kind, param, lambda, psi};
    }
    }
    throw config_error("unknown increment kind");
}

double log_increment(const IncrementSpec& spec, double x) {
    switch (spec.kind) {
    case IncrementKind::exp_bernoulli:
        if (x != 0.0 && x != 1.0)
            throw data_error("bernoulli observation must be 0 or 1, got " + std::to_string(x));
        return spec.lambda * (x - spec.param) - spec.psi_at_lambda;
    case IncrementKind::exp_bounded: {
        if (!(x >= 0.0 && x <= 1.0))
            throw data_error("bounded observation outside [0,1]: " + std::to_string(x));
        const double s = x / spec.param - 1.0;
        return spec.lambda * s - spec.psi_at_lambda * s * s;
    }
    case IncrementKind::exact_bounded: {
        if (!(x >= 0.0 && x <= 1.0))
            throw data_error("bounded observation outside [0,1]: " + std::to_string(x));
        return std::log1p(spec.lambda * (x / spec.param - 1.0));
    }
    }
    throw config_error("unknown increment kind");
}

PsiFamily psi_family_for(IncrementKind kind, double param) {
    if (kind == IncrementKind::exp_bernoulli) return PsiFamily::bernoulli(param);
    return PsiFamily::sub_exponential();
}

DeltaBounds delta_bounds_bounded(double mean_bound, double min_gap) {
    if (!(mean_bound > 0.0 && mean_bound < 1.0))
        throw config_error("mean bound must lie in (0,1)");
    if (!(min_gap > 0.0 && min_gap <= 1.0 - mean_bound))
        throw config_error("minimum mean gap must lie in (0, 1 - mean_bound]");
    const double one_minus = 1.0 - mean_bound;
    return {mean_bound * min_gap / (one_minus * one_minus),
            mean_bound * one_minus / (min_gap * min_gap)};
}

double normalize_bounded(double x_raw, double lo, double hi) {
    if (!(lo < hi))
        throw config_error("normalization bounds must satisfy lo < hi");
    if (!(x_raw >= lo && x_raw <= hi))
        throw data_error("raw value " + std::to_string(x_raw) + " outside [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return (x_raw - lo) / (hi - lo);
}

} // namespace edetect
