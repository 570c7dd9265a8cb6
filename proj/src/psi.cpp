// SPDX-License-Identifier: MIT
#include "edetect/psi.hpp"

#include "edetect/errors.hpp"

#include <cmath>
#include <string>

namespace edetect {

namespace {

constexpr double kConjugateTol = 1e-12; // residual tolerance of solve_conjugate
constexpr int kBisectionCap = 200;

[[noreturn]] void throw_domain(const char* what, double value) {
    throw domain_error(std::string(what) + " (got " + std::to_string(value) + ")");
}

} // namespace

PsiFamily PsiFamily::bernoulli(double p0) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw config_error("bernoulli p0 must lie in (0,1)");
    return PsiFamily(Family::bernoulli, p0);
}

PsiFamily PsiFamily::sub_exponential() {
    return PsiFamily(Family::sub_exponential, 0.0);
}

double PsiFamily::v_min() const noexcept {
    return family_ == Family::bernoulli ? 1.0 : 0.0;
}

double PsiFamily::conjugate_domain_sup() const noexcept {
    return family_ == Family::bernoulli ? 1.0 - p0_
                                        : std::numeric_limits<double>::infinity();
}

double PsiFamily::eval(double lambda) const {
    if (family_ == Family::bernoulli) {
        if (std::abs(lambda) > kBernoulliLambdaClamp)
            throw_domain("bernoulli lambda exceeds |lambda| <= 700", lambda);
        // log(1 - p0 + p0 e^l) - l p0, rearranged so exp never overflows
        if (lambda >= 0.0)
            return lambda * (1.0 - p0_) + std::log(p0_ + (1.0 - p0_) * std::exp(-lambda));
        return -lambda * p0_ + std::log1p(p0_ * std::expm1(lambda));
    }
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw_domain("sub-exponential lambda must lie in [0,1)", lambda);
    return -std::log1p(-lambda) - lambda;
}

double PsiFamily::grad(double lambda) const {
    if (family_ == Family::bernoulli) {
        if (std::abs(lambda) > kBernoulliLambdaClamp)
            throw_domain("bernoulli lambda exceeds |lambda| <= 700", lambda);
        if (lambda >= 0.0)
            return p0_ / (p0_ + (1.0 - p0_) * std::exp(-lambda)) - p0_;
        const double el = std::exp(lambda);
        return p0_ * el / (1.0 - p0_ + p0_ * el) - p0_;
    }
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw_domain("sub-exponential lambda must lie in [0,1)", lambda);
    return lambda / (1.0 - lambda);
}

double PsiFamily::conjugate(double z) const {
    if (!(z >= 0.0))
        throw_domain("conjugate argument must be nonnegative", z);
    if (family_ == Family::bernoulli) {
        if (z >= 1.0 - p0_)
            throw_domain("bernoulli conjugate argument must satisfy z < 1 - p0", z);
        if (z == 0.0) return 0.0;
        const double q = p0_ + z;
        // KL(q || p0) with log ratios kept in log1p form
        return q * std::log1p(z / p0_) + (1.0 - q) * std::log1p(-z / (1.0 - p0_));
    }
    return z - std::log1p(z);
}

double PsiFamily::grad_conjugate(double delta) const {
    if (!(delta >= 0.0))
        throw_domain("grad_conjugate argument must be nonnegative", delta);
    if (family_ == Family::bernoulli) {
        if (delta >= 1.0 - p0_)
            throw_domain("bernoulli grad_conjugate argument must satisfy delta < 1 - p0", delta);
        // log( q(1-p0) / (p0(1-q)) ) with q = p0 + delta
        return std::log1p(delta / p0_) - std::log1p(-delta / (1.0 - p0_));
    }
    return delta / (1.0 + delta);
}

double PsiFamily::solve_conjugate(double c) const {
    if (!(c >= 0.0))
        throw_domain("solve_conjugate target must be nonnegative", c);
    if (c == 0.0) return 0.0;

    double lo = 1e-14;
    double hi;
    if (family_ == Family::bernoulli) {
        hi = 1.0 - p0_ - 1e-12;
        if (conjugate(hi) < c)
            throw calibration_error("conjugate target unattainable within the bernoulli domain");
    } else {
        hi = 1.0;
        int doublings = 0;
        while (conjugate(hi) < c) {
            hi *= 2.0;
            if (++doublings > 1100)
                throw calibration_error("conjugate target unattainable (bracket expansion failed)");
        }
    }

    // Noise floor of evaluating the conjugate near a large target.
    const double tol = std::max(kConjugateTol,
                                8.0 * std::numeric_limits<double>::epsilon() * c);
    for (int it = 0; it < kBisectionCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = conjugate(mid);
        if (std::abs(val - c) <= tol) return mid;
        if (val < c)
            lo = mid;
        else
            hi = mid;
    }
    throw numeric_error("solve_conjugate did not converge within the iteration cap");
}

} // namespace edetect
