// SPDX-License-Identifier: MIT
#pragma once

#include <limits>

namespace edetect {

enum class Family {
    bernoulli,       // psi(l) = log(1 - p0 + p0 e^l) - l p0
    sub_exponential, // psi(l) = -log(1 - l) - l on [0, 1)
};

// A convex cumulant-like function psi with psi(0) = grad(0) = 0, together
// with its gradient, convex conjugate, and the inverse maps needed by
// calibration. Instances are immutable and cheap to copy; all member
// functions are pure and thread-safe.
//
// Conventions:
//  - bernoulli: evaluation is clamped to |lambda| <= 700 (e^lambda overflow
//    guard); the conjugate lives on z in [0, 1 - p0), where
//    conjugate(z) = KL(p0 + z || p0).
//  - sub_exponential: evaluation domain [0, 1); conjugate(z) = z - log(1 + z)
//    on z >= 0. The variance map of its increment form has minimum 0.
class PsiFamily {
public:
    static PsiFamily bernoulli(double p0);
    static PsiFamily sub_exponential();

    Family family() const noexcept { return family_; }
    // Pre-change mean bound of the Bernoulli class; meaningless for
    // sub_exponential (returns 0).
    double p0() const noexcept { return p0_; }

    // Minimum of the variance map v over the sample space: 1 for bernoulli
    // (v == 1), 0 for sub_exponential (v(x) = (x/m - 1)^2 vanishes at x = m).
    double v_min() const noexcept;

    double eval(double lambda) const;          // psi(lambda)
    double grad(double lambda) const;          // d psi / d lambda
    double conjugate(double z) const;          // psi*(z) = sup_l { l z - psi(l) }
    double grad_conjugate(double delta) const; // unique l with grad(l) = delta

    // Unique z >= 0 with conjugate(z) = c, by bisection on the strictly
    // increasing conjugate. Throws calibration_error when c is unattainable
    // within the conjugate domain, numeric_error on non-convergence.
    double solve_conjugate(double c) const;

    // Exclusive upper end of the conjugate domain (1 - p0, or +inf).
    double conjugate_domain_sup() const noexcept;

private:
    PsiFamily(Family f, double p0) : family_(f), p0_(p0) {}

    Family family_;
    double p0_;
};

inline constexpr double kBernoulliLambdaClamp = 700.0;

} // namespace edetect
