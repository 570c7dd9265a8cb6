// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

namespace edetect {

// log(0) sentinel used by the log-space detector state.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), stable for any mix of finite and -inf arguments.
inline double log_add_exp(double a, double b) {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    const double hi = (a > b) ? a : b;
    const double lo = (a > b) ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> vals);

// Pairwise (cascade) summation; deterministic for a fixed input order and
// far more accurate than sequential accumulation on long vectors.
double pairwise_sum(std::span<const double> vals);

// Text form with 17 significant digits: reparsing reproduces the double exactly.
std::string format_real(double x);

} // namespace edetect
