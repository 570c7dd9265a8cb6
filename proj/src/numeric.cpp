// SPDX-License-Identifier: MIT
#include "edetect/numeric.hpp"

#include <algorithm>
#include <cstdio>

namespace edetect {

double log_sum_exp(std::span<const double> vals) {
    if (vals.empty()) return kLogZero;
    double hi = kLogZero;
    for (double v : vals) hi = std::max(hi, v);
    if (hi == kLogZero) return kLogZero;
    double acc = 0.0;
    for (double v : vals) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

namespace {

double pairwise_sum_range(const double* data, std::size_t n) {
    if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, n - half);
}

} // namespace

double pairwise_sum(std::span<const double> vals) {
    return pairwise_sum_range(vals.data(), vals.size());
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace edetect
