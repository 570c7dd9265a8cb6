// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/detector.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace edetect {

// Synthetic observation generators. All draw deterministically from an
// explicit 64-bit state so replications are reproducible across platforms
// and worker counts.
enum class GenKind {
    bernoulli,       // {0,1}, P(1) = mean
    two_point,       // alias of bernoulli for bounded streams (extremal law)
    scaled_binomial, // Binomial(levels, mean)/levels on [0,1]; beta-like shape
    constant,        // mean, deterministically
};

struct GeneratorSpec {
    GenKind kind = GenKind::bernoulli;
    double mean = 0.5;
    int levels = 16; // scaled_binomial resolution
};

double generator_mean(const GeneratorSpec& gen);
void validate_generator(const GeneratorSpec& gen);

inline constexpr std::int64_t kNeverChanges = -1;

struct StreamSpec {
    GeneratorSpec pre_change;
    GeneratorSpec post_change;
    std::int64_t changepoint = kNeverChanges; // draws 1..nu pre-change, nu+1.. post
    std::uint64_t seed = 0;
};

std::vector<double> generate_stream(const StreamSpec& spec, std::int64_t n);

// Counter-based sub-seed derivation (splitmix64 finalizer) so replications
// share no generator state.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream_index);

struct MonteCarloReport {
    std::int64_t replications = 0;
    double mean_stat = 0.0;
    double stderr_stat = 0.0;
    std::int64_t truncation_count = 0;
    std::int64_t truncation_horizon = 0;
};

// Everything needed to run one detection procedure inside the harness. The
// factory mints an independent detector per replication.
struct DetectorSetup {
    std::function<StreamDetector()> make;
    DetectorMode mode = DetectorMode::sr;
    double log_threshold = 0.0;
    // Pre-change class boundary (p0 or m); when set, estimate_arl validates
    // the generator mean against it.
    std::optional<double> pre_change_mean_bound;
};

DetectorSetup finite_setup(const MixtureCalibration& cal, IncrementKind kind,
                           double kind_param, DetectorMode mode, double log_threshold);
DetectorSetup adaptive_setup(const AdaptiveCalibration& cal, IncrementKind kind,
                             double kind_param, DetectorMode mode, double log_threshold);

// Mean stopping time under pure pre-change data (changepoint = never).
// Truncated replications contribute the horizon value, which biases the mean
// downward -- the conservative direction when checking a lower bound on the
// average run length.
MonteCarloReport estimate_arl(const DetectorSetup& setup, const GeneratorSpec& pre_change,
                              std::int64_t replications, std::int64_t horizon,
                              std::uint64_t seed, int workers = 1);

// Mean stopping time under pure post-change data (changepoint = 0).
MonteCarloReport estimate_delay(const DetectorSetup& setup, const GeneratorSpec& post_change,
                                std::int64_t replications, std::int64_t horizon,
                                std::uint64_t seed, int workers = 1);

} // namespace edetect
