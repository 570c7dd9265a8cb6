// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/calibration.hpp"
#include "edetect/increments.hpp"
#include "edetect/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace edetect {

enum class DetectorMode { sr, cusum };

// Log-space crossing test with a small absolute slack so exact-boundary hits
// (detector value equal to the threshold) survive rounding of the log-space
// recursions.
inline constexpr double kStopSlack = 1e-9;
inline bool crossed(double log_stat, double log_threshold) {
    return log_stat >= log_threshold - kStopSlack;
}

// Per-component SR and CUSUM accumulators over raw log-increments, kept
// entirely in logarithms, with the re-weighting factor gamma = 1 / (sum of
// active weights). Components start at the log(0) sentinel and contribute
// nothing until their first update. A fixed component set with weights
// summing to one reduces gamma to 1, which is the plain finite-mixture
// recursion.
class MixtureState {
public:
    explicit MixtureState(std::span<const double> weights);

    // Registers a component born at the next step; gamma shrinks accordingly.
    void add_component(double weight);

    // One step; exactly one log-increment per component, in component order.
    void step(std::span<const double> log_increments);

    std::size_t size() const noexcept { return comps_.size(); }
    std::int64_t steps() const noexcept { return steps_; }
    double gamma() const noexcept { return 1.0 / weight_sum_; }
    double log_sr() const noexcept { return agg_sr_; }
    double log_cusum() const noexcept { return agg_cs_; }
    double log_aggregate(DetectorMode mode) const noexcept {
        return mode == DetectorMode::sr ? agg_sr_ : agg_cs_;
    }
    double component_log_sr(std::size_t k) const { return comps_[k].log_sr; }
    double component_log_cusum(std::size_t k) const { return comps_[k].log_cs; }

private:
    struct Component {
        double log_weight;
        double log_sr = kLogZero;
        double log_cs = kLogZero;
    };

    void refresh_aggregates();

    std::vector<Component> comps_;
    double weight_sum_ = 0.0;
    double log_gamma_ = 0.0;
    double agg_sr_ = kLogZero;
    double agg_cs_ = kLogZero;
    std::int64_t steps_ = 0;
    std::vector<double> scratch_;
};

// Observation-driven detector: a MixtureState whose increments are evaluated
// from per-component IncrementSpecs, with optional schedule-driven minting of
// new baselines (the no-separation scheme). Single writer; independent
// streams run in parallel with one detector each.
class StreamDetector {
public:
    // Finite mixture with explicit components.
    StreamDetector(std::vector<IncrementSpec> increments, std::span<const double> weights);

    // Finite mixture from a baseline calibration; `kind` selects the
    // increment form evaluated at the calibrated lambdas and must be
    // consistent with the calibration's psi family.
    static StreamDetector finite(const MixtureCalibration& cal, IncrementKind kind,
                                 double kind_param);

    // No-separation detector with the growing schedule.
    static StreamDetector adaptive(const AdaptiveCalibration& cal, IncrementKind kind,
                                   double kind_param);

    // Same components and gamma bookkeeping as adaptive(), but the schedule
    // is frozen at its initial count (a constant scheduling function).
    static StreamDetector adaptive_constant_schedule(const AdaptiveCalibration& cal,
                                                     IncrementKind kind, double kind_param);

    void observe(double x);

    std::int64_t steps() const noexcept { return state_.steps(); }
    std::size_t component_count() const noexcept { return state_.size(); }
    double gamma() const noexcept { return state_.gamma(); }
    double log_sr() const noexcept { return state_.log_sr(); }
    double log_cusum() const noexcept { return state_.log_cusum(); }
    double log_aggregate(DetectorMode mode) const noexcept { return state_.log_aggregate(mode); }

private:
    StreamDetector(std::vector<IncrementSpec> incs, std::span<const double> weights,
                   std::optional<AdaptiveCalibration> schedule, IncrementKind kind,
                   double kind_param);

    void mint_up_to(int k_target);

    std::vector<IncrementSpec> incs_;
    MixtureState state_;
    std::optional<AdaptiveCalibration> schedule_;
    IncrementKind kind_ = IncrementKind::exp_bernoulli;
    double kind_param_ = 0.0;
    int max_index_ = 0; // highest component index currently active
    std::vector<double> log_inc_buf_;
};

struct PathRow {
    std::int64_t step;
    double log_sr;
    double log_cusum;
    bool stopped; // driving statistic has crossed at or before this step
};

struct RunResult {
    enum class Outcome { stopped, truncated, stream_ended };

    Outcome outcome;
    DetectorMode mode;
    std::int64_t sr_stop_index = -1; // first crossing of the SR aggregate, -1 if none
    std::int64_t cs_stop_index = -1; // first crossing of the CUSUM aggregate
    std::vector<PathRow> path;

    std::int64_t stop_index() const noexcept {
        return mode == DetectorMode::sr ? sr_stop_index : cs_stop_index;
    }
};

// Feeds the stream until the driving statistic (per `mode`) crosses the
// threshold (inclusive), the step count reaches `truncation`, or the stream
// runs out. Both aggregates are compared against the same threshold and both
// crossing times are recorded. Throws data_error (with the step index) on
// out-of-range observations.
RunResult run_until_stop(StreamDetector& det, std::span<const double> stream,
                         double log_threshold, std::int64_t truncation,
                         DetectorMode mode = DetectorMode::sr);

// Runs until both statistics have crossed their own thresholds (SR drives
// the `stopped` path flag; SR crosses first whenever the thresholds agree).
RunResult run_until_both_stop(StreamDetector& det, std::span<const double> stream,
                              double log_threshold_sr, double log_threshold_cs,
                              std::int64_t truncation);

} // namespace edetect
