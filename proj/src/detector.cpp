// SPDX-License-Identifier: MIT
#include "edetect/detector.hpp"

#include "edetect/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace edetect {

MixtureState::MixtureState(std::span<const double> weights) {
    if (weights.empty()) throw config_error("detector needs at least one component");
    comps_.reserve(weights.size());
    for (double w : weights) {
        if (!(w >= 0.0)) throw config_error("mixing weights must be nonnegative");
        comps_.push_back({w > 0.0 ? std::log(w) : kLogZero});
        weight_sum_ += w;
    }
    if (!(weight_sum_ > 0.0)) throw config_error("mixing weights must have positive sum");
    log_gamma_ = -std::log(weight_sum_);
}

void MixtureState::add_component(double weight) {
    if (!(weight > 0.0)) throw config_error("scheduled component weight must be positive");
    comps_.push_back({std::log(weight)});
    weight_sum_ += weight;
    log_gamma_ = -std::log(weight_sum_);
}

void MixtureState::step(std::span<const double> log_increments) {
    if (log_increments.size() != comps_.size())
        throw config_error("got " + std::to_string(log_increments.size()) +
                           " increments for " + std::to_string(comps_.size()) +
                           " components");
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        Component& c = comps_[k];
        const double log_l = log_increments[k];
        // SR: M <- L (M + gamma); CUSUM: M <- L max(M, gamma)
        c.log_sr = log_l + log_add_exp(c.log_sr, log_gamma_);
        c.log_cs = log_l + std::max(c.log_cs, log_gamma_);
    }
    ++steps_;
    refresh_aggregates();
}

void MixtureState::refresh_aggregates() {
    scratch_.resize(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k)
        scratch_[k] = comps_[k].log_weight + comps_[k].log_sr;
    agg_sr_ = log_sum_exp(scratch_);
    for (std::size_t k = 0; k < comps_.size(); ++k)
        scratch_[k] = comps_[k].log_weight + comps_[k].log_cs;
    agg_cs_ = log_sum_exp(scratch_);
}

namespace {

std::vector<double> weights_of(const MixtureCalibration& cal) { return cal.omegas; }

std::vector<IncrementSpec> increments_for(const std::vector<double>& lambdas,
                                          IncrementKind kind, double kind_param,
                                          Family family) {
    if ((kind == IncrementKind::exp_bernoulli) != (family == Family::bernoulli))
        throw config_error("increment kind does not match the calibration's psi family");
    std::vector<IncrementSpec> incs;
    incs.reserve(lambdas.size());
    for (double l : lambdas) incs.push_back(make_increment(kind, kind_param, l));
    return incs;
}

} // namespace

StreamDetector::StreamDetector(std::vector<IncrementSpec> incs,
                               std::span<const double> weights,
                               std::optional<AdaptiveCalibration> schedule,
                               IncrementKind kind, double kind_param)
    : incs_(std::move(incs)),
      state_(weights),
      schedule_(std::move(schedule)),
      kind_(kind),
      kind_param_(kind_param) {
    if (incs_.size() != state_.size())
        throw config_error("one increment spec per component required");
    max_index_ = static_cast<int>(incs_.size()) - 1;
}

StreamDetector::StreamDetector(std::vector<IncrementSpec> increments,
                               std::span<const double> weights)
    : StreamDetector(std::move(increments), weights, std::nullopt,
                     IncrementKind::exp_bernoulli, 0.0) {}

StreamDetector StreamDetector::finite(const MixtureCalibration& cal, IncrementKind kind,
                                      double kind_param) {
    return StreamDetector(increments_for(cal.lambdas, kind, kind_param, cal.family),
                          weights_of(cal), std::nullopt, kind, kind_param);
}

StreamDetector StreamDetector::adaptive(const AdaptiveCalibration& cal, IncrementKind kind,
                                        double kind_param) {
    return StreamDetector(increments_for(cal.core.lambdas, kind, kind_param, cal.core.family),
                          cal.omegas, cal, kind, kind_param);
}

StreamDetector StreamDetector::adaptive_constant_schedule(const AdaptiveCalibration& cal,
                                                          IncrementKind kind,
                                                          double kind_param) {
    return StreamDetector(increments_for(cal.core.lambdas, kind, kind_param, cal.core.family),
                          cal.omegas, std::nullopt, kind, kind_param);
}

void StreamDetector::mint_up_to(int k_target) {
    while (max_index_ < k_target) {
        const MintedComponent mc = mint_component(*schedule_, ++max_index_);
        incs_.push_back(make_increment(kind_, kind_param_, mc.lambda));
        state_.add_component(mc.omega);
    }
}

void StreamDetector::observe(double x) {
    if (schedule_) mint_up_to(scheduled_count(*schedule_, state_.steps() + 1));
    log_inc_buf_.resize(incs_.size());
    for (std::size_t k = 0; k < incs_.size(); ++k)
        log_inc_buf_[k] = log_increment(incs_[k], x);
    state_.step(log_inc_buf_);
}

namespace {

RunResult run_impl(StreamDetector& det, std::span<const double> stream,
                   double thr_sr, double thr_cs, std::int64_t truncation,
                   DetectorMode mode, bool need_both) {
    if (truncation < 1) throw config_error("truncation must be at least 1");

    RunResult res;
    res.mode = mode;
    res.outcome = RunResult::Outcome::stream_ended;
    res.path.reserve(static_cast<std::size_t>(
        std::min<std::int64_t>(truncation, static_cast<std::int64_t>(stream.size()))));

    for (double x : stream) {
        const std::int64_t n = det.steps() + 1;
        try {
            det.observe(x);
        } catch (const data_error& e) {
            throw data_error("stream aborted at step " + std::to_string(n) + ": " + e.what());
        }
        if (res.sr_stop_index < 0 && crossed(det.log_sr(), thr_sr)) res.sr_stop_index = n;
        if (res.cs_stop_index < 0 && crossed(det.log_cusum(), thr_cs)) res.cs_stop_index = n;
        const std::int64_t driving =
            mode == DetectorMode::sr ? res.sr_stop_index : res.cs_stop_index;
        res.path.push_back({n, det.log_sr(), det.log_cusum(), driving >= 0});

        const bool done = need_both ? (res.sr_stop_index >= 0 && res.cs_stop_index >= 0)
                                    : (driving >= 0);
        if (done) {
            res.outcome = RunResult::Outcome::stopped;
            return res;
        }
        if (n >= truncation) {
            res.outcome = RunResult::Outcome::truncated;
            return res;
        }
    }
    return res;
}

} // namespace

RunResult run_until_stop(StreamDetector& det, std::span<const double> stream,
                         double log_threshold, std::int64_t truncation, DetectorMode mode) {
    if (!(log_threshold > 0.0)) throw config_error("log threshold must be positive");
    return run_impl(det, stream, log_threshold, log_threshold, truncation, mode, false);
}

RunResult run_until_both_stop(StreamDetector& det, std::span<const double> stream,
                              double log_threshold_sr, double log_threshold_cs,
                              std::int64_t truncation) {
    if (!(log_threshold_sr > 0.0 && log_threshold_cs > 0.0))
        throw config_error("log thresholds must be positive");
    return run_impl(det, stream, log_threshold_sr, log_threshold_cs, truncation,
                    DetectorMode::sr, true);
}

} // namespace edetect
