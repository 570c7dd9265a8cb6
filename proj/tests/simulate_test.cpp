// SPDX-License-Identifier: MIT
#include "edetect/simulate.hpp"

#include "edetect/errors.hpp"
#include "testsupport.hpp"

#include <doctest.h>

#include <cmath>

using namespace edetect;

namespace {

DetectorSetup trivial_sr_setup(double alpha) {
    // constant bounded observations at the mean bound give increments == 1
    DetectorSetup setup;
    setup.make = [] {
        return StreamDetector({make_increment(IncrementKind::exact_bounded, 0.5, 0.3)},
                              std::vector<double>{1.0});
    };
    setup.mode = DetectorMode::sr;
    setup.log_threshold = std::log(1.0 / alpha);
    setup.pre_change_mean_bound = 0.5;
    return setup;
}

} // namespace

TEST_CASE("stream generation is deterministic and honors the changepoint") {
    StreamSpec spec;
    spec.pre_change = {GenKind::bernoulli, 0.49, 16};
    spec.post_change = {GenKind::bernoulli, 0.9, 16};
    spec.changepoint = 10;
    spec.seed = 42;

    const std::vector<double> a = generate_stream(spec, 200);
    const std::vector<double> b = generate_stream(spec, 200);
    CHECK(a == b);

    spec.changepoint = 0; // all draws post-change
    const std::vector<double> post = generate_stream(spec, 4000);
    double mean = 0.0;
    for (double x : post) mean += x;
    mean /= static_cast<double>(post.size());
    CHECK(std::abs(mean - 0.9) < 3.0 * std::sqrt(0.9 * 0.1 / 4000.0));

    spec.changepoint = kNeverChanges;
    const std::vector<double> pre = generate_stream(spec, 100000);
    double pre_mean = 0.0;
    for (double x : pre) pre_mean += x;
    pre_mean /= static_cast<double>(pre.size());
    CHECK(std::abs(pre_mean - 0.49) < 3.0 * std::sqrt(0.49 * 0.51 / 100000.0));
}

TEST_CASE("scaled binomial generator stays in range with the right mean") {
    StreamSpec spec;
    spec.pre_change = {GenKind::scaled_binomial, 0.494, 16};
    spec.post_change = spec.pre_change;
    spec.changepoint = kNeverChanges;
    spec.seed = 7;
    const std::vector<double> xs = generate_stream(spec, 20000);
    double mean = 0.0;
    for (double x : xs) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    const double se = std::sqrt(0.494 * 0.506 / 16.0 / 20000.0);
    CHECK(std::abs(mean - 0.494) < 4.0 * se);
}

TEST_CASE("trivial detector stops exactly at 1/alpha") {
    const DetectorSetup setup = trivial_sr_setup(0.1);
    const GeneratorSpec constant{GenKind::constant, 0.5, 16};
    const MonteCarloReport rep = estimate_arl(setup, constant, 50, 100, 3);
    CHECK(rep.mean_stat == 10.0);
    CHECK(rep.stderr_stat == 0.0);
    CHECK(rep.truncation_count == 0);
}

TEST_CASE("deterministic first passage matches the scalar recursion") {
    // all-ones bernoulli stream: M_n follows a fixed scalar recursion
    const double p0 = 0.49, lambda = 0.8, alpha = 0.01;
    DetectorSetup setup;
    setup.make = [=] {
        return StreamDetector({make_increment(IncrementKind::exp_bernoulli, p0, lambda)},
                              std::vector<double>{1.0});
    };
    setup.mode = DetectorMode::sr;
    setup.log_threshold = std::log(1.0 / alpha);

    const double log_l = lambda * (1.0 - p0) - PsiFamily::bernoulli(p0).eval(lambda);
    double m = 0.0;
    std::int64_t expected = 0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        m = std::exp(log_l) * (m + 1.0);
        if (std::log(m) >= std::log(1.0 / alpha) - 1e-9) {
            expected = n;
            break;
        }
    }
    REQUIRE(expected > 0);

    const MonteCarloReport rep =
        estimate_delay(setup, {GenKind::constant, 1.0, 16}, 10, 1000, 11);
    CHECK(rep.mean_stat == static_cast<double>(expected));
}

TEST_CASE("arl harness validates the pre-change boundary") {
    const DetectorSetup setup = trivial_sr_setup(0.1);
    CHECK_THROWS_AS(estimate_arl(setup, {GenKind::bernoulli, 0.8, 16}, 10, 50, 1),
                    config_error);
    CHECK_THROWS_AS(estimate_arl(setup, {GenKind::constant, 0.5, 16}, 0, 50, 1),
                    config_error);
}

TEST_CASE("reports are identical for any worker count") {
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.05, 0.02, 0.41, 200, bern);
    const DetectorSetup setup = finite_setup(cal, IncrementKind::exp_bernoulli, 0.49,
                                             DetectorMode::sr, std::log(20.0));
    const GeneratorSpec pre{GenKind::bernoulli, 0.49, 16};

    const MonteCarloReport one = estimate_arl(setup, pre, 60, 300, 99, 1);
    const MonteCarloReport four = estimate_arl(setup, pre, 60, 300, 99, 4);
    const MonteCarloReport seven = estimate_arl(setup, pre, 60, 300, 99, 7);
    CHECK(one.mean_stat == four.mean_stat);
    CHECK(one.stderr_stat == four.stderr_stat);
    CHECK(one.truncation_count == four.truncation_count);
    CHECK(one.mean_stat == seven.mean_stat);
}

TEST_CASE("split-half means are compatible") {
    // replications use independent sub-seeds: halves agree within 3 combined
    // standard errors
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.05, 0.02, 0.41, 200, bern);
    DetectorSetup setup = finite_setup(cal, IncrementKind::exp_bernoulli, 0.49,
                                       DetectorMode::sr, std::log(20.0));
    const GeneratorSpec post{GenKind::bernoulli, 0.7, 16};

    const MonteCarloReport all = estimate_delay(setup, post, 400, 500, 1234, 4);
    // the first half replays the same sub-seeds for replications 0..199
    const MonteCarloReport first = estimate_delay(setup, post, 200, 500, 1234, 4);
    const double combined_se = std::sqrt(first.stderr_stat * first.stderr_stat +
                                         all.stderr_stat * all.stderr_stat);
    CHECK(std::abs(first.mean_stat - all.mean_stat) < 3.0 * combined_se + 1e-9);
    // disjoint seeds give an independent batch that still agrees statistically
    const MonteCarloReport other = estimate_delay(setup, post, 400, 500, 98765, 4);
    const double se2 = std::sqrt(other.stderr_stat * other.stderr_stat +
                                 all.stderr_stat * all.stderr_stat);
    CHECK(std::abs(other.mean_stat - all.mean_stat) < 4.0 * se2 + 1e-9);
}

TEST_CASE("sr stops before cusum replication-for-replication") {
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.05, 0.02, 0.41, 200, bern);
    const GeneratorSpec post{GenKind::bernoulli, 0.65, 16};

    for (std::uint64_t rep = 1; rep <= 60; ++rep) {
        StreamSpec spec;
        spec.pre_change = post;
        spec.post_change = post;
        spec.changepoint = 0;
        spec.seed = mix_seed(2024, rep);
        const std::vector<double> xs = generate_stream(spec, 400);

        StreamDetector det = StreamDetector::finite(cal, IncrementKind::exp_bernoulli, 0.49);
        const RunResult rr = run_until_both_stop(det, xs, std::log(20.0), std::log(20.0), 400);
        if (rr.cs_stop_index >= 0) {
            REQUIRE(rr.sr_stop_index >= 0);
            CHECK(rr.sr_stop_index <= rr.cs_stop_index);
        }
    }
}

TEST_CASE("adaptive detector with constant schedule matches finite stop times seed-for-seed") {
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const AdaptiveCalibration acal =
        build_adaptive_calibration(0.05, 0.05, 1.2, 0.5, 1.0, 500, subexp);

    for (std::uint64_t rep = 1; rep <= 40; ++rep) {
        StreamSpec spec;
        spec.pre_change = {GenKind::two_point, 0.8, 16};
        spec.post_change = spec.pre_change;
        spec.changepoint = 0;
        spec.seed = mix_seed(5150, rep);
        const std::vector<double> xs = generate_stream(spec, 600);

        StreamDetector frozen =
            StreamDetector::adaptive_constant_schedule(acal, IncrementKind::exact_bounded, 0.6);
        StreamDetector finite =
            StreamDetector::finite(acal.core, IncrementKind::exact_bounded, 0.6);
        const RunResult a = run_until_stop(frozen, xs, std::log(20.0), 600);
        const RunResult b = run_until_stop(finite, xs, std::log(20.0), 600);
        CHECK(a.sr_stop_index == b.sr_stop_index);
        CHECK((a.outcome == RunResult::Outcome::stopped) ==
              (b.outcome == RunResult::Outcome::stopped));
    }
}

TEST_CASE("arl grows when the pre-change mean sits below the boundary") {
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.1, 0.02, 0.41, 200, bern);
    const DetectorSetup setup = finite_setup(cal, IncrementKind::exp_bernoulli, 0.49,
                                             DetectorMode::sr, std::log(10.0));
    // paired seeds: identical sub-seed sequences, only the mean differs
    const MonteCarloReport at_boundary =
        estimate_arl(setup, {GenKind::bernoulli, 0.49, 16}, 300, 500, 4242, 4);
    const MonteCarloReport below =
        estimate_arl(setup, {GenKind::bernoulli, 0.30, 16}, 300, 500, 4242, 4);
    CHECK(below.mean_stat >= at_boundary.mean_stat);
    CHECK(below.truncation_count >= at_boundary.truncation_count);
}

TEST_CASE("delay shrinks as the post-change mean grows") {
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.01, 0.02, 0.41, 200, bern);
    const DetectorSetup setup = finite_setup(cal, IncrementKind::exp_bernoulli, 0.49,
                                             DetectorMode::sr, std::log(100.0));
    double prev = std::numeric_limits<double>::infinity();
    for (double q : {0.6, 0.7, 0.8}) {
        const MonteCarloReport rep =
            estimate_delay(setup, {GenKind::bernoulli, q, 16}, 300, 2000, 777, 4);
        CHECK(rep.mean_stat < prev);
        prev = rep.mean_stat;
    }
}

TEST_CASE("worker exceptions surface instead of terminating") {
    // bernoulli increments cannot consume scaled-binomial draws
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.1, 0.02, 0.41, 100, bern);
    const DetectorSetup setup = finite_setup(cal, IncrementKind::exp_bernoulli, 0.49,
                                             DetectorMode::sr, std::log(10.0));
    CHECK_THROWS_AS(
        estimate_arl(setup, {GenKind::scaled_binomial, 0.4, 16}, 40, 50, 9, 4),
        data_error);
}

TEST_CASE("adaptive detector runs inside the monte-carlo harness") {
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const double alpha = 0.1, m = 0.5;
    const AdaptiveCalibration acal =
        build_adaptive_calibration(alpha, 0.1, 2.0, 0.5, 1.0, 500, subexp);
    const DetectorSetup setup = adaptive_setup(acal, IncrementKind::exact_bounded, m,
                                               DetectorMode::sr, std::log(1.0 / alpha));

    // two-point draws at the boundary make the exact increment a martingale
    // increment; the average run length cannot sit significantly below 1/alpha
    const MonteCarloReport arl =
        estimate_arl(setup, {GenKind::two_point, m, 16}, 300, 400, 2718, 4);
    CHECK(arl.mean_stat >= 1.0 / alpha - 3.0 * arl.stderr_stat);

    // a clear mean shift is caught quickly
    const MonteCarloReport delay =
        estimate_delay(setup, {GenKind::two_point, 0.85, 16}, 300, 400, 2719, 4);
    CHECK(delay.truncation_count == 0);
    CHECK(delay.mean_stat < 50.0);
}

TEST_CASE("adaptive stop never trails the core envelope") {
    // the j = 1 term of the adaptive statistic already dominates the core
    // mixture started at step one, so stopping cannot happen after the
    // one-sided envelope over the core grid crosses g_ralpha
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const double alpha = 0.05, m = 0.55;
    const AdaptiveCalibration acal =
        build_adaptive_calibration(alpha, 0.1, 2.0, 0.5, 1.0, 500, subexp);

    oracle::TestRng rng(907);
    int comparable = 0;
    for (int stream = 0; stream < 60; ++stream) {
        const double q = rng.uniform(0.7, 0.95);
        std::vector<double> xs(500);
        for (auto& x : xs) x = rng.bernoulli(q); // two-point bounded draws

        StreamDetector det = StreamDetector::adaptive(acal, IncrementKind::exp_bounded, m);
        const RunResult rr = run_until_stop(det, xs, std::log(1.0 / alpha), 500);
        const std::int64_t envelope = oracle::glr_stop_index(
            xs, subexp, 0.1, 2.0, acal.core.g_alpha,
            [&](double x) { return x / m - 1.0; },
            [&](double x) { const double s = x / m - 1.0; return s * s; });
        if (envelope >= 0) {
            ++comparable;
            REQUIRE(rr.sr_stop_index >= 0);
            CHECK(rr.sr_stop_index <= envelope);
        }
    }
    CHECK(comparable > 30);
}
