// SPDX-License-Identifier: MIT
#include "edetect/detector.hpp"

#include "edetect/errors.hpp"
#include "testsupport.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace edetect;

TEST_CASE("one-step recursion arithmetic") {
    // M = 3, next increment L = 2: SR -> L(M+1) = 8, CUSUM -> L max(M,1) = 6
    MixtureState st(std::vector<double>{1.0});
    st.step(std::vector<double>{std::log(3.0)}); // SR = CS = 3
    CHECK(std::exp(st.log_sr()) == doctest::Approx(3.0).epsilon(1e-12));
    st.step(std::vector<double>{std::log(2.0)});
    CHECK(std::exp(st.log_sr()) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(std::exp(st.log_cusum()) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("trivial increments: SR counts steps, CUSUM stays at one") {
    MixtureState st(std::vector<double>{1.0});
    for (int n = 1; n <= 40; ++n) {
        st.step(std::vector<double>{0.0});
        CHECK(st.log_sr() == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-12));
        CHECK(st.log_cusum() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("component count mismatch is a hard error") {
    MixtureState st(std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(st.step(std::vector<double>{0.0}), config_error);
}

TEST_CASE("recursions match the definition-level sums and maxima") {
    oracle::TestRng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform() * 5.0);
        const int n = 4 + static_cast<int>(rng.uniform() * 60.0);
        std::vector<double> weights(static_cast<std::size_t>(k));
        double wsum = 0.0;
        for (auto& w : weights) {
            w = rng.uniform(0.1, 1.0);
            wsum += w;
        }
        for (auto& w : weights) w /= wsum;

        MixtureState st(weights);
        std::vector<std::vector<double>> history(static_cast<std::size_t>(k));
        for (int step = 0; step < n; ++step) {
            std::vector<double> incs(static_cast<std::size_t>(k));
            for (int c = 0; c < k; ++c) {
                incs[static_cast<std::size_t>(c)] = rng.uniform(-1.5, 1.5);
                history[static_cast<std::size_t>(c)].push_back(
                    incs[static_cast<std::size_t>(c)]);
            }
            st.step(incs);
        }
        for (int c = 0; c < k; ++c) {
            const double sr = oracle::brute_log_sr(history[static_cast<std::size_t>(c)]);
            const double cs = oracle::brute_log_cusum(history[static_cast<std::size_t>(c)]);
            CHECK(st.component_log_sr(static_cast<std::size_t>(c)) ==
                  doctest::Approx(sr).epsilon(1e-9));
            CHECK(st.component_log_cusum(static_cast<std::size_t>(c)) ==
                  doctest::Approx(cs).epsilon(1e-9));
        }
    }
}

TEST_CASE("cusum never exceeds sr") {
    oracle::TestRng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        MixtureState st(std::vector<double>{0.25, 0.25, 0.5});
        for (int step = 0; step < 200; ++step) {
            st.step(std::vector<double>{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                        rng.uniform(-1.0, 1.0)});
            CHECK(st.log_cusum() <= st.log_sr() + 1e-12);
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(st.component_log_cusum(c) <= st.component_log_sr(c) + 1e-12);
        }
    }
}

TEST_CASE("mixture aggregation is linear in the weights") {
    // Aggregating two single-component paths with combined weights reproduces
    // the two-component aggregate, stream for stream.
    oracle::TestRng rng(77);
    MixtureState one(std::vector<double>{1.0});
    MixtureState two(std::vector<double>{1.0});
    MixtureState both(std::vector<double>{0.3, 0.7});
    for (int step = 0; step < 120; ++step) {
        const double a = rng.uniform(-1.0, 1.0);
        const double b = rng.uniform(-1.0, 1.0);
        one.step(std::vector<double>{a});
        two.step(std::vector<double>{b});
        both.step(std::vector<double>{a, b});
        const double expected =
            log_add_exp(std::log(0.3) + one.log_sr(), std::log(0.7) + two.log_sr());
        CHECK(both.log_sr() == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("run_until_stop on the trivial stream") {
    // L == 1: SR grows like n, crosses 1/alpha = 10 exactly at n = 10
    const std::vector<IncrementSpec> incs{make_increment(IncrementKind::exact_bounded, 0.5, 0.3)};
    const std::vector<double> w{1.0};
    const std::vector<double> stream(64, 0.5);

    StreamDetector sr_det(incs, w);
    const RunResult sr = run_until_stop(sr_det, stream, std::log(10.0), 1000, DetectorMode::sr);
    CHECK(sr.outcome == RunResult::Outcome::stopped);
    CHECK(sr.sr_stop_index == 10);
    CHECK(sr.path.size() == 10);
    CHECK(sr.path.back().stopped);
    CHECK_FALSE(sr.path[8].stopped);

    // any threshold above 1 never stops the CUSUM statistic
    StreamDetector cs_det(incs, w);
    const RunResult cs =
        run_until_stop(cs_det, stream, std::log(1.5), 48, DetectorMode::cusum);
    CHECK(cs.outcome == RunResult::Outcome::truncated);
    CHECK(cs.cs_stop_index == -1);

    // exhausting the stream before stop and truncation is its own marker
    StreamDetector ended(incs, w);
    const RunResult se =
        run_until_stop(ended, std::vector<double>(5, 0.5), std::log(10.0), 1000);
    CHECK(se.outcome == RunResult::Outcome::stream_ended);
}

TEST_CASE("sr stops no later than cusum on shared thresholds") {
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(0.05, 0.02, 0.41, 1000, bern);
    oracle::TestRng rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        const double q = rng.uniform(0.55, 0.9);
        std::vector<double> stream(400);
        for (auto& x : stream) x = rng.bernoulli(q);

        StreamDetector det = StreamDetector::finite(cal, IncrementKind::exp_bernoulli, 0.49);
        const RunResult rr =
            run_until_both_stop(det, stream, std::log(20.0), std::log(20.0), 400);
        if (rr.cs_stop_index >= 0) {
            REQUIRE(rr.sr_stop_index >= 0);
            CHECK(rr.sr_stop_index <= rr.cs_stop_index);
        }
        for (const PathRow& row : rr.path) CHECK(row.log_cusum <= row.log_sr + 1e-12);
    }
}

TEST_CASE("adaptive state grows on schedule and matches the double-sum definition") {
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const AdaptiveCalibration cal =
        build_adaptive_calibration(0.01, 0.024, 1.0, 0.5, 1.0, 1000, subexp);

    StreamDetector det = StreamDetector::adaptive(cal, IncrementKind::exact_bounded, 0.494);
    oracle::TestRng rng(31);
    const int n_max = 30;

    // reconstruct weights / births / increments for the oracle as we go
    std::vector<double> weights(cal.omegas.begin(), cal.omegas.end());
    std::vector<int> births(cal.omegas.size(), 1);
    std::vector<std::vector<double>> log_l(cal.omegas.size());
    std::vector<IncrementSpec> specs;
    for (double l : cal.core.lambdas)
        specs.push_back(make_increment(IncrementKind::exact_bounded, 0.494, l));

    for (int n = 1; n <= n_max; ++n) {
        const int k_n = scheduled_count(cal, n);
        while (static_cast<int>(specs.size()) - 1 < k_n) {
            const int k = static_cast<int>(specs.size());
            const MintedComponent mc = mint_component(cal, k);
            specs.push_back(make_increment(IncrementKind::exact_bounded, 0.494, mc.lambda));
            weights.push_back(mc.omega);
            births.push_back(n);
            log_l.emplace_back(static_cast<std::size_t>(n - 1), 0.0); // unused pre-birth
        }
        const double x = rng.uniform(0.0, 1.0);
        for (std::size_t c = 0; c < specs.size(); ++c)
            log_l[c].push_back(log_increment(specs[c], x));

        det.observe(x);
        CHECK(static_cast<int>(det.component_count()) == k_n + 1);

        const double oracle_sr = oracle::brute_adaptive_log_sr(log_l, weights, births, n);
        const double oracle_cs = oracle::brute_adaptive_log_cusum(log_l, weights, births, n);
        CHECK(det.log_sr() == doctest::Approx(oracle_sr).epsilon(1e-9));
        CHECK(det.log_cusum() == doctest::Approx(oracle_cs).epsilon(1e-9));
    }
}

TEST_CASE("gamma stays at least one and never increases") {
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const AdaptiveCalibration cal =
        build_adaptive_calibration(0.01, 0.024, 1.0, 0.5, 1.0, 1000, subexp);
    StreamDetector det = StreamDetector::adaptive(cal, IncrementKind::exact_bounded, 0.494);
    oracle::TestRng rng(7);
    double prev_gamma = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 400; ++n) {
        det.observe(rng.uniform(0.0, 1.0));
        CHECK(det.gamma() >= 1.0);
        CHECK(det.gamma() <= prev_gamma + 1e-15);
        prev_gamma = det.gamma();
    }
}

TEST_CASE("constant schedule reproduces the finite mixture") {
    // Freezing the schedule leaves the rescaled weights (mass W/alpha) with a
    // constant gamma = alpha/W; by homogeneity of the recursions the
    // aggregate equals the unit-weight finite mixture built from the core.
    const PsiFamily subexp = PsiFamily::sub_exponential();
    const AdaptiveCalibration cal =
        build_adaptive_calibration(0.01, 0.024, 1.0, 0.5, 1.0, 1000, subexp);

    StreamDetector frozen =
        StreamDetector::adaptive_constant_schedule(cal, IncrementKind::exact_bounded, 0.494);
    StreamDetector finite =
        StreamDetector::finite(cal.core, IncrementKind::exact_bounded, 0.494);
    CHECK(frozen.gamma() == doctest::Approx(cal.alpha / cal.core.weight_mass).epsilon(1e-12));

    oracle::TestRng rng(99);
    for (int n = 0; n < 300; ++n) {
        const double x = rng.uniform(0.0, 1.0);
        frozen.observe(x);
        finite.observe(x);
        CHECK(frozen.log_sr() == doctest::Approx(finite.log_sr()).epsilon(1e-10));
        CHECK(frozen.log_cusum() == doctest::Approx(finite.log_cusum()).epsilon(1e-10));
    }
}
