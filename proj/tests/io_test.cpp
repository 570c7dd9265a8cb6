// SPDX-License-Identifier: MIT
#include "edetect/io.hpp"

#include "edetect/errors.hpp"
#include "testsupport.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace edetect;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("edetect_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("finite calibration round-trips bit-exactly") {
    TempDir tmp;
    const PsiFamily bern = PsiFamily::bernoulli(0.49);
    const MixtureCalibration cal = compute_baseline(1e-3, 0.02, 0.41, 1000, bern);

    const auto file = tmp.path / "cal.txt";
    write_calibration(file, cal);
    const LoadedCalibration loaded = read_calibration(file);
    REQUIRE(loaded.finite.has_value());
    REQUIRE_FALSE(loaded.adaptive.has_value());

    const MixtureCalibration& back = *loaded.finite;
    CHECK(back.family == cal.family);
    CHECK(back.family_param == cal.family_param);
    CHECK(back.alpha == cal.alpha);
    CHECK(back.g_alpha == cal.g_alpha);
    CHECK(back.k_alpha == cal.k_alpha);
    CHECK(back.eta_alpha == cal.eta_alpha);
    CHECK(back.weight_mass == cal.weight_mass);
    CHECK(back.lambdas == cal.lambdas);
    CHECK(back.omegas == cal.omegas);
    CHECK(back.delta_lower == cal.delta_lower);
    CHECK(back.delta_upper == cal.delta_upper);
}

TEST_CASE("adaptive calibration round-trips bit-exactly") {
    TempDir tmp;
    const AdaptiveCalibration cal = build_adaptive_calibration(
        0.01, 0.024, 1.0, 0.5, 1.0, 1000, PsiFamily::sub_exponential());

    const auto file = tmp.path / "acal.txt";
    write_calibration(file, cal);
    const LoadedCalibration loaded = read_calibration(file);
    REQUIRE(loaded.adaptive.has_value());

    const AdaptiveCalibration& back = *loaded.adaptive;
    CHECK(back.core.g_alpha == cal.core.g_alpha);
    CHECK(back.core.lambdas == cal.core.lambdas);
    CHECK(back.alpha == cal.alpha);
    CHECK(back.importance_r == cal.importance_r);
    CHECK(back.zeta_s == cal.zeta_s);
    CHECK(back.schedule_density == cal.schedule_density);
    CHECK(back.delta0 == cal.delta0);
    CHECK(back.d0 == cal.d0);
    CHECK(back.v0 == cal.v0);
    CHECK(back.omegas == cal.omegas);
}

TEST_CASE("run path serialization round-trips through the csv") {
    TempDir tmp;
    StreamDetector det({make_increment(IncrementKind::exact_bounded, 0.5, 0.3)},
                       std::vector<double>{1.0});
    const std::vector<double> stream(16, 0.5);
    const RunResult rr = run_until_stop(det, stream, std::log(10.0), 100);

    const auto file = tmp.path / "path.csv";
    write_run_path_csv(file, rr, std::log(10.0));

    const std::vector<double> col_sr = ingest_csv(file, 1, true, std::nullopt);
    REQUIRE(col_sr.size() == rr.path.size());
    for (std::size_t i = 0; i < col_sr.size(); ++i)
        CHECK(col_sr[i] == rr.path[i].log_sr); // 17 digits: exact

    const std::vector<double> thresholds = ingest_csv(file, 3, true, std::nullopt);
    for (double t : thresholds) CHECK(t == std::log(10.0));

    const std::vector<double> stopped = ingest_csv(file, 4, true, std::nullopt);
    CHECK(stopped.back() == 1.0);
    CHECK(stopped.front() == 0.0);

    // trivial SR path rows are log(n)
    for (std::size_t i = 0; i < col_sr.size(); ++i)
        CHECK(col_sr[i] ==
              doctest::Approx(std::log(static_cast<double>(i + 1))).epsilon(1e-12));
}

TEST_CASE("csv ingestion with normalization and error reporting") {
    TempDir tmp;
    const auto file = tmp.path / "plusminus.csv";
    {
        std::ofstream out(file);
        out << "game,margin\n";
        out << "1,-1\n";
        out << "2,0\n";
        out << "3,80\n";
    }
    const std::vector<double> xs =
        ingest_csv(file, 1, true, std::make_pair(-80.0, 80.0));
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == doctest::Approx(0.49375).epsilon(1e-15));
    CHECK(xs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(xs[2] == 1.0);

    {
        std::ofstream out(file, std::ios::app);
        out << "4,81\n";
    }
    CHECK_THROWS_WITH_AS(
        (void)ingest_csv(file, 1, true, std::make_pair(-80.0, 80.0)),
        doctest::Contains("line 5"), data_error);

    const auto empty = tmp.path / "empty.csv";
    { std::ofstream out(empty); }
    CHECK_THROWS_AS((void)ingest_csv(empty, 0, false, std::nullopt), data_error);

    const auto bad = tmp.path / "bad.csv";
    {
        std::ofstream out(bad);
        out << "1.5\nnot-a-number\n";
    }
    CHECK_THROWS_WITH_AS((void)ingest_csv(bad, 0, false, std::nullopt),
                         doctest::Contains("line 2"), data_error);

    CHECK_THROWS_AS((void)ingest_csv(tmp.path / "missing.csv", 0, false, std::nullopt),
                    io_error);
}

TEST_CASE("reports serialize to text and csv rows") {
    TempDir tmp;
    MonteCarloReport rep;
    rep.replications = 100;
    rep.mean_stat = 42.25;
    rep.stderr_stat = 1.5;
    rep.truncation_count = 3;
    rep.truncation_horizon = 500;

    const auto file = tmp.path / "mc.txt";
    write_report(file, rep, {{"task", "arl"}});
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("mean = 42.25") != std::string::npos);
    CHECK(text.find("truncation_count = 3") != std::string::npos);
    CHECK(text.find("task = arl") != std::string::npos);

    const auto csv = tmp.path / "summary.csv";
    append_report_csv_row(csv, "arl", rep);
    append_report_csv_row(csv, "delay", rep);
    const std::vector<double> means = ingest_csv(csv, 2, true, std::nullopt);
    REQUIRE(means.size() == 2);
    CHECK(means[0] == 42.25);

    DelayBoundReport db;
    db.regime = DelayRegime::well_separated;
    db.leading_term = 10.0;
    db.variance_term = 2.0;
    db.constant_term = 1.0;
    db.bound_value = 13.0;
    const auto dfile = tmp.path / "bound.txt";
    write_report(dfile, db);
    std::ifstream din(dfile);
    std::string dtext((std::istreambuf_iterator<char>(din)), std::istreambuf_iterator<char>());
    CHECK(dtext.find("regime = well_separated") != std::string::npos);
    CHECK(dtext.find("bound = 13") != std::string::npos);
}
