// SPDX-License-Identifier: MIT
//
// edetect: nonparametric sequential changepoint detection from the command
// line. Subcommands: calibrate, run, simulate, bounds.

#include "edetect/bounds.hpp"
#include "edetect/calibration.hpp"
#include "edetect/detector.hpp"
#include "edetect/errors.hpp"
#include "edetect/io.hpp"
#include "edetect/numeric.hpp"
#include "edetect/simulate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace edetect;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitCalibration = 4;
constexpr int kExitNumeric = 5;
constexpr int kExitIo = 6;

struct FamilyOptions {
    std::string family = "bernoulli"; // bernoulli | bounded
    double p0 = 0.49;
    double mean_bound = 0.494;
    std::optional<double> delta;     // minimum mean gap (bounded family)
    std::optional<double> delta_lower;
    std::optional<double> delta_upper;
};

void add_family_options(CLI::App* cmd, FamilyOptions& opt) {
    cmd->add_option("--family", opt.family, "Observation family: bernoulli | bounded")
        ->check(CLI::IsMember({"bernoulli", "bounded"}))
        ->capture_default_str();
    cmd->add_option("--p0", opt.p0, "Pre-change mean bound of the bernoulli class")
        ->capture_default_str();
    cmd->add_option("--mean-bound", opt.mean_bound,
                    "Pre-change mean bound m of the bounded class")
        ->capture_default_str();
    cmd->add_option("--delta", opt.delta,
                    "Minimum post-change mean gap (bounded family; derives the "
                    "delta range when --delta-lower/upper are absent)");
    cmd->add_option("--delta-lower", opt.delta_lower, "Lower bound on delta*");
    cmd->add_option("--delta-upper", opt.delta_upper, "Upper bound on delta*");
}

PsiFamily family_of(const FamilyOptions& opt) {
    return opt.family == "bernoulli" ? PsiFamily::bernoulli(opt.p0)
                                     : PsiFamily::sub_exponential();
}

double family_param(const FamilyOptions& opt) {
    return opt.family == "bernoulli" ? opt.p0 : opt.mean_bound;
}

DeltaBounds resolve_deltas(const FamilyOptions& opt) {
    if (opt.delta_lower && opt.delta_upper) return {*opt.delta_lower, *opt.delta_upper};
    if (opt.family == "bernoulli") {
        if (opt.delta)
            throw config_error("--delta applies to the bounded family; give "
                               "--delta-lower/--delta-upper for bernoulli");
        throw config_error("bernoulli calibration needs --delta-lower and --delta-upper");
    }
    if (!opt.delta)
        throw config_error("bounded calibration needs --delta or an explicit "
                           "--delta-lower/--delta-upper pair");
    DeltaBounds db = delta_bounds_bounded(opt.mean_bound, *opt.delta);
    if (opt.delta_lower) db.lower = *opt.delta_lower;
    if (opt.delta_upper) db.upper = *opt.delta_upper;
    return db;
}

IncrementKind resolve_kind(const FamilyOptions& opt, const std::string& increment) {
    if (opt.family == "bernoulli") return IncrementKind::exp_bernoulli;
    return increment == "exponential" ? IncrementKind::exp_bounded
                                      : IncrementKind::exact_bounded;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

struct CalibrateArgs {
    FamilyOptions fam;
    double alpha = 1e-3;
    int k_max = 1000;
    double eps = 1e-9;
    std::string mixture = "finite"; // finite | adaptive
    double r = 0.5;
    std::optional<double> delta0;
    double schedule_density = 1.0;
    std::string output;
};

int run_calibrate(const CalibrateArgs& a) {
    const PsiFamily fam = family_of(a.fam);
    const DeltaBounds db = resolve_deltas(a.fam);

    if (a.mixture == "adaptive") {
        const double delta0 = a.delta0.value_or(db.upper);
        AdaptiveCalibration cal = build_adaptive_calibration(
            a.alpha, db.lower, delta0, a.r, a.schedule_density, a.k_max, fam, a.eps);
        // persisted calibrations carry the data-model parameter (p0 or m)
        cal.core.family_param = family_param(a.fam);
        if (cal.zeta_precision_warning)
            std::cerr << "warning: zeta exponent " << format_real(cal.zeta_s)
                      << " is below 1.05; series evaluation loses guaranteed digits\n";
        write_calibration(a.output, cal);
        std::cout << "adaptive calibration: K_L = " << cal.core.k_alpha
                  << ", g_ralpha = " << format_real(cal.core.g_alpha)
                  << ", eta = " << format_real(cal.core.eta_alpha)
                  << ", s = " << format_real(cal.zeta_s) << "\n"
                  << "written to " << a.output << "\n";
    } else {
        MixtureCalibration cal =
            compute_baseline(a.alpha, db.lower, db.upper, a.k_max, fam, a.eps);
        cal.family_param = family_param(a.fam);
        write_calibration(a.output, cal);
        std::cout << "calibration: K_alpha = " << cal.k_alpha
                  << (cal.single_baseline ? " (single baseline)" : "")
                  << ", g_alpha = " << format_real(cal.g_alpha)
                  << ", eta = " << format_real(cal.eta_alpha) << "\n"
                  << "written to " << a.output << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunArgs {
    std::string calibration;
    std::string increment = "exact"; // exact | exponential (bounded family)
    std::string input;
    int column = 0;
    bool header = false;
    std::optional<double> lo, hi;
    std::string mode = "both"; // sr | cusum | both
    std::optional<double> cusum_threshold;
    std::int64_t truncation = 0; // 0: run the whole stream
    std::string output;
};

int run_run(const RunArgs& a) {
    const LoadedCalibration loaded = read_calibration(a.calibration);

    std::optional<std::pair<double, double>> norm;
    if (a.lo.has_value() != a.hi.has_value())
        throw config_error("--lo and --hi must be given together");
    if (a.lo) norm = std::make_pair(*a.lo, *a.hi);
    const std::vector<double> xs = ingest_csv(a.input, a.column, a.header, norm);
    std::cout << "read " << xs.size() << " observations from " << a.input << "\n";

    FamilyOptions fopt;
    double alpha = 0.0;
    StreamDetector det = [&] {
        const MixtureCalibration& core = loaded.finite ? *loaded.finite : loaded.adaptive->core;
        fopt.family = core.family == Family::bernoulli ? "bernoulli" : "bounded";
        const IncrementKind kind = resolve_kind(fopt, a.increment);
        if (loaded.finite) {
            alpha = loaded.finite->alpha;
            return StreamDetector::finite(*loaded.finite, kind, core.family_param);
        }
        alpha = loaded.adaptive->alpha;
        return StreamDetector::adaptive(*loaded.adaptive, kind, core.family_param);
    }();

    const double thr_sr = std::log(1.0 / alpha);
    const double thr_cs = a.cusum_threshold ? std::log(*a.cusum_threshold) : thr_sr;
    const std::int64_t truncation =
        a.truncation > 0 ? a.truncation : static_cast<std::int64_t>(xs.size());

    RunResult rr;
    if (a.mode == "both") {
        rr = run_until_both_stop(det, xs, thr_sr, thr_cs, truncation);
    } else {
        const DetectorMode mode = a.mode == "sr" ? DetectorMode::sr : DetectorMode::cusum;
        rr = run_until_stop(det, xs, mode == DetectorMode::sr ? thr_sr : thr_cs, truncation,
                            mode);
    }

    write_run_path_csv(a.output, rr, thr_sr);
    auto describe = [](std::int64_t idx) {
        return idx < 0 ? std::string("never") : std::to_string(idx);
    };
    std::cout << "sr stop index: " << describe(rr.sr_stop_index) << "\n";
    if (a.mode != "sr") std::cout << "cusum stop index: " << describe(rr.cs_stop_index) << "\n";
    std::cout << "outcome: "
              << (rr.outcome == RunResult::Outcome::stopped
                      ? "stopped"
                      : rr.outcome == RunResult::Outcome::truncated ? "truncated"
                                                                    : "stream-ended")
              << "\npath written to " << a.output << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    FamilyOptions fam;
    double alpha = 0.05;
    int k_max = 1000;
    std::string calibration; // optional: reuse a persisted calibration
    std::string increment = "exact";
    std::string mode = "sr";
    std::string task = "arl"; // arl | delay | stream
    double pre_mean = 0.49;
    double post_mean = 0.7;
    std::string generator = "bernoulli"; // bernoulli | two-point | scaled-binomial
    int levels = 16;
    std::int64_t changepoint = kNeverChanges;
    std::int64_t n = 656;
    std::int64_t replications = 1000;
    std::int64_t horizon = 0; // 0: 10/alpha
    std::uint64_t seed = 1;
    int workers = 1;
    std::string output;
    std::string csv; // optional summary row sink
};

GeneratorSpec make_generator(const SimulateArgs& a, double mean) {
    GeneratorSpec gen;
    gen.kind = a.generator == "two-point"
                   ? GenKind::two_point
                   : a.generator == "scaled-binomial" ? GenKind::scaled_binomial
                                                      : GenKind::bernoulli;
    gen.mean = mean;
    gen.levels = a.levels;
    return gen;
}

int run_simulate(const SimulateArgs& a) {
    if (a.task == "stream") {
        StreamSpec spec;
        spec.pre_change = make_generator(a, a.pre_mean);
        spec.post_change = make_generator(a, a.post_mean);
        spec.changepoint = a.changepoint;
        spec.seed = a.seed;
        const std::vector<double> xs = generate_stream(spec, a.n);
        std::ofstream out(a.output);
        if (!out) throw io_error("cannot open " + a.output + " for writing");
        out << "x\n";
        for (double x : xs) out << format_real(x) << "\n";
        std::cout << "wrote " << xs.size() << " observations to " << a.output << "\n";
        return 0;
    }

    const double horizon =
        a.horizon > 0 ? static_cast<double>(a.horizon) : std::ceil(10.0 / a.alpha);

    DetectorSetup setup;
    const DetectorMode mode = a.mode == "cusum" ? DetectorMode::cusum : DetectorMode::sr;
    const double log_thr = std::log(1.0 / a.alpha);
    if (!a.calibration.empty()) {
        const LoadedCalibration loaded = read_calibration(a.calibration);
        FamilyOptions fopt = a.fam;
        const MixtureCalibration& core = loaded.finite ? *loaded.finite : loaded.adaptive->core;
        fopt.family = core.family == Family::bernoulli ? "bernoulli" : "bounded";
        const IncrementKind kind = resolve_kind(fopt, a.increment);
        if (loaded.finite)
            setup = finite_setup(*loaded.finite, kind, core.family_param, mode,
                                 std::log(1.0 / loaded.finite->alpha));
        else
            setup = adaptive_setup(*loaded.adaptive, kind, core.family_param, mode,
                                   std::log(1.0 / loaded.adaptive->alpha));
    } else {
        const DeltaBounds db = resolve_deltas(a.fam);
        const MixtureCalibration cal =
            compute_baseline(a.alpha, db.lower, db.upper, a.k_max, family_of(a.fam));
        setup = finite_setup(cal, resolve_kind(a.fam, a.increment), family_param(a.fam),
                             mode, log_thr);
    }

    MonteCarloReport rep;
    std::string label;
    if (a.task == "arl") {
        rep = estimate_arl(setup, make_generator(a, a.pre_mean), a.replications,
                           static_cast<std::int64_t>(horizon), a.seed, a.workers);
        label = "arl";
    } else if (a.task == "delay") {
        rep = estimate_delay(setup, make_generator(a, a.post_mean), a.replications,
                             static_cast<std::int64_t>(horizon), a.seed, a.workers);
        label = "delay";
    } else {
        throw config_error("unknown simulate task '" + a.task + "'");
    }

    std::cout << label << ": mean = " << format_real(rep.mean_stat)
              << ", stderr = " << format_real(rep.stderr_stat) << ", truncated "
              << rep.truncation_count << "/" << rep.replications << " at horizon "
              << rep.truncation_horizon << "\n";
    if (!a.output.empty()) {
        write_report(a.output, rep, {{"task", label}});
        std::cout << "report written to " << a.output << "\n";
    }
    if (!a.csv.empty()) append_report_csv_row(a.csv, label, rep);
    return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsArgs {
    FamilyOptions fam;
    double alpha = 1e-3;
    int k_max = 1000;
    std::string calibration; // optional persisted calibration
    std::string regime = "well-separated"; // lorden | well-separated | no-separation
    double q = 0.7;          // bernoulli post-change mean
    std::optional<double> post_mean; // bounded post-change: two-point mean by default
    std::optional<double> m2, m3, m4; // explicit central moments about m
    double r = 0.5;
    std::optional<double> delta0;
    double schedule_density = 1.0;
    std::string output;
};

int run_bounds(const BoundsArgs& a) {
    const PsiFamily fam = family_of(a.fam);

    DivergenceInfo info{};
    if (a.fam.family == "bernoulli") {
        info = divergence_bernoulli(a.fam.p0, a.q);
    } else {
        BoundedMoments moments{};
        if (a.m2) {
            if (!a.post_mean)
                throw config_error("explicit moments need --post-mean as well");
            moments.mean = *a.post_mean;
            moments.second_about_m = *a.m2;
            moments.third_about_m = a.m3;
            moments.fourth_about_m = a.m4;
        } else {
            if (!a.post_mean)
                throw config_error("bounded bounds need --post-mean (two-point law) or "
                                   "explicit --m2/--m3/--m4 moments");
            moments = two_point_moments(*a.post_mean, a.fam.mean_bound);
        }
        info = divergence_bounded(a.fam.mean_bound, moments);
    }
    if (!info.variance)
        throw config_error("supplied moments cannot determine the log-increment variance; "
                           "provide --m3 and --m4");

    DelayBoundReport rep;
    std::vector<std::pair<std::string, std::string>> extra = {
        {"divergence", format_real(info.divergence)},
        {"variance", format_real(*info.variance)},
        {"delta_star", format_real(info.delta_star)},
        {"lambda_star", format_real(info.lambda_star)},
    };

    if (a.regime == "no-separation") {
        AdaptiveCalibration cal = [&] {
            if (!a.calibration.empty()) {
                const LoadedCalibration loaded = read_calibration(a.calibration);
                if (!loaded.adaptive)
                    throw config_error("no-separation bounds need an adaptive calibration");
                return *loaded.adaptive;
            }
            const DeltaBounds db = resolve_deltas(a.fam);
            return build_adaptive_calibration(a.alpha, db.lower, a.delta0.value_or(db.upper),
                                              a.r, a.schedule_density, a.k_max, fam);
        }();
        // the high regime charges the variance at the grid head lambda_0
        double variance = *info.variance;
        if (info.delta_star >= cal.delta0) {
            const double lambda0 = cal.core.lambdas.front();
            if (a.fam.family == "bernoulli") {
                variance = bernoulli_log_increment_variance(a.fam.p0, a.q, lambda0);
            } else {
                const BoundedMoments moments =
                    a.m2 ? BoundedMoments{*a.post_mean, *a.m2, a.m3, a.m4}
                         : two_point_moments(*a.post_mean, a.fam.mean_bound);
                variance = bounded_log_increment_variance(a.fam.mean_bound, moments, lambda0);
            }
        }
        rep = delay_bound_no_separation(cal, info.divergence, variance, info.delta_star);
    } else {
        MixtureCalibration cal = [&] {
            if (!a.calibration.empty()) {
                const LoadedCalibration loaded = read_calibration(a.calibration);
                if (!loaded.finite)
                    throw config_error("this regime needs a finite-mixture calibration");
                return *loaded.finite;
            }
            const DeltaBounds db = resolve_deltas(a.fam);
            return compute_baseline(a.alpha, db.lower, db.upper, a.k_max, fam);
        }();
        if (a.regime == "lorden") {
            rep = delay_bound_lorden(std::log(1.0 / cal.alpha), info.divergence,
                                     *info.variance);
        } else {
            rep = delay_bound_well_separated(cal, info.divergence, *info.variance);
            const double cap = g_alpha_upper_bound(cal.alpha, fam.conjugate(cal.delta_lower),
                                                   fam.conjugate(cal.delta_upper));
            extra.emplace_back("g_alpha", format_real(cal.g_alpha));
            extra.emplace_back("g_alpha_upper_bound", format_real(cap));
        }
    }

    std::cout << "delay bound: " << format_real(rep.bound_value) << " (leading "
              << format_real(rep.leading_term) << ", variance "
              << format_real(rep.variance_term) << ", constant "
              << format_real(rep.constant_term) << ")\n";
    if (!a.output.empty()) {
        write_report(a.output, rep, extra);
        std::cout << "report written to " << a.output << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric sequential changepoint detection with e-detectors"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (flags win)");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    CalibrateArgs cal_args;
    CLI::App* cal = app.add_subcommand("calibrate", "Build and persist a mixture calibration");
    cal->configurable();
    add_family_options(cal, cal_args.fam);
    cal->add_option("--alpha", cal_args.alpha, "ARL level (ARL >= 1/alpha)")
        ->capture_default_str();
    cal->add_option("--k-max", cal_args.k_max, "Maximum number of baselines")
        ->capture_default_str();
    cal->add_option("--eps", cal_args.eps, "Bisection tolerance on the threshold")
        ->capture_default_str();
    cal->add_option("--mixture", cal_args.mixture, "finite | adaptive")
        ->check(CLI::IsMember({"finite", "adaptive"}))
        ->capture_default_str();
    cal->add_option("--r", cal_args.r, "Importance weight of the adaptive core")
        ->capture_default_str();
    cal->add_option("--delta0", cal_args.delta0, "Adaptive core upper delta (default: delta-upper)");
    cal->add_option("--schedule-density", cal_args.schedule_density,
                    "Growth rate of the adaptive schedule")
        ->capture_default_str();
    cal->add_option("--output", cal_args.output, "Calibration file to write")->required();

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run detectors over a CSV stream");
    run->configurable();
    run->add_option("--calibration", run_args.calibration, "Calibration file")->required();
    run->add_option("--increment", run_args.increment,
                    "Bounded-family increment: exact | exponential")
        ->check(CLI::IsMember({"exact", "exponential"}))
        ->capture_default_str();
    run->add_option("--input", run_args.input, "Input CSV")->required();
    run->add_option("--column", run_args.column, "0-based column index")
        ->capture_default_str();
    run->add_flag("--header", run_args.header, "Skip the first row");
    run->add_option("--lo", run_args.lo, "Raw lower bound for normalization");
    run->add_option("--hi", run_args.hi, "Raw upper bound for normalization");
    run->add_option("--mode", run_args.mode, "sr | cusum | both")
        ->check(CLI::IsMember({"sr", "cusum", "both"}))
        ->capture_default_str();
    run->add_option("--cusum-threshold", run_args.cusum_threshold,
                    "Override c_alpha for the CUSUM statistic (default 1/alpha)");
    run->add_option("--truncation", run_args.truncation,
                    "Stop after this many steps (default: whole stream)");
    run->add_option("--output", run_args.output, "Path CSV to write")->required();

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate",
                                       "Monte-Carlo ARL/delay estimation, or synthetic "
                                       "stream generation (--task stream)");
    sim->configurable();
    add_family_options(sim, sim_args.fam);
    sim->add_option("--alpha", sim_args.alpha, "ARL level")->capture_default_str();
    sim->add_option("--k-max", sim_args.k_max, "Maximum number of baselines")
        ->capture_default_str();
    sim->add_option("--calibration", sim_args.calibration,
                    "Reuse a persisted calibration instead of calibrating inline");
    sim->add_option("--increment", sim_args.increment, "exact | exponential")
        ->check(CLI::IsMember({"exact", "exponential"}))
        ->capture_default_str();
    sim->add_option("--mode", sim_args.mode, "sr | cusum")
        ->check(CLI::IsMember({"sr", "cusum"}))
        ->capture_default_str();
    sim->add_option("--task", sim_args.task, "arl | delay | stream")
        ->check(CLI::IsMember({"arl", "delay", "stream"}))
        ->capture_default_str();
    sim->add_option("--pre-mean", sim_args.pre_mean, "Pre-change generator mean")
        ->capture_default_str();
    sim->add_option("--post-mean", sim_args.post_mean, "Post-change generator mean")
        ->capture_default_str();
    sim->add_option("--generator", sim_args.generator,
                    "bernoulli | two-point | scaled-binomial")
        ->check(CLI::IsMember({"bernoulli", "two-point", "scaled-binomial"}))
        ->capture_default_str();
    sim->add_option("--levels", sim_args.levels, "scaled-binomial resolution")
        ->capture_default_str();
    sim->add_option("--changepoint", sim_args.changepoint,
                    "Stream task: observations before the change (-1: never)")
        ->capture_default_str();
    sim->add_option("--n", sim_args.n, "Stream task: observations to generate")
        ->capture_default_str();
    sim->add_option("--replications", sim_args.replications, "Monte-Carlo replications")
        ->capture_default_str();
    sim->add_option("--horizon", sim_args.horizon, "Truncation horizon (default 10/alpha)");
    sim->add_option("--seed", sim_args.seed, "Base seed")->capture_default_str();
    sim->add_option("--workers", sim_args.workers, "Worker threads")->capture_default_str();
    sim->add_option("--output", sim_args.output, "Report (or stream CSV) to write");
    sim->add_option("--csv", sim_args.csv, "Append a summary row to this CSV");

    BoundsArgs bounds_args;
    CLI::App* bnd = app.add_subcommand("bounds", "Closed-form worst average delay bounds");
    bnd->configurable();
    add_family_options(bnd, bounds_args.fam);
    bnd->add_option("--alpha", bounds_args.alpha, "ARL level")->capture_default_str();
    bnd->add_option("--k-max", bounds_args.k_max, "Maximum number of baselines")
        ->capture_default_str();
    bnd->add_option("--calibration", bounds_args.calibration, "Persisted calibration");
    bnd->add_option("--regime", bounds_args.regime,
                    "lorden | well-separated | no-separation")
        ->check(CLI::IsMember({"lorden", "well-separated", "no-separation"}))
        ->capture_default_str();
    bnd->add_option("--q", bounds_args.q, "Bernoulli post-change mean")
        ->capture_default_str();
    bnd->add_option("--post-mean", bounds_args.post_mean,
                    "Bounded post-change mean (two-point law unless --m2 given)");
    bnd->add_option("--m2", bounds_args.m2, "E(X-m)^2 of the post-change law");
    bnd->add_option("--m3", bounds_args.m3, "E(X-m)^3 of the post-change law");
    bnd->add_option("--m4", bounds_args.m4, "E(X-m)^4 of the post-change law");
    bnd->add_option("--r", bounds_args.r, "Adaptive importance weight")
        ->capture_default_str();
    bnd->add_option("--delta0", bounds_args.delta0, "Adaptive core upper delta");
    bnd->add_option("--schedule-density", bounds_args.schedule_density,
                    "Adaptive schedule growth rate")
        ->capture_default_str();
    bnd->add_option("--output", bounds_args.output, "Report file to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (cal->parsed()) return run_calibrate(cal_args);
        if (run->parsed()) return run_run(run_args);
        if (sim->parsed()) return run_simulate(sim_args);
        if (bnd->parsed()) return run_bounds(bounds_args);
        std::cerr << app.help();
        return kExitConfig;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const calibration_error& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitCalibration;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
