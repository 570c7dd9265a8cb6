// SPDX-License-Identifier: MIT
//
// Python bindings for the e-detector core: psi families, baseline increments,
// mixture calibration, SR/CUSUM detectors, delay bounds, and the Monte-Carlo
// harness.

#include "edetect/bounds.hpp"
#include "edetect/calibration.hpp"
#include "edetect/detector.hpp"
#include "edetect/errors.hpp"
#include "edetect/io.hpp"
#include "edetect/simulate.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>

namespace py = pybind11;
using namespace edetect;

PYBIND11_MODULE(_edetect, m) {
    m.doc() = "Nonparametric sequential changepoint detection with e-detectors";

    // exception mapping; later registrations win, so the most specific go last
    py::register_exception<error>(m, "EdetectError", PyExc_RuntimeError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);
    py::register_exception<calibration_error>(m, "CalibrationError", PyExc_RuntimeError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<io_error>(m, "IoError", PyExc_OSError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);

    py::enum_<Family>(m, "Family")
        .value("bernoulli", Family::bernoulli)
        .value("sub_exponential", Family::sub_exponential);

    py::class_<PsiFamily>(m, "PsiFamily")
        .def_static("bernoulli", &PsiFamily::bernoulli, py::arg("p0"))
        .def_static("sub_exponential", &PsiFamily::sub_exponential)
        .def_property_readonly("family", &PsiFamily::family)
        .def_property_readonly("p0", &PsiFamily::p0)
        .def_property_readonly("v_min", &PsiFamily::v_min)
        .def("eval", &PsiFamily::eval, py::arg("lam"))
        .def("grad", &PsiFamily::grad, py::arg("lam"))
        .def("conjugate", &PsiFamily::conjugate, py::arg("z"))
        .def("grad_conjugate", &PsiFamily::grad_conjugate, py::arg("delta"))
        .def("solve_conjugate", &PsiFamily::solve_conjugate, py::arg("c"));

    py::enum_<IncrementKind>(m, "IncrementKind")
        .value("exp_bernoulli", IncrementKind::exp_bernoulli)
        .value("exp_bounded", IncrementKind::exp_bounded)
        .value("exact_bounded", IncrementKind::exact_bounded);

    py::class_<IncrementSpec>(m, "IncrementSpec")
        .def_readonly("kind", &IncrementSpec::kind)
        .def_readonly("param", &IncrementSpec::param)
        .def_readonly("lam", &IncrementSpec::lambda)
        .def_readonly("psi_at_lambda", &IncrementSpec::psi_at_lambda);

    m.def("make_increment", &make_increment, py::arg("kind"), py::arg("param"),
          py::arg("lam"));
    m.def("log_increment", &log_increment, py::arg("spec"), py::arg("x"));
    m.def(
        "delta_bounds_bounded",
        [](double m_, double gap) {
            const DeltaBounds db = delta_bounds_bounded(m_, gap);
            return py::make_tuple(db.lower, db.upper);
        },
        py::arg("mean_bound"), py::arg("min_gap"));
    m.def("normalize_bounded", &normalize_bounded, py::arg("x_raw"), py::arg("lo"),
          py::arg("hi"));

    py::class_<MixtureCalibration>(m, "MixtureCalibration")
        .def_readonly("family", &MixtureCalibration::family)
        .def_readonly("family_param", &MixtureCalibration::family_param)
        .def_readonly("alpha", &MixtureCalibration::alpha)
        .def_readonly("delta_lower", &MixtureCalibration::delta_lower)
        .def_readonly("delta_upper", &MixtureCalibration::delta_upper)
        .def_readonly("single_baseline", &MixtureCalibration::single_baseline)
        .def_readonly("g_alpha", &MixtureCalibration::g_alpha)
        .def_readonly("k_alpha", &MixtureCalibration::k_alpha)
        .def_readonly("eta_alpha", &MixtureCalibration::eta_alpha)
        .def_readonly("weight_mass", &MixtureCalibration::weight_mass)
        .def_readonly("lambdas", &MixtureCalibration::lambdas)
        .def_readonly("omegas", &MixtureCalibration::omegas);

    m.def("compute_threshold", &compute_threshold, py::arg("alpha"), py::arg("d_lower"),
          py::arg("d_upper"), py::arg("v_min"), py::arg("k_max"), py::arg("eps") = 1e-9);
    m.def("compute_baseline", &compute_baseline, py::arg("alpha"), py::arg("delta_lower"),
          py::arg("delta_upper"), py::arg("k_max"), py::arg("family"),
          py::arg("eps") = 1e-9);
    m.def("zeta_minus_one", &zeta_minus_one, py::arg("s"));
    m.def("solve_zeta_exponent", &solve_zeta_exponent, py::arg("target"));

    py::class_<AdaptiveCalibration>(m, "AdaptiveCalibration")
        .def_readonly("core", &AdaptiveCalibration::core)
        .def_readonly("alpha", &AdaptiveCalibration::alpha)
        .def_readonly("importance_r", &AdaptiveCalibration::importance_r)
        .def_readonly("zeta_s", &AdaptiveCalibration::zeta_s)
        .def_readonly("schedule_density", &AdaptiveCalibration::schedule_density)
        .def_readonly("delta0", &AdaptiveCalibration::delta0)
        .def_readonly("d0", &AdaptiveCalibration::d0)
        .def_readonly("v0", &AdaptiveCalibration::v0)
        .def_readonly("omegas", &AdaptiveCalibration::omegas)
        .def_readonly("zeta_precision_warning", &AdaptiveCalibration::zeta_precision_warning);

    m.def("build_adaptive_calibration", &build_adaptive_calibration, py::arg("alpha"),
          py::arg("delta_lower"), py::arg("delta0"), py::arg("importance_r"),
          py::arg("schedule_density"), py::arg("k0"), py::arg("family"),
          py::arg("eps") = 1e-9);
    m.def("boundary_g", &boundary_g, py::arg("t"), py::arg("calibration"));
    m.def("scheduled_count", &scheduled_count, py::arg("calibration"), py::arg("n"));

    py::class_<MintedComponent>(m, "MintedComponent")
        .def_readonly("lam", &MintedComponent::lambda)
        .def_readonly("omega", &MintedComponent::omega)
        .def_readonly("g_k", &MintedComponent::g_k)
        .def_readonly("delta", &MintedComponent::delta);
    m.def("mint_component", &mint_component, py::arg("calibration"), py::arg("k"));

    py::enum_<DetectorMode>(m, "DetectorMode")
        .value("sr", DetectorMode::sr)
        .value("cusum", DetectorMode::cusum);

    py::class_<StreamDetector>(m, "StreamDetector")
        .def(py::init([](std::vector<IncrementSpec> incs, const std::vector<double>& w) {
                 return StreamDetector(std::move(incs), w);
             }),
             py::arg("increments"), py::arg("weights"))
        .def_static("finite", &StreamDetector::finite, py::arg("calibration"),
                    py::arg("kind"), py::arg("kind_param"))
        .def_static("adaptive", &StreamDetector::adaptive, py::arg("calibration"),
                    py::arg("kind"), py::arg("kind_param"))
        .def_static("adaptive_constant_schedule", &StreamDetector::adaptive_constant_schedule,
                    py::arg("calibration"), py::arg("kind"), py::arg("kind_param"))
        .def("observe", &StreamDetector::observe, py::arg("x"))
        .def_property_readonly("steps", &StreamDetector::steps)
        .def_property_readonly("component_count", &StreamDetector::component_count)
        .def_property_readonly("gamma", &StreamDetector::gamma)
        .def_property_readonly("log_sr", &StreamDetector::log_sr)
        .def_property_readonly("log_cusum", &StreamDetector::log_cusum);

    py::class_<PathRow>(m, "PathRow")
        .def_readonly("step", &PathRow::step)
        .def_readonly("log_sr", &PathRow::log_sr)
        .def_readonly("log_cusum", &PathRow::log_cusum)
        .def_readonly("stopped", &PathRow::stopped);

    py::enum_<RunResult::Outcome>(m, "Outcome")
        .value("stopped", RunResult::Outcome::stopped)
        .value("truncated", RunResult::Outcome::truncated)
        .value("stream_ended", RunResult::Outcome::stream_ended);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("outcome", &RunResult::outcome)
        .def_readonly("mode", &RunResult::mode)
        .def_readonly("sr_stop_index", &RunResult::sr_stop_index)
        .def_readonly("cs_stop_index", &RunResult::cs_stop_index)
        .def_readonly("path", &RunResult::path)
        .def_property_readonly("stop_index", &RunResult::stop_index);

    m.def(
        "run_until_stop",
        [](StreamDetector& det, const std::vector<double>& stream, double log_threshold,
           std::int64_t truncation, DetectorMode mode) {
            return run_until_stop(det, stream, log_threshold, truncation, mode);
        },
        py::arg("detector"), py::arg("stream"), py::arg("log_threshold"),
        py::arg("truncation"), py::arg("mode") = DetectorMode::sr);
    m.def(
        "run_until_both_stop",
        [](StreamDetector& det, const std::vector<double>& stream, double thr_sr,
           double thr_cs, std::int64_t truncation) {
            return run_until_both_stop(det, stream, thr_sr, thr_cs, truncation);
        },
        py::arg("detector"), py::arg("stream"), py::arg("log_threshold_sr"),
        py::arg("log_threshold_cs"), py::arg("truncation"));

    py::class_<DivergenceInfo>(m, "DivergenceInfo")
        .def_readonly("divergence", &DivergenceInfo::divergence)
        .def_readonly("delta_star", &DivergenceInfo::delta_star)
        .def_readonly("lambda_star", &DivergenceInfo::lambda_star)
        .def_readonly("variance", &DivergenceInfo::variance);

    py::class_<BoundedMoments>(m, "BoundedMoments")
        .def(py::init([](double mean, double m2, std::optional<double> m3,
                         std::optional<double> m4) {
                 return BoundedMoments{mean, m2, m3, m4};
             }),
             py::arg("mean"), py::arg("second_about_m"),
             py::arg("third_about_m") = std::nullopt,
             py::arg("fourth_about_m") = std::nullopt)
        .def_readonly("mean", &BoundedMoments::mean)
        .def_readonly("second_about_m", &BoundedMoments::second_about_m)
        .def_readonly("third_about_m", &BoundedMoments::third_about_m)
        .def_readonly("fourth_about_m", &BoundedMoments::fourth_about_m);

    m.def("divergence_bernoulli", &divergence_bernoulli, py::arg("p0"), py::arg("q"));
    m.def("bernoulli_log_increment_variance", &bernoulli_log_increment_variance,
          py::arg("p0"), py::arg("q"), py::arg("lam"));
    m.def("two_point_moments", &two_point_moments, py::arg("mean"), py::arg("m"));
    m.def("divergence_bounded", &divergence_bounded, py::arg("m"), py::arg("moments"));
    m.def("bounded_log_increment_variance", &bounded_log_increment_variance, py::arg("m"),
          py::arg("moments"), py::arg("lam"));

    py::enum_<DelayRegime>(m, "DelayRegime")
        .value("lorden", DelayRegime::lorden)
        .value("well_separated", DelayRegime::well_separated)
        .value("nosep_high", DelayRegime::nosep_high)
        .value("nosep_mid", DelayRegime::nosep_mid)
        .value("nosep_low", DelayRegime::nosep_low);

    py::class_<DelayBoundReport>(m, "DelayBoundReport")
        .def_readonly("regime", &DelayBoundReport::regime)
        .def_readonly("bound_value", &DelayBoundReport::bound_value)
        .def_readonly("leading_term", &DelayBoundReport::leading_term)
        .def_readonly("variance_term", &DelayBoundReport::variance_term)
        .def_readonly("constant_term", &DelayBoundReport::constant_term)
        .def_readonly("k_star", &DelayBoundReport::k_star);

    m.def("delay_bound_lorden", &delay_bound_lorden, py::arg("g"), py::arg("divergence"),
          py::arg("variance"));
    m.def("delay_bound_well_separated", &delay_bound_well_separated, py::arg("calibration"),
          py::arg("divergence"), py::arg("variance"));
    m.def("g_alpha_upper_bound", &g_alpha_upper_bound, py::arg("alpha"), py::arg("d_lower"),
          py::arg("d_upper"));
    m.def("delay_bound_no_separation", &delay_bound_no_separation, py::arg("calibration"),
          py::arg("divergence"), py::arg("variance"), py::arg("delta_star"));

    py::enum_<GenKind>(m, "GenKind")
        .value("bernoulli", GenKind::bernoulli)
        .value("two_point", GenKind::two_point)
        .value("scaled_binomial", GenKind::scaled_binomial)
        .value("constant", GenKind::constant);

    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init([](GenKind kind, double mean, int levels) {
                 return GeneratorSpec{kind, mean, levels};
             }),
             py::arg("kind"), py::arg("mean"), py::arg("levels") = 16)
        .def_readwrite("kind", &GeneratorSpec::kind)
        .def_readwrite("mean", &GeneratorSpec::mean)
        .def_readwrite("levels", &GeneratorSpec::levels);

    py::class_<StreamSpec>(m, "StreamSpec")
        .def(py::init([](const GeneratorSpec& pre, const GeneratorSpec& post,
                         std::int64_t changepoint, std::uint64_t seed) {
                 StreamSpec s;
                 s.pre_change = pre;
                 s.post_change = post;
                 s.changepoint = changepoint;
                 s.seed = seed;
                 return s;
             }),
             py::arg("pre_change"), py::arg("post_change"), py::arg("changepoint"),
             py::arg("seed"))
        .def_readwrite("pre_change", &StreamSpec::pre_change)
        .def_readwrite("post_change", &StreamSpec::post_change)
        .def_readwrite("changepoint", &StreamSpec::changepoint)
        .def_readwrite("seed", &StreamSpec::seed);

    m.attr("NEVER_CHANGES") = kNeverChanges;
    m.def("generate_stream", &generate_stream, py::arg("spec"), py::arg("n"));
    m.def("mix_seed", &mix_seed, py::arg("base"), py::arg("stream_index"));

    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("replications", &MonteCarloReport::replications)
        .def_readonly("mean_stat", &MonteCarloReport::mean_stat)
        .def_readonly("stderr_stat", &MonteCarloReport::stderr_stat)
        .def_readonly("truncation_count", &MonteCarloReport::truncation_count)
        .def_readonly("truncation_horizon", &MonteCarloReport::truncation_horizon);

    py::class_<DetectorSetup>(m, "DetectorSetup");
    m.def("finite_setup", &finite_setup, py::arg("calibration"), py::arg("kind"),
          py::arg("kind_param"), py::arg("mode"), py::arg("log_threshold"));
    m.def("adaptive_setup", &adaptive_setup, py::arg("calibration"), py::arg("kind"),
          py::arg("kind_param"), py::arg("mode"), py::arg("log_threshold"));
    m.def("estimate_arl", &estimate_arl, py::arg("setup"), py::arg("pre_change"),
          py::arg("replications"), py::arg("horizon"), py::arg("seed"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("estimate_delay", &estimate_delay, py::arg("setup"), py::arg("post_change"),
          py::arg("replications"), py::arg("horizon"), py::arg("seed"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    // persistence
    m.def(
        "write_calibration",
        [](const std::filesystem::path& p, const MixtureCalibration& c) {
            write_calibration(p, c);
        },
        py::arg("path"), py::arg("calibration"));
    m.def(
        "write_adaptive_calibration",
        [](const std::filesystem::path& p, const AdaptiveCalibration& c) {
            write_calibration(p, c);
        },
        py::arg("path"), py::arg("calibration"));
    m.def(
        "read_calibration",
        [](const std::filesystem::path& p) {
            const LoadedCalibration loaded = read_calibration(p);
            return py::make_tuple(loaded.finite, loaded.adaptive);
        },
        py::arg("path"), "Returns (finite, adaptive); exactly one is not None.");
    m.def(
        "ingest_csv",
        [](const std::filesystem::path& p, int column, bool has_header,
           std::optional<std::pair<double, double>> normalize) {
            return ingest_csv(p, column, has_header, normalize);
        },
        py::arg("path"), py::arg("column") = 0, py::arg("has_header") = false,
        py::arg("normalize") = std::nullopt);
    m.def(
        "write_run_path_csv",
        [](const std::filesystem::path& p, const RunResult& r, double log_threshold) {
            write_run_path_csv(p, r, log_threshold);
        },
        py::arg("path"), py::arg("result"), py::arg("log_threshold"));
}
