// SPDX-License-Identifier: MIT
#include "edetect/bounds.hpp"

#include "edetect/errors.hpp"

#include <cmath>

namespace edetect {

DivergenceInfo divergence_bernoulli(double p0, double q) {
    const PsiFamily fam = PsiFamily::bernoulli(p0);
    if (!(q > p0 && q < 1.0))
        throw domain_error("no detectable change: post-change mean must exceed p0");
    DivergenceInfo info;
    info.delta_star = q - p0;                       // s(x) = x - p0, v == 1
    info.lambda_star = fam.grad_conjugate(info.delta_star);
    info.divergence = fam.conjugate(info.delta_star); // KL(q || p0)
    info.variance = bernoulli_log_increment_variance(p0, q, info.lambda_star);
    return info;
}

double bernoulli_log_increment_variance(double p0, double q, double lambda) {
    (void)p0; // the psi term is constant; only the slope matters for variance
    return q * (1.0 - q) * lambda * lambda;
}

BoundedMoments two_point_moments(double mean, double m) {
    if (!(mean >= 0.0 && mean <= 1.0)) throw config_error("two-point mean must lie in [0,1]");
    BoundedMoments bm;
    bm.mean = mean;
    const double a = 1.0 - m; // X = 1 branch
    const double b = -m;      // X = 0 branch
    bm.second_about_m = mean * a * a + (1.0 - mean) * b * b;
    bm.third_about_m = mean * a * a * a + (1.0 - mean) * b * b * b;
    bm.fourth_about_m = mean * a * a * a * a + (1.0 - mean) * b * b * b * b;
    return bm;
}

DivergenceInfo divergence_bounded(double m, const BoundedMoments& q) {
    if (!(m > 0.0 && m < 1.0)) throw config_error("mean bound must lie in (0,1)");
    if (!(q.mean > m))
        throw domain_error("no detectable change: post-change mean must exceed the bound");
    if (!(q.second_about_m > 0.0))
        throw config_error("second moment about m must be positive");

    const PsiFamily fam = PsiFamily::sub_exponential();
    const double mu = (q.mean - m) / m;            // E s(X)
    const double sigma2 = q.second_about_m / (m * m); // E v(X)
    DivergenceInfo info;
    info.delta_star = mu / sigma2;
    info.lambda_star = fam.grad_conjugate(info.delta_star);
    info.divergence = sigma2 * fam.conjugate(info.delta_star);
    if (q.third_about_m && q.fourth_about_m)
        info.variance = bounded_log_increment_variance(m, q, info.lambda_star);
    return info;
}

double bounded_log_increment_variance(double m, const BoundedMoments& q, double lambda) {
    if (!(q.third_about_m && q.fourth_about_m))
        throw config_error("log-increment variance needs third and fourth moments about m");
    const double psi = PsiFamily::sub_exponential().eval(lambda);
    // Y = lambda s - psi s^2 with s = (X - m)/m; moments of s from the
    // central moments about m.
    const double s1 = (q.mean - m) / m;
    const double s2 = q.second_about_m / (m * m);
    const double s3 = *q.third_about_m / (m * m * m);
    const double s4 = *q.fourth_about_m / (m * m * m * m);
    const double ey = lambda * s1 - psi * s2;
    const double ey2 = lambda * lambda * s2 - 2.0 * lambda * psi * s3 + psi * psi * s4;
    return ey2 - ey * ey;
}

namespace {

DelayBoundReport make_report(DelayRegime regime, double leading, double variance,
                             double constant) {
    DelayBoundReport rep;
    rep.regime = regime;
    rep.leading_term = leading;
    rep.variance_term = variance;
    rep.constant_term = constant;
    rep.bound_value = leading + variance + constant;
    return rep;
}

} // namespace

DelayBoundReport delay_bound_lorden(double g, double divergence, double variance) {
    if (!(divergence > 0.0)) throw domain_error("divergence must be positive");
    if (!(variance >= 0.0)) throw config_error("variance must be nonnegative");
    if (!(g > 0.0)) throw config_error("threshold must be positive");
    return make_report(DelayRegime::lorden, g / divergence,
                       variance / (divergence * divergence), 1.0);
}

DelayBoundReport delay_bound_well_separated(const MixtureCalibration& cal,
                                            double divergence, double variance) {
    DelayBoundReport rep = delay_bound_lorden(cal.g_alpha, divergence, variance);
    rep.regime = DelayRegime::well_separated;
    return rep;
}

double g_alpha_upper_bound(double alpha, double d_lower, double d_upper) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("alpha must lie in (0,1)");
    if (!(d_lower > 0.0 && d_lower < d_upper))
        throw config_error("need 0 < d_lower < d_upper");

    // On eta in [R^{1/j}, R^{1/(j-1)}) the ceiling equals j and the objective
    // is linear increasing in eta, so the infimum is attained at a breakpoint
    // eta_j = R^{1/j}: minimize R^{1/j} (log(1/alpha) + log(1+j)) over j >= 1.
    const double log_inv_alpha = std::log(1.0 / alpha);
    const double log_ratio = std::log(d_upper / d_lower);
    double best = std::numeric_limits<double>::infinity();
    int since_improved = 0;
    for (int j = 1; j <= 2000000; ++j) {
        const double v = std::exp(log_ratio / j) * (log_inv_alpha + std::log1p(j));
        if (v < best) {
            best = v;
            since_improved = 0;
        } else if (++since_improved > 1000 && std::exp(log_ratio / j) < 1.001) {
            break; // objective is increasing for good once eta_j ~ 1
        }
    }
    return best;
}

DelayBoundReport delay_bound_no_separation(const AdaptiveCalibration& cal,
                                           double divergence, double variance,
                                           double delta_star) {
    if (!(divergence > 0.0)) throw domain_error("divergence must be positive");
    if (!(delta_star > 0.0)) throw domain_error("no detectable change: delta_star must be positive");
    if (!(variance >= 0.0)) throw config_error("variance must be nonnegative");

    const PsiFamily fam = psi_family_of(cal.core);
    const double g = cal.core.g_alpha;
    const double d2 = divergence * divergence;

    if (delta_star >= cal.delta0) {
        const double ratio = fam.conjugate(delta_star) / cal.d0;
        return make_report(DelayRegime::nosep_high, g * ratio / divergence,
                           variance * ratio * ratio / d2, 1.0);
    }
    if (delta_star > cal.core.delta_lower) {
        return make_report(DelayRegime::nosep_mid, g / divergence, variance / d2, 1.0);
    }

    // Oracle sits below the core grid: charge the first scheduled baseline
    // that undershoots lambda*.
    const double lambda_star = fam.grad_conjugate(delta_star);
    const int k_l = cal.core.k_alpha;
    const double log_eta = std::log(cal.core.eta_alpha);
    int k_star = -1;
    int k = k_l; // the core end lambda_{K_L} = lambda_L never undershoots
    while (k_star < 0) {
        // jump to the next distinct scheduled value: smallest j with K(j) > k
        const double j_min = std::exp((k - k_l) * log_eta / cal.schedule_density);
        if (j_min > 9.0e15 || k > k_l + 1000000)
            throw numeric_error("no scheduled baseline undershoots lambda*");
        std::int64_t j = static_cast<std::int64_t>(std::floor(j_min)) + 1;
        while (scheduled_count(cal, j) <= k) ++j; // rounding nudge
        k = scheduled_count(cal, j);
        if (mint_component(cal, k).lambda < lambda_star) k_star = k;
    }
    const double g_star =
        g + cal.zeta_s * cal.core.eta_alpha * std::log1p(static_cast<double>(k_star - k_l));
    const double overshoot = std::pow(
        (fam.conjugate(cal.core.delta_lower) / fam.conjugate(delta_star)) * (g_star / g),
        1.0 / cal.schedule_density);
    DelayBoundReport rep = make_report(DelayRegime::nosep_low, g_star / divergence,
                                       variance / d2, overshoot);
    rep.k_star = k_star;
    return rep;
}

} // namespace edetect
