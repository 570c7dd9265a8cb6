// SPDX-License-Identifier: MIT
#include "edetect/calibration.hpp"

#include "edetect/errors.hpp"
#include "edetect/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace edetect {

namespace {

// min_{k in [1, k_max]} k exp{-g r^{-1/k}} over precomputed exponents
// c_k = r^{-1/k} = exp(-log(r)/k). Smallest k wins ties.
struct BudgetCurve {
    std::vector<double> c; // c[k-1] = (d_upper/d_lower)^(-1/k)

    explicit BudgetCurve(double ratio, int k_max) : c(static_cast<std::size_t>(k_max)) {
        const double log_ratio = std::log(ratio);
        for (int k = 1; k <= k_max; ++k)
            c[static_cast<std::size_t>(k - 1)] = std::exp(-log_ratio / k);
    }

    double value(double g, int* argmin = nullptr) const {
        double best = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 1; k <= static_cast<int>(c.size()); ++k) {
            const double v = k * std::exp(-g * c[static_cast<std::size_t>(k - 1)]);
            if (v < best) {
                best = v;
                best_k = k;
            }
        }
        if (argmin) *argmin = best_k;
        return best;
    }
};

void check_threshold_inputs(double alpha, double d_lower, double d_upper,
                            int k_max, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("alpha must lie in (0,1)");
    if (!(d_lower > 0.0 && d_lower < d_upper))
        throw config_error("need 0 < d_lower < d_upper");
    if (k_max < 1) throw config_error("k_max must be at least 1");
    if (!(eps > 0.0)) throw config_error("eps must be positive");
}

// Bisection for the infimum of {g in (lo, hi] : h(g) <= alpha} with h
// strictly decreasing. Requires h(hi) <= alpha; returns the feasible side.
template <typename H>
double bisect_infimum(H&& h, double lo, double hi, double alpha, double eps) {
    if (h(hi) > alpha)
        throw calibration_error("threshold budget inequality has no root in bracket");
    for (int it = 0; hi - lo > eps; ++it) {
        if (it > 500)
            throw numeric_error("threshold bisection did not reach tolerance");
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket at floating-point resolution
        if (h(mid) <= alpha)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

double compute_threshold(double alpha, double d_lower, double d_upper,
                         double v_min, int k_max, double eps) {
    check_threshold_inputs(alpha, d_lower, d_upper, k_max, eps);
    if (!(v_min >= 0.0)) throw config_error("v_min must be nonnegative");

    const BudgetCurve f(d_upper / d_lower, k_max);
    const double log_inv_alpha = std::log(1.0 / alpha);
    const double knee = v_min * d_upper;

    if (f.value(knee) <= alpha) {
        // Root lies at or below the knee, where the e^{-g} indicator is off.
        return bisect_infimum([&](double g) { return f.value(g); },
                              log_inv_alpha, knee, alpha, eps);
    }
    // Past the knee the indicator is on. The knee can sit below log(1/alpha)
    // (v_min = 0 in the bounded case); the root is always above it since
    // e^{-g} alone exceeds alpha there.
    const double lo = std::max(knee, log_inv_alpha);
    const double hi = (d_upper / d_lower) * std::log(2.0 / alpha);
    return bisect_infimum([&](double g) { return std::exp(-g) + f.value(g); },
                          lo, hi, alpha, eps);
}

MixtureCalibration compute_baseline(double alpha, double delta_lower,
                                    double delta_upper, int k_max,
                                    const PsiFamily& fam, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("alpha must lie in (0,1)");
    if (!(delta_lower > 0.0 && delta_lower < delta_upper))
        throw config_error("need 0 < delta_lower < delta_upper");
    if (delta_upper >= fam.conjugate_domain_sup())
        throw calibration_error("delta_upper outside the family's conjugate domain");
    if (k_max < 1) throw config_error("k_max must be at least 1");

    MixtureCalibration cal;
    cal.family = fam.family();
    cal.family_param = fam.p0();
    cal.alpha = alpha;
    cal.delta_lower = delta_lower;
    cal.delta_upper = delta_upper;

    const double d_lower = fam.conjugate(delta_lower);
    const double d_upper = fam.conjugate(delta_upper);
    const double lambda_lower = fam.grad_conjugate(delta_lower);
    const double lambda_upper = fam.grad_conjugate(delta_upper);
    const double log_inv_alpha = std::log(1.0 / alpha);

    if (log_inv_alpha <= fam.v_min() * d_lower) {
        // Separation large enough: one baseline at the conservative end.
        cal.single_baseline = true;
        cal.g_alpha = log_inv_alpha;
        cal.k_alpha = 1;
        cal.eta_alpha = 1.0;
        cal.weight_mass = alpha;
        cal.lambdas = {lambda_lower};
        cal.omegas = {1.0};
        return cal;
    }

    cal.single_baseline = false;
    cal.g_alpha = compute_threshold(alpha, d_lower, d_upper, fam.v_min(), k_max, eps);

    const BudgetCurve f(d_upper / d_lower, k_max);
    int k_alpha = 0;
    f.value(cal.g_alpha, &k_alpha);
    cal.k_alpha = k_alpha;
    cal.eta_alpha = std::pow(d_upper / d_lower, 1.0 / k_alpha);

    cal.lambdas.resize(static_cast<std::size_t>(k_alpha) + 1);
    cal.lambdas.front() = lambda_upper;
    cal.lambdas.back() = lambda_lower;
    for (int k = 1; k < k_alpha; ++k) {
        const double target = d_upper * std::pow(cal.eta_alpha, -k);
        const double delta_k = fam.solve_conjugate(target);
        cal.lambdas[static_cast<std::size_t>(k)] = fam.grad_conjugate(delta_k);
    }

    const bool head_active = cal.g_alpha > fam.v_min() * d_upper;
    const double w_head = head_active ? std::exp(-cal.g_alpha) : 0.0;
    const double w_body = std::exp(-cal.g_alpha / cal.eta_alpha);
    cal.weight_mass = w_head + k_alpha * w_body;
    if (cal.weight_mass > alpha * (1.0 + 1e-9))
        throw calibration_error("weight mass exceeds the alpha budget");

    cal.omegas.resize(cal.lambdas.size());
    cal.omegas.front() = w_head / cal.weight_mass;
    for (int k = 1; k <= k_alpha; ++k)
        cal.omegas[static_cast<std::size_t>(k)] = w_body / cal.weight_mass;
    return cal;
}

PsiFamily psi_family_of(const MixtureCalibration& cal) {
    return cal.family == Family::bernoulli ? PsiFamily::bernoulli(cal.family_param)
                                           : PsiFamily::sub_exponential();
}

double zeta_minus_one(double s) {
    if (!(s > 1.0)) throw domain_error("zeta series requires s > 1");
    // sum_{j=2..N} j^{-s} plus the Euler-Maclaurin tail of sum_{j>N} j^{-s}.
    constexpr int kPartial = 100000;
    double partial = 0.0;
    for (int j = kPartial; j >= 2; --j) // small terms first
        partial += std::pow(static_cast<double>(j), -s);
    const double n = static_cast<double>(kPartial);
    const double fn = std::pow(n, -s);
    const double tail = n * fn / (s - 1.0)  // integral_N^inf x^{-s} dx
                        - 0.5 * fn          // tail starts at N+1, not N
                        + (s / 12.0) * fn / n
                        - (s * (s + 1.0) * (s + 2.0) / 720.0) * fn / (n * n * n);
    return partial + tail;
}

double solve_zeta_exponent(double target) {
    if (!(target > 0.0)) throw domain_error("zeta target must be positive");
    constexpr double kTol = 1e-10;

    double lo = 1.0 + 1e-12;
    if (zeta_minus_one(lo) < target)
        throw calibration_error("zeta target too large: exponent would collapse to 1");
    double hi = 2.0;
    int expansions = 0;
    while (zeta_minus_one(hi) > target) {
        hi = 1.0 + 2.0 * (hi - 1.0);
        if (++expansions > 60)
            throw numeric_error("zeta exponent bracket expansion failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = zeta_minus_one(mid);
        if (std::abs(val - target) <= kTol) return mid;
        if (val > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            // Bracket exhausted in double precision; accept if the residual
            // is at the evaluation noise floor relative to the target.
            const double res = std::abs(zeta_minus_one(0.5 * (lo + hi)) - target);
            if (res <= kTol * std::max(1.0, target)) return 0.5 * (lo + hi);
            throw numeric_error("zeta exponent bisection stalled above tolerance");
        }
    }
    throw numeric_error("zeta exponent bisection did not converge");
}

AdaptiveCalibration build_adaptive_calibration(double alpha, double delta_lower,
                                               double delta0, double importance_r,
                                               double schedule_density, int k0,
                                               const PsiFamily& fam, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("alpha must lie in (0,1)");
    if (!(importance_r > 0.0 && importance_r < 1.0))
        throw config_error("importance weight r must lie in (0,1)");
    if (!(schedule_density >= 1.0))
        throw config_error("schedule density must be at least 1");
    if (!(delta_lower > 0.0 && delta_lower < delta0))
        throw config_error("need 0 < delta_lower < delta0");

    AdaptiveCalibration cal;
    cal.core = compute_baseline(importance_r * alpha, delta_lower, delta0, k0, fam, eps);
    if (cal.core.single_baseline)
        throw calibration_error(
            "no-separation scheme needs a multi-baseline core; the requested "
            "interval is already wide enough for a single baseline");

    cal.alpha = alpha;
    cal.importance_r = importance_r;
    cal.schedule_density = schedule_density;
    cal.delta0 = delta0;
    cal.d0 = fam.conjugate(delta0);
    cal.v0 = cal.core.g_alpha / cal.d0;

    const double w = cal.core.weight_mass;
    if (alpha - w <= 0.0)
        throw calibration_error("importance weight r too large: core consumed the alpha budget");
    const double target = (alpha - w) * std::exp(cal.core.g_alpha / cal.core.eta_alpha);
    cal.zeta_s = solve_zeta_exponent(target);
    cal.zeta_precision_warning = cal.zeta_s < 1.05;

    cal.omegas = cal.core.omegas;
    const double rescale = w / alpha;
    for (double& o : cal.omegas) o *= rescale;

    // The full budget must close: W + e^{-g/eta} (zeta(s)-1) == alpha.
    const double total = w + std::exp(-cal.core.g_alpha / cal.core.eta_alpha) *
                                 zeta_minus_one(cal.zeta_s);
    if (total > alpha + 1e-12)
        throw calibration_error("no-separation weights exceed the alpha budget");
    return cal;
}

double boundary_g(double t, const AdaptiveCalibration& cal) {
    if (!(t >= 1.0)) throw domain_error("boundary function argument must satisfy t >= 1");
    const double eta = cal.core.eta_alpha;
    const double pivot = cal.v0 * std::pow(eta, cal.core.k_alpha);
    const double ratio = std::max(t / pivot, 1.0);
    return cal.core.g_alpha +
           cal.zeta_s * eta * std::log1p(std::log(ratio) / std::log(eta));
}

int scheduled_count(const AdaptiveCalibration& cal, std::int64_t n) {
    if (n < 1) throw config_error("scheduled_count requires n >= 1");
    const double growth =
        cal.schedule_density * std::log(static_cast<double>(n)) / std::log(cal.core.eta_alpha);
    return cal.core.k_alpha + static_cast<int>(std::ceil(growth));
}

MintedComponent mint_component(const AdaptiveCalibration& cal, int k) {
    const int k_l = cal.core.k_alpha;
    if (k <= k_l)
        throw config_error("mint_component only defines scheduled indices k > K_L");
    const PsiFamily fam = psi_family_of(cal.core);
    const double eta = cal.core.eta_alpha;
    MintedComponent out;
    out.g_k = cal.core.g_alpha + cal.zeta_s * eta * std::log1p(static_cast<double>(k - k_l));
    const double target = out.g_k / (cal.v0 * std::pow(eta, k));
    out.delta = fam.solve_conjugate(target);
    out.lambda = fam.grad_conjugate(out.delta);
    out.omega = std::exp(-out.g_k / eta) / cal.alpha;
    return out;
}

} // namespace edetect
