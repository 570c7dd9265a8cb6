// SPDX-License-Identifier: MIT
#include "edetect/simulate.hpp"

#include "edetect/errors.hpp"
#include "edetect/numeric.hpp"

#include <cmath>
#include <random>
#include <thread>

namespace edetect {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform draws built directly from mt19937_64 output; the standard fully
// pins the engine, so streams replay bit-identically everywhere (the
// distribution adaptors in <random> do not make that promise).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double draw(const GeneratorSpec& gen) {
        switch (gen.kind) {
        case GenKind::bernoulli:
        case GenKind::two_point:
            return uniform() < gen.mean ? 1.0 : 0.0;
        case GenKind::scaled_binomial: {
            int hits = 0;
            for (int i = 0; i < gen.levels; ++i)
                if (uniform() < gen.mean) ++hits;
            return static_cast<double>(hits) / gen.levels;
        }
        case GenKind::constant:
            return gen.mean;
        }
        throw config_error("unknown generator kind");
    }

private:
    std::mt19937_64 eng_;
};

} // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream_index) {
    return splitmix64(splitmix64(base) ^ splitmix64(~stream_index));
}

double generator_mean(const GeneratorSpec& gen) { return gen.mean; }

void validate_generator(const GeneratorSpec& gen) {
    switch (gen.kind) {
    case GenKind::bernoulli:
    case GenKind::two_point:
    case GenKind::scaled_binomial:
        if (!(gen.mean >= 0.0 && gen.mean <= 1.0))
            throw config_error("generator mean must lie in [0,1]");
        if (gen.kind == GenKind::scaled_binomial && gen.levels < 1)
            throw config_error("scaled_binomial needs at least one level");
        return;
    case GenKind::constant:
        if (!(gen.mean >= 0.0 && gen.mean <= 1.0))
            throw config_error("constant generator value must lie in [0,1]");
        return;
    }
    throw config_error("unknown generator kind");
}

std::vector<double> generate_stream(const StreamSpec& spec, std::int64_t n) {
    if (n < 1) throw config_error("stream length must be at least 1");
    validate_generator(spec.pre_change);
    validate_generator(spec.post_change);
    if (spec.changepoint < 0 && spec.changepoint != kNeverChanges)
        throw config_error("changepoint must be nonnegative or kNeverChanges");

    Rng rng(mix_seed(spec.seed, 0));
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) {
        const bool pre = spec.changepoint == kNeverChanges || i <= spec.changepoint;
        xs[static_cast<std::size_t>(i - 1)] = rng.draw(pre ? spec.pre_change : spec.post_change);
    }
    return xs;
}

DetectorSetup finite_setup(const MixtureCalibration& cal, IncrementKind kind,
                           double kind_param, DetectorMode mode, double log_threshold) {
    DetectorSetup setup;
    setup.make = [cal, kind, kind_param] { return StreamDetector::finite(cal, kind, kind_param); };
    setup.mode = mode;
    setup.log_threshold = log_threshold;
    setup.pre_change_mean_bound = kind_param;
    return setup;
}

DetectorSetup adaptive_setup(const AdaptiveCalibration& cal, IncrementKind kind,
                             double kind_param, DetectorMode mode, double log_threshold) {
    DetectorSetup setup;
    setup.make = [cal, kind, kind_param] { return StreamDetector::adaptive(cal, kind, kind_param); };
    setup.mode = mode;
    setup.log_threshold = log_threshold;
    setup.pre_change_mean_bound = kind_param;
    return setup;
}

namespace {

// One replication: stop time, or the horizon when truncated.
std::int64_t run_replication(const DetectorSetup& setup, const GeneratorSpec& gen,
                             std::int64_t horizon, std::uint64_t seed, bool* truncated) {
    StreamDetector det = setup.make();
    Rng rng(seed);
    for (std::int64_t n = 1; n <= horizon; ++n) {
        det.observe(rng.draw(gen));
        if (crossed(det.log_aggregate(setup.mode), setup.log_threshold)) {
            *truncated = false;
            return n;
        }
    }
    *truncated = true;
    return horizon;
}

MonteCarloReport monte_carlo(const DetectorSetup& setup, const GeneratorSpec& gen,
                             std::int64_t replications, std::int64_t horizon,
                             std::uint64_t seed, int workers) {
    if (replications < 1) throw config_error("need at least one replication");
    if (horizon < 1) throw config_error("horizon must be at least 1");
    if (!setup.make) throw config_error("detector setup has no factory");
    if (!(setup.log_threshold > 0.0)) throw config_error("log threshold must be positive");
    validate_generator(gen);

    std::vector<double> stops(static_cast<std::size_t>(replications));
    std::vector<char> truncated(static_cast<std::size_t>(replications), 0);

    const int nworkers = std::max(1, std::min<int>(workers, static_cast<int>(replications)));
    auto work = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t rep = begin; rep < end; ++rep) {
            bool trunc = false;
            stops[static_cast<std::size_t>(rep)] = static_cast<double>(run_replication(
                setup, gen, horizon, mix_seed(seed, static_cast<std::uint64_t>(rep + 1)),
                &trunc));
            truncated[static_cast<std::size_t>(rep)] = trunc ? 1 : 0;
        }
    };

    if (nworkers == 1) {
        work(0, replications);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nworkers));
        pool.reserve(static_cast<std::size_t>(nworkers));
        const std::int64_t chunk = (replications + nworkers - 1) / nworkers;
        for (int w = 0; w < nworkers; ++w) {
            const std::int64_t begin = w * chunk;
            const std::int64_t end = std::min<std::int64_t>(begin + chunk, replications);
            if (begin >= end) break;
            pool.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Index-ordered pairwise reduction: the report is identical for any
    // worker count.
    MonteCarloReport rep;
    rep.replications = replications;
    rep.truncation_horizon = horizon;
    for (char t : truncated) rep.truncation_count += t;
    const double n = static_cast<double>(replications);
    rep.mean_stat = pairwise_sum(stops) / n;
    if (replications > 1) {
        std::vector<double> sq(stops.size());
        for (std::size_t i = 0; i < stops.size(); ++i) {
            const double d = stops[i] - rep.mean_stat;
            sq[i] = d * d;
        }
        rep.stderr_stat = std::sqrt(pairwise_sum(sq) / (n * (n - 1.0)));
    }
    return rep;
}

} // namespace

MonteCarloReport estimate_arl(const DetectorSetup& setup, const GeneratorSpec& pre_change,
                              std::int64_t replications, std::int64_t horizon,
                              std::uint64_t seed, int workers) {
    if (setup.pre_change_mean_bound &&
        generator_mean(pre_change) > *setup.pre_change_mean_bound + 1e-12)
        throw config_error("pre-change generator mean exceeds the declared class boundary");
    return monte_carlo(setup, pre_change, replications, horizon, seed, workers);
}

MonteCarloReport estimate_delay(const DetectorSetup& setup, const GeneratorSpec& post_change,
                                std::int64_t replications, std::int64_t horizon,
                                std::uint64_t seed, int workers) {
    return monte_carlo(setup, post_change, replications, horizon, seed, workers);
}

} // namespace edetect
