#include "inspectruin/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace inspectruin {

namespace {

constexpr std::int64_t kInspectionCap = 1000000;

void check_config(const SimConfig& cfg) {
    if (cfg.runs < 2) throw std::invalid_argument("need at least 2 runs for a standard error");
    if (cfg.u < 0.0) throw std::invalid_argument("initial surplus must be nonnegative");
    validate(cfg.inspection);
}

double pairwise_sum_range(std::span<const double> v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += v[i];
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum_range(v, lo, mid) + pairwise_sum_range(v, mid, hi);
}

struct MeanSe {
    double mean, se;
};

MeanSe reduce(std::span<const double> w) {
    const double n = static_cast<double>(w.size());
    const double mean = pairwise_sum(w) / n;
    std::vector<double> sq(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = w[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

// One tilted run: walk the inspection-epoch increments until the level is
// exceeded, return exp(-theta_star W) at the exceedance.
double is_run_weight(const LevyModel& mq, const InspectionLaw& law, double theta, double u,
                     Rng& rng) {
    double s = 0.0;
    while (s <= u) {
        const double dt = sample(law, rng);
        s += sample_increment(mq, dt, rng);
    }
    return std::exp(-theta * s);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return pairwise_sum_range(values, 0, values.size());
}

int simulation_threads() {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("INSPECTRUIN_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

double sample_increment(const LevyModel& m, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increment requires dt > 0");
    double z = -m.r * dt;
    if (m.sigma2 > 0.0) z += std::sqrt(m.sigma2 * dt) * rng.normal();
    const std::uint64_t jumps = rng.poisson_count(m.lambda, dt);
    for (std::uint64_t i = 0; i < jumps; ++i) z += rng.exponential(m.mu);
    return z;
}

std::pair<double, double> lognormal_params(double mean, double variance) {
    if (!(mean > 0.0) || !(variance > 0.0))
        throw std::invalid_argument("lognormal_params requires positive mean and variance");
    const double sigma2_ln = std::log(1.0 + variance / (mean * mean));
    return {std::log(mean) - 0.5 * sigma2_ln, sigma2_ln};
}

namespace {

ISEstimate is_reduce(const SimConfig& cfg, double theta, std::span<const double> weights) {
    const auto [mean, se] = reduce(weights);
    double max_w = 0.0;
    for (double w : weights) max_w = std::max(max_w, w);
    if (max_w > std::exp(-theta * cfg.u))
        throw std::runtime_error("weight bound violated: exceedance below the level");
    const double scale = std::exp(theta * cfg.u);
    return {mean, se, cfg.runs, mean * scale, se * scale, max_w};
}

}  // namespace

ISEstimate is_bankruptcy_serial(const SimConfig& cfg) {
    check_config(cfg);
    cfg.model.validate();
    const double theta = theta_star(cfg.model);
    const LevyModel mq = twist(cfg.model);
    std::vector<double> weights(cfg.runs);
    for (std::int64_t i = 0; i < cfg.runs; ++i) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
        weights[i] = is_run_weight(mq, cfg.inspection, theta, cfg.u, rng);
    }
    return is_reduce(cfg, theta, weights);
}

ISEstimate is_bankruptcy(const SimConfig& cfg) {
    check_config(cfg);
    cfg.model.validate();
    const double theta = theta_star(cfg.model);
    const LevyModel mq = twist(cfg.model);
    std::vector<double> weights(cfg.runs);
    const int threads = simulation_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < cfg.runs; ++i) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
        weights[i] = is_run_weight(mq, cfg.inspection, theta, cfg.u, rng);
    }
    (void)threads;
    return is_reduce(cfg, theta, weights);
}

namespace {

struct CrudeRunResult {
    double hit;
    bool capped;
};

CrudeRunResult crude_one(const LevyModel& m, const InspectionLaw& law, double alpha, double beta,
                         Rng& rng) {
    const double u = rng.exponential(alpha);
    const double horizon = rng.exponential(beta);
    double t = 0.0, s = 0.0;
    for (std::int64_t n = 0; n < kInspectionCap; ++n) {
        const double dt = sample(law, rng);
        t += dt;
        if (t > horizon) return {0.0, false};
        s += sample_increment(m, dt, rng);
        if (s > u) return {1.0, false};
    }
    return {0.0, true};  // cap treated as survival
}

CrudeEstimate crude_reduce(const SimConfig& cfg, std::span<const double> hits,
                           std::int64_t capped) {
    const auto [mean, se] = reduce(hits);
    return {mean, se, cfg.runs, capped};
}

}  // namespace

CrudeEstimate crude_killed_serial(const SimConfig& cfg, double alpha, double beta) {
    check_config(cfg);
    cfg.model.validate();
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("crude_killed requires alpha > 0 and beta > 0");
    std::vector<double> hits(cfg.runs);
    std::int64_t capped = 0;
    for (std::int64_t i = 0; i < cfg.runs; ++i) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
        const auto res = crude_one(cfg.model, cfg.inspection, alpha, beta, rng);
        hits[i] = res.hit;
        if (res.capped) ++capped;
    }
    return crude_reduce(cfg, hits, capped);
}

CrudeEstimate crude_killed(const SimConfig& cfg, double alpha, double beta) {
    check_config(cfg);
    cfg.model.validate();
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("crude_killed requires alpha > 0 and beta > 0");
    std::vector<double> hits(cfg.runs);
    std::int64_t capped = 0;
    const int threads = simulation_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) reduction(+ : capped)
#endif
    for (std::int64_t i = 0; i < cfg.runs; ++i) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
        const auto res = crude_one(cfg.model, cfg.inspection, alpha, beta, rng);
        hits[i] = res.hit;
        if (res.capped) ++capped;
    }
    (void)threads;
    return crude_reduce(cfg, hits, capped);
}

}  // namespace inspectruin
