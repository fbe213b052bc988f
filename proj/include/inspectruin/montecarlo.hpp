#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "inspectruin/inspection.hpp"
#include "inspectruin/levy_model.hpp"
#include "inspectruin/rng.hpp"

namespace inspectruin {

struct SimConfig {
    LevyModel model;
    InspectionLaw inspection;
    double u = 0.0;                // initial surplus
    std::int64_t runs = 10000;     // >= 2 so the sample variance exists
    std::uint64_t seed = 1;
};

// Siegmund-type estimate of the all-time bankruptcy probability: the model is
// simulated under the exponentially tilted measure until the random walk of
// inspection-epoch increments first exceeds u, and exp(-theta_star W) is
// averaged over the exceedance values W. Every weight is bounded by
// exp(-theta_star u), which is what makes the estimator logarithmically
// efficient.
struct ISEstimate {
    double p_hat;
    double std_err;
    std::int64_t runs;
    double gamma_u;     // p_hat * exp(theta_star * u)
    double gamma_u_se;  // std_err * exp(theta_star * u)
    double max_weight;
};

struct CrudeEstimate {
    double p_hat;   // estimate of alpha * pi(alpha, beta | Omega)
    double std_err;
    std::int64_t runs;
    std::int64_t capped_paths;  // paths cut at the inspection cap, counted as survival
};

// Increment of the net claim process over an interval of length dt: exact in
// distribution, -r dt + sigma sqrt(dt) G + sum of Poisson(lambda dt) many
// exponential(mu) jumps.
double sample_increment(const LevyModel& m, double dt, Rng& rng);

// Moment-matched lognormal parameters (mu_ln, sigma2_ln).
std::pair<double, double> lognormal_params(double mean, double variance);

// OpenMP-parallel kernels; results are identical for any thread count because
// each run draws from its own stream and the reduction is a fixed pairwise
// tree over the stored per-run weights.
ISEstimate is_bankruptcy(const SimConfig& cfg);
CrudeEstimate crude_killed(const SimConfig& cfg, double alpha, double beta);

// Serial reference implementations, kept for testing and benchmarking.
ISEstimate is_bankruptcy_serial(const SimConfig& cfg);
CrudeEstimate crude_killed_serial(const SimConfig& cfg, double alpha, double beta);

// Deterministic pairwise summation used by every reduction in this module.
double pairwise_sum(std::span<const double> values);

// Thread budget: min(INSPECTRUIN_THREADS if set, OpenMP default).
int simulation_threads();

}  // namespace inspectruin
