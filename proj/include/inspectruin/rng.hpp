#pragma once

#include <cstdint>

namespace inspectruin {

// Per-run random stream: xoshiro256++ seeded through splitmix64 from
// (seed, stream index). A run's draws depend only on its own stream, so
// estimates are identical no matter how runs are scheduled across threads.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();               // (0, 1)
    double exponential(double rate);
    double normal();                // standard normal, Box-Muller pair cached
    double lognormal(double mu_ln, double sigma_ln);
    // Number of Poisson(rate) arrivals in [0, dt], by summing exponential gaps.
    std::uint64_t poisson_count(double rate, double dt);

  private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace inspectruin
