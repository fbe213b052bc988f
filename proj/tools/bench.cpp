// Throughput comparison of the serial reference kernels against the
// OpenMP-parallel ones, verifying bit-identical estimates along the way.

#include <chrono>
#include <cstdio>
#include <string>

#include "inspectruin/montecarlo.hpp"

using namespace inspectruin;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::int64_t runs = argc > 1 ? std::atoll(argv[1]) : 200000;
    const LevyModel model{0.02, 1.2, 2.0, 2.0};
    const SimConfig cfg{model, Lognormal{1.0, 1.0}, 20.0, runs, 42};

    std::printf("threads available: %d\n", simulation_threads());

    auto t0 = clk::now();
    const auto serial = is_bankruptcy_serial(cfg);
    const double t_serial = seconds_since(t0);

    t0 = clk::now();
    const auto parallel = is_bankruptcy(cfg);
    const double t_parallel = seconds_since(t0);

    std::printf("tilted estimator, %lld runs at u=%.0f\n", static_cast<long long>(runs), cfg.u);
    std::printf("  serial   %8.3f s  (%.2f Mruns/s)\n", t_serial, runs / t_serial / 1e6);
    std::printf("  parallel %8.3f s  (%.2f Mruns/s, speedup %.2fx)\n", t_parallel,
                runs / t_parallel / 1e6, t_serial / t_parallel);
    std::printf("  identical results: %s\n",
                serial.p_hat == parallel.p_hat && serial.std_err == parallel.std_err ? "yes"
                                                                                     : "NO");

    t0 = clk::now();
    const auto cserial = crude_killed_serial(cfg, 0.4, 0.25);
    const double ct_serial = seconds_since(t0);
    t0 = clk::now();
    const auto cparallel = crude_killed(cfg, 0.4, 0.25);
    const double ct_parallel = seconds_since(t0);
    std::printf("killed crude estimator, %lld runs\n", static_cast<long long>(runs));
    std::printf("  serial   %8.3f s  (%.2f Mruns/s)\n", ct_serial, runs / ct_serial / 1e6);
    std::printf("  parallel %8.3f s  (%.2f Mruns/s, speedup %.2fx)\n", ct_parallel,
                runs / ct_parallel / 1e6, ct_serial / ct_parallel);
    std::printf("  identical results: %s\n",
                cserial.p_hat == cparallel.p_hat && cserial.std_err == cparallel.std_err ? "yes"
                                                                                         : "NO");
    return serial.p_hat == parallel.p_hat && cserial.p_hat == cparallel.p_hat ? 0 : 1;
}
