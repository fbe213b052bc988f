#include <doctest.h>

#include <cmath>
#include <vector>

#include "inspectruin/levy_model.hpp"
#include "inspectruin/wiener_hopf.hpp"
#include "oracles.hpp"

using namespace inspectruin;

namespace {
const LevyModel base{0.02, 1.2, 2.0, 2.0};
}

TEST_CASE("running-maximum transform at zero and at the removable point") {
    CHECK(xi(base, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));

    const double beta = 1.0;
    const double ps = psi(base, beta);
    const double lhopital = beta / (ps * phi_prime(base, ps));
    CHECK(xi(base, ps, beta) == doctest::Approx(lhopital).epsilon(1e-12));
    // Cross-check the limit by straddling the singular point.
    const double straddle = 0.5 * (xi(base, ps + 1e-5, beta) + xi(base, ps - 1e-5, beta));
    CHECK(straddle == doctest::Approx(lhopital).epsilon(1e-8));
}

TEST_CASE("running-maximum transform against exact path simulation") {
    const double alpha = 0.5, beta = 1.0;
    Rng rng(123456, 0);
    const int n = 1000000;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = std::exp(-alpha * oracle::running_max_at_kill(base, beta, rng));
    const auto ms = oracle::mean_se(w);
    CHECK(std::abs(ms.mean - xi(base, alpha, beta)) < 3.0 * ms.se);
}

TEST_CASE("derivatives of transform powers") {
    CHECK(xi_k_deriv(base, 1, 0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    const double x3 = std::pow(xi(base, 0.7, 1.0), 3);
    CHECK(xi_k_deriv(base, 3, 0, 0.7, 1.0) == doctest::Approx(x3).epsilon(1e-10));

    const double fd = (std::pow(xi(base, 0.7 + 1e-4, 1.0), 2) -
                       2.0 * std::pow(xi(base, 0.7, 1.0), 2) +
                       std::pow(xi(base, 0.7 - 1e-4, 1.0), 2)) /
                      1e-8;
    const double exact = xi_k_deriv(base, 2, 2, 0.7, 1.0);
    CHECK(std::abs(fd - exact) < 1e-5 * std::abs(exact));
}

TEST_CASE("poisson-mark coefficients") {
    const double beta = 0.5, omega = 1.0;
    const double b = beta + omega;
    const double theta = psi(base, b);

    CHECK(delta_nk(base, 0, 1, theta, b) == doctest::Approx(xi(base, theta, b)).epsilon(1e-10));
    CHECK_THROWS_AS(delta_nk(base, 5, 3, theta, b), std::invalid_argument);

    // delta_{n,k} is the chance that a Poisson(theta) stream marks the
    // running-maximum sum exactly n times.
    const int k = 2, n_target = 1;
    Rng rng(777, 0);
    const int runs = 1000000;
    std::vector<double> ind(runs);
    for (int i = 0; i < runs; ++i) {
        double zsum = 0.0;
        for (int c = 0; c < k; ++c) zsum += oracle::running_max_at_kill(base, b, rng);
        ind[i] = rng.poisson_count(theta, zsum) == n_target ? 1.0 : 0.0;
    }
    const auto ms = oracle::mean_se(ind);
    CHECK(std::abs(ms.mean - delta_nk(base, n_target, k, theta, b)) < 3.0 * ms.se);
}

TEST_CASE("complete monotonicity on the positive axis") {
    const double beta = 0.8;
    double prev = xi(base, 0.0, beta);
    double prev_diff = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double a = 0.12 * i;
        const double v = xi(base, a, beta);
        CHECK(v >= 0.0);
        CHECK(v <= prev);
        const double diff = v - prev;
        if (i > 1) CHECK(diff >= prev_diff - 1e-12);  // convex: differences increase
        prev_diff = diff;
        prev = v;
    }
}

TEST_CASE("tail-weighted transform identity for exponential variables") {
    // For X ~ Exp(c):  int_0^inf e^{-kx}(kx)^j/j! P(X > x) dx
    // equals (1/k)(1 - sum_{n<=j} chi^(n)(k)(-k)^n/n!) with chi(s) = c/(c+s).
    for (double c : {0.5, 1.0, 2.0}) {
        for (double kappa : {0.4, 1.0, 3.0}) {
            for (int j : {0, 1, 2, 3}) {
                const auto integrand = [&](double x) {
                    double t = std::exp(-kappa * x - c * x);
                    for (int i = 1; i <= j; ++i) t *= kappa * x / i;
                    return t;
                };
                const double lhs = oracle::simpson(integrand, 0.0, 80.0 / std::min(c, kappa), 20000);
                double geo = 0.0, term = c / (c + kappa);
                for (int n = 0; n <= j; ++n) {
                    geo += term;
                    term *= kappa / (c + kappa);
                }
                const double rhs = (1.0 - geo) / kappa;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("mark coefficients are subprobabilities") {
    const double beta = 0.5, omega = 1.0;
    for (int k = 1; k <= 6; ++k) {
        const auto deltas = delta_all(base, k, beta + omega);
        double sum = 0.0;
        for (double d : deltas) {
            CHECK(d >= 0.0);
            sum += d;
        }
        CHECK(sum <= 1.0 + 1e-12);
    }
}

TEST_CASE("offset size does not matter") {
    const double b = 1.5;
    const double theta = psi(base, b);
    for (int k : {2, 4, 6}) {
        for (int n = 1; n < k; ++n) {
            const double v1 = xi_k_deriv(base, k, n, theta, b, {1e-6, 12});
            const double v2 = xi_k_deriv(base, k, n, theta, b, {5e-7, 12});
            CHECK(std::abs(v1 - v2) <= 1e-4 * std::abs(v1));
        }
    }
}
