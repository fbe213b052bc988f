#include <doctest.h>

#include <cmath>
#include <vector>

#include "inspectruin/levy_model.hpp"
#include "inspectruin/rng.hpp"
#include "oracles.hpp"

using namespace inspectruin;

namespace {
const LevyModel base{0.02, 1.2, 2.0, 2.0};
}

TEST_CASE("laplace exponent values") {
    CHECK(phi(base, 0.0) == 0.0);
    CHECK(std::abs(phi(base, -0.32875)) < 1e-4);

    // Rational form agreement on a grid.
    for (double a = -1.5; a <= 4.0; a += 0.25) {
        const double direct = phi(base, a);
        const double rational = a *
                                (base.sigma2 * a * a + (base.mu * base.sigma2 + 2 * base.r) * a +
                                 2 * (base.r * base.mu - base.lambda)) /
                                (2 * (base.mu + a));
        CHECK(direct == doctest::Approx(rational).epsilon(1e-12));
    }
    CHECK_THROWS_AS(phi(base, -base.mu), std::domain_error);
}

TEST_CASE("laplace exponent against simulated moment generating function") {
    // log E exp(-Y(1)) from one million exact draws.
    Rng rng(20240801, 0);
    const int n = 1000000;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = std::exp(-oracle::increment_over(base, 1.0, rng));
    const auto ms = oracle::mean_se(w);
    const double est = std::log(ms.mean);
    const double se_log = ms.se / ms.mean;
    CHECK(std::abs(est - phi(base, 1.0)) < 3.0 * se_log);
}

TEST_CASE("derivative of the exponent") {
    CHECK(phi_prime(base, 0.0) == doctest::Approx(0.2).epsilon(1e-14));
    const double fd = oracle::central_diff([&](double a) { return phi(base, a); }, 0.0, 1e-6);
    CHECK(std::abs(fd - phi_prime(base, 0.0)) < 1e-8);

    const LevyModel no_claims{0.02, 1.2, 0.0, 2.0};
    CHECK(phi_prime(no_claims, 0.0) == doctest::Approx(1.2));

    CHECK(phi_prime(base, -theta_star(base)) < 0.0);
}

TEST_CASE("right inverse of the exponent") {
    CHECK(psi(base, 0.0) == 0.0);
    CHECK(psi(base, 1.0) == doctest::Approx(oracle::bisect_psi(base, 1.0)).epsilon(1e-10));
    CHECK(psi(base, phi(base, 2.0)) == doctest::Approx(2.0).epsilon(1e-10));

    Rng rng(7, 0);
    for (int i = 0; i < 100; ++i) {
        const double beta = 100.0 * rng.uniform();
        const double root = psi(base, beta);
        CHECK(std::abs(phi(base, root) - beta) <= 1e-9 * std::max(1.0, beta));
    }
}

TEST_CASE("decay rate") {
    const double th = theta_star(base);
    CHECK(std::abs(th - 0.32875) < 5e-5);
    CHECK(std::abs(phi(base, -th)) <= 1e-10);

    const LevyModel other{1.0, 2.0, 1.0, 1.0};
    const double by_bisect = -oracle::bisect_phi(other, 0.0, -other.mu + 1e-6, -1e-6);
    CHECK(theta_star(other) == doctest::Approx(by_bisect).epsilon(1e-10));
}

TEST_CASE("exponential tilt") {
    const double th = theta_star(base);
    const LevyModel q = twist(base);
    CHECK(std::abs(phi(q, th)) < 1e-14);  // phi_Q(theta_star) = phi(0)
    for (double a = 0.1; a <= 2.0; a += 0.1)
        CHECK(phi(q, a) == doctest::Approx(phi(base, a - th)).epsilon(1e-12));
    CHECK(-phi_prime(q, 0.0) > 0.0);  // positive tilted drift
}

TEST_CASE("exponent convexity and inverse identities") {
    Rng rng(99, 0);
    for (int i = 0; i < 100; ++i) {
        const double a = -base.mu + 0.05 + 12.0 * rng.uniform();
        const double h = 1e-4;
        const double second = (phi(base, a + h) - 2.0 * phi(base, a) + phi(base, a - h)) / (h * h);
        CHECK(second > 0.0);
    }

    const double th = theta_star(base);
    const LevyModel q = twist(base);
    for (double beta : {0.0, 0.1, 1.0, 10.0})
        CHECK(psi(q, beta) == doctest::Approx(psi(base, beta) + th).epsilon(1e-9));
}

TEST_CASE("model validation") {
    CHECK_NOTHROW(base.validate());
    const LevyModel no_profit{0.02, 1.0, 2.0, 2.0};  // r = lambda/mu
    const LevyModel no_brownian{0.0, 1.2, 2.0, 2.0};
    CHECK_THROWS_AS(no_profit.validate(), std::invalid_argument);
    CHECK_THROWS_AS(no_brownian.validate(), std::invalid_argument);
    CHECK_THROWS_AS(theta_star(no_brownian), std::invalid_argument);
}
