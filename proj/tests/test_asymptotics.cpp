#include <doctest.h>

#include <cmath>
#include <vector>

#include "inspectruin/asymptotics.hpp"
#include "inspectruin/montecarlo.hpp"
#include "inspectruin/phasefit.hpp"
#include "inspectruin/wiener_hopf.hpp"
#include "oracles.hpp"

using namespace inspectruin;

namespace {

const LevyModel base{0.02, 1.2, 2.0, 2.0};

double is_gamma_u(const InspectionLaw& law, double u, std::int64_t runs, std::uint64_t seed,
                  double* se = nullptr) {
    SimConfig cfg{base, law, u, runs, seed};
    const auto est = is_bankruptcy(cfg);
    if (se) *se = est.gamma_u_se;
    return est.gamma_u;
}

}  // namespace

TEST_CASE("exponential-inspection prefactor") {
    SUBCASE("permanent-inspection limit") {
        const LevyModel q = twist(base);
        const double lim = -phi_prime(base, 0.0) / phi_prime(q, 0.0);
        CHECK(std::abs(gamma_exp(base, 1e9).gamma - lim) < 1e-4);
    }

    SUBCASE("assembled ratio agrees with the closed form") {
        const auto res = gamma_exp(base, 1.0);
        CHECK(res.numerator / res.denominator == doctest::Approx(res.gamma).epsilon(1e-9));
        // kappa simplifies to psi(omega) phi'(0) / omega
        CHECK(std::abs(res.numerator) ==
              doctest::Approx(psi(base, 1.0) * phi_prime(base, 0.0) / 1.0).epsilon(1e-9));
    }

    SUBCASE("small-alpha limit of the overshoot transform") {
        const std::vector<double> xs{1e-3, 1e-4, 1e-5};
        std::vector<double> fs;
        for (double a : xs) fs.push_back(a * pi_circ_exp(base, 1.0, a));
        const double lim = oracle::extrapolate_to_zero(xs, fs);
        CHECK(std::abs(lim - gamma_exp(base, 1.0).gamma) < 1e-6);
    }

    SUBCASE("importance sampling confirms the prefactor") {
        double se = 0.0;
        const double gu = is_gamma_u(Exponential{1.0}, 40.0, 100000, 91, &se);
        CHECK(std::abs(gu - gamma_exp(base, 1.0).gamma) < 3.0 * se);
    }

    SUBCASE("master equation holds for the overshoot transform") {
        const LevyModel q = twist(base);
        const double omega = 1.0;
        const double theta = psi(q, omega);
        const double xi_t = xi(q, theta, omega);
        const double pc_theta =
            (theta - theta_star(base)) / theta *
            0.5 * (F_circ(q, theta_star(base), cplx(theta_star(base) + 1e-6), omega) +
                   F_circ(q, theta_star(base), cplx(theta_star(base) - 1e-6), omega))
                .real() /
            xi_t;
        Rng rng(5150, 0);
        for (int i = 0; i < 20; ++i) {
            double a = 0.05 + 3.0 * rng.uniform();
            if (std::abs(a - theta_star(base)) < 1e-2 || std::abs(a - theta) < 1e-2) continue;
            const double lhs = pi_circ_exp(base, omega, a);
            const double rhs = (F_circ(q, theta_star(base), cplx(a), omega).real() +
                                theta / (theta - a) *
                                    (lhs * xi(q, a, omega) - pc_theta * xi_t));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("mixed-rate prefactor") {
    SUBCASE("degenerate mixtures collapse") {
        CHECK(gamma_hyperexp(base, {1.0}, {0.7}).gamma ==
              doctest::Approx(gamma_exp(base, 0.7).gamma).epsilon(1e-9));
        CHECK(gamma_hyperexp(base, {0.5, 0.5}, {1.0, 1.0}).gamma ==
              doctest::Approx(gamma_exp(base, 1.0).gamma).epsilon(1e-9));
    }

    SUBCASE("product derivative matches finite differences") {
        const std::vector<double> w{0.6, 1.9};
        const double th = theta_star(base);
        const auto bigphi = [&](double a) {
            double prod = 1.0;
            for (double wi : w) prod *= wi - phi(base, a - th);
            return prod;
        };
        const double fd = oracle::central_diff(bigphi, 0.0, 1e-6);
        const double analytic = -phi_prime(base, -th) * (w[0] + w[1]);
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
    }

    SUBCASE("importance sampling confirms the variance-3 fit prefactor") {
        const auto fit = fit_two_moment(1.0, 3.0);
        const auto& he = std::get<Hyperexponential>(fit.result);
        const auto res = gamma_hyperexp(base, he.p, he.omega);
        double se = 0.0;
        const double gu = is_gamma_u(fit.result, 40.0, 100000, 92, &se);
        CHECK(std::abs(gu - res.gamma) < 3.0 * se);
    }
}

TEST_CASE("erlang prefactor") {
    SUBCASE("shape one is the exponential case") {
        CHECK(gamma_erlang(base, 1, 1.0).gamma ==
              doctest::Approx(gamma_exp(base, 1.0).gamma).epsilon(1e-8));
    }

    SUBCASE("denominator sign") {
        const auto res = gamma_erlang(base, 2, 2.0);
        CHECK(res.denominator == doctest::Approx(-phi_prime(base, -res.theta_star)).epsilon(1e-12));
        CHECK(res.denominator > 0.0);
    }

    SUBCASE("importance sampling confirms the prefactor") {
        const auto res = gamma_erlang(base, 4, 4.0);
        double se = 0.0;
        const double gu = is_gamma_u(Erlang{4, 4.0}, 40.0, 100000, 93, &se);
        CHECK(std::abs(gu - res.gamma) < 3.0 * se);
    }
}

TEST_CASE("erlang-mixture prefactor") {
    SUBCASE("degenerate mixtures collapse") {
        CHECK(gamma_hypererlang(base, {3}, {1.0}, 2.0).gamma ==
              doctest::Approx(gamma_erlang(base, 3, 2.0).gamma).epsilon(1e-8));
        CHECK(gamma_hypererlang(base, {1, 2}, {1.0, 0.0}, 1.0).gamma ==
              doctest::Approx(gamma_exp(base, 1.0).gamma).epsilon(1e-8));
    }

    SUBCASE("importance sampling confirms the low-variance fit prefactors") {
        for (double var : {0.45, 0.5}) {
            const auto fit = fit_two_moment(1.0, var);
            const auto res = gamma_asymptotics(base, fit.result);
            double se = 0.0;
            const double gu = is_gamma_u(fit.result, 40.0, 100000, 94, &se);
            CHECK(std::abs(gu - res.gamma) < 3.0 * se);
        }
    }
}

TEST_CASE("prefactor invariants") {
    SUBCASE("identical decay rate across families") {
        const double th = theta_star(base);
        CHECK(gamma_exp(base, 1.0).theta_star == th);
        CHECK(gamma_hyperexp(base, {0.4, 0.6}, {0.5, 2.0}).theta_star == th);
        CHECK(gamma_erlang(base, 3, 3.0).theta_star == th);
        CHECK(gamma_hypererlang(base, {2, 3}, {0.6, 0.4}, 2.4).theta_star == th);
    }

    SUBCASE("prefactors never exceed one") {
        for (double w : {0.2, 1.0, 5.0}) CHECK(gamma_exp(base, w).gamma <= 1.0);
        CHECK(gamma_hyperexp(base, {0.3, 0.7}, {0.4, 3.0}).gamma <= 1.0);
        for (int k : {2, 5, 8}) CHECK(gamma_erlang(base, k, static_cast<double>(k)).gamma <= 1.0);
        CHECK(gamma_hypererlang(base, {1, 4}, {0.2, 0.8}, 2.0).gamma <= 1.0);
    }

    SUBCASE("frequency limit chain is monotone") {
        const LevyModel q = twist(base);
        const double lim = -phi_prime(base, 0.0) / phi_prime(q, 0.0);
        double prev = 0.0;
        for (double w : {1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0}) {
            const double g = gamma_exp(base, w).gamma;
            CHECK(g > prev);
            CHECK(g < lim + 1e-9);
            prev = g;
        }
    }

    SUBCASE("lognormal has no closed form") {
        CHECK_THROWS_AS(gamma_asymptotics(base, Lognormal{1.0, 1.0}), std::invalid_argument);
    }
}
