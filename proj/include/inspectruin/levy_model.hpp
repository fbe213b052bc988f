#pragma once

#include <complex>

namespace inspectruin {

using cplx = std::complex<double>;

// Net cumulative claim process: Brownian motion (variance sigma2) plus a
// compound Poisson process with exponential(mu) jumps, minus premium drift r.
// Laplace exponent phi(a) = log E exp(-a Y(1)) = a^2 sigma2/2 + r a - lambda a/(mu+a).
struct LevyModel {
    double sigma2;  // Brownian variance coefficient, > 0 for the closed-form decay rate
    double r;       // premium rate, > 0
    double lambda;  // claim arrival rate, >= 0
    double mu;      // exponential claim-size parameter, > 0

    // Throws std::invalid_argument unless sigma2 > 0, r > 0, lambda >= 0, mu > 0,
    // the net profit condition r - lambda/mu > 0 holds, and the light-tail
    // discriminant (mu sigma2 + 2r)^2 - 8 sigma2 (r mu - lambda) is nonnegative.
    void validate() const;

    bool net_profit() const { return r - lambda / mu > 0.0; }
};

// Laplace exponent; pole at alpha = -mu (within 1e-12) raises std::domain_error.
cplx phi(const LevyModel& m, cplx alpha);
double phi(const LevyModel& m, double alpha);

// d phi / d alpha = sigma2 a + r - lambda mu/(mu+a)^2, for alpha > -mu.
double phi_prime(const LevyModel& m, double alpha);

// Right inverse of phi on the increasing branch: the largest root of
// phi(a) = beta with a >= 0. Works for both the base model (phi'(0) > 0)
// and the tilted one (phi'(0) < 0, root on the branch past the minimum).
double psi(const LevyModel& m, double beta);

// Positive solution of phi(-theta) = 0; the smaller root of the quadratic
// factor, always in (0, mu). Throws std::runtime_error when the discriminant
// is negative (no light tail).
double theta_star(const LevyModel& m);

// Exponentially tilted model: exponent phi_Q(a) = phi(a - theta_star).
// Parameters become (sigma2, r - th* sigma2, lambda mu/(mu - th*), mu - th*).
LevyModel twist(const LevyModel& m);

}  // namespace inspectruin
