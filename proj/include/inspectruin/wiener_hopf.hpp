#pragma once

#include <vector>

#include "inspectruin/levy_model.hpp"

namespace inspectruin {

// Transform of the running maximum at an exponential killing time:
// xi(a, b) = E exp(-a max Y(T_b)) = (a - psi(b)) / (phi(a) - b) * b / psi(b).
// The removable singularity at a = psi(b) (within 1e-8) returns the limit
// b / (psi(b) phi'(psi(b))).
cplx xi(const LevyModel& m, cplx alpha, double beta);
double xi(const LevyModel& m, double alpha, double beta);

struct XiDerivConfig {
    double eps_rel = 1e-6;   // two-sided offset around the singular point, scaled by max(1,|psi|)
    int k_max = 12;          // derivative-order cap
};

// n-th alpha-derivative of xi(alpha, beta)^k, by Leibniz recursion on the
// cleared-denominator identity
//   xi^k (phi(a)-b)^k psi(b)^k = ((a - psi(b)) b)^k.
// Queries landing on the singular point a = psi(b) are evaluated at
// psi(b) +/- eps and averaged.
double xi_k_deriv(const LevyModel& m, int k, int n, double alpha, double beta,
                  const XiDerivConfig& cfg = {});

// delta_{n,k} = (-theta)^n / n! * d^n/da^n xi(a, b)^k at a = theta = psi(b):
// the probability that a Poisson(theta) process places exactly n points below
// the running-maximum sum Z_k^+. Requires 0 <= n <= k-1.
double delta_nk(const LevyModel& m, int n, int k, double theta, double beta_plus_omega,
                const XiDerivConfig& cfg = {});

// All of delta_{0,k}, ..., delta_{k-1,k} in one recursion pass.
std::vector<double> delta_all(const LevyModel& m, int k, double beta_plus_omega,
                              const XiDerivConfig& cfg = {});

}  // namespace inspectruin
