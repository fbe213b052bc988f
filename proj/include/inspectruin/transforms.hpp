#pragma once

#include <vector>

#include "inspectruin/inspection.hpp"
#include "inspectruin/levy_model.hpp"
#include "inspectruin/rootfind.hpp"

namespace inspectruin {

// pi(alpha, beta | Omega) = int_0^inf exp(-alpha u) p(u, T_beta | Omega) du,
// the Laplace transform in the initial surplus of the probability of going
// bankrupt at an inspection epoch before an exponential(beta) horizon.
struct TransformEval {
    double value;            // pi at the query point
    double rho;              // 1 - alpha * pi, the running-max transform
    RootSet roots;           // denominator roots used to pin the constants
    // Solved constant vector. Mixture families index z by component in
    // ascending-rate lumped order; Erlang families by derivative order.
    std::vector<double> z;
    double condition;        // condition estimate of the linear system
};

TransformEval pi_exp(const LevyModel& m, double alpha, double beta, double omega);
TransformEval pi_hyperexp(const LevyModel& m, double alpha, double beta, std::vector<double> p,
                          std::vector<double> omega);
TransformEval pi_erlang(const LevyModel& m, double alpha, double beta, int k, double omega);
TransformEval pi_hypererlang(const LevyModel& m, double alpha, double beta, std::vector<int> k,
                             std::vector<double> p, double omega);

// Dispatch on the inspection family; lognormal laws are simulation-only and
// raise std::invalid_argument here.
TransformEval pi_transform(const LevyModel& m, double alpha, double beta,
                           const InspectionLaw& law);

// Building blocks of the linear systems, exposed for verification:
// F covers the direct-exceedance integral, Gbar multiplies the unknown
// constants in the mixture case.
cplx hyperexp_F(const LevyModel& m, cplx alpha, double beta, double omega);
cplx hyperexp_Gbar(const LevyModel& m, cplx alpha, double beta, double omega);

// Erlang pieces share theta = psi(beta + omega) and the delta coefficients
// delta_{n,k} = (-theta)^n/n! d^n xi^k/da^n at theta.
struct ErlangParts {
    int k;
    double omega, beta, theta;
    std::vector<double> delta;  // delta_{0,k} .. delta_{k-1,k}
};

ErlangParts erlang_parts(const LevyModel& m, int k, double omega, double beta);
cplx erlang_I(const LevyModel& m, const ErlangParts& parts, cplx alpha);
cplx erlang_Jbar(const ErlangParts& parts, int i, cplx alpha);

}  // namespace inspectruin
