#pragma once

#include <string>
#include <vector>

#include "inspectruin/inspection.hpp"
#include "inspectruin/levy_model.hpp"
#include "inspectruin/rootfind.hpp"

namespace inspectruin {

// Decay constants of p(u | Omega) ~ gamma exp(-theta_star u) as the initial
// surplus u grows. theta_star depends only on the surplus process; gamma
// carries the inspection law.
struct AsymptoticsResult {
    double theta_star;
    double gamma;
    std::string family;
    RootSet roots;                    // tilted-model roots (no killing)
    std::vector<double> z;            // solved constants of the overshoot transform
    double condition;
    double numerator, denominator;    // the assembled ratio, for diagnostics
};

AsymptoticsResult gamma_exp(const LevyModel& m, double omega);
AsymptoticsResult gamma_hyperexp(const LevyModel& m, std::vector<double> p,
                                 std::vector<double> omega);
AsymptoticsResult gamma_erlang(const LevyModel& m, int k, double omega);
AsymptoticsResult gamma_hypererlang(const LevyModel& m, std::vector<int> k, std::vector<double> p,
                                    double omega);

// Dispatch on the inspection family (lognormal raises std::invalid_argument).
AsymptoticsResult gamma_asymptotics(const LevyModel& m, const InspectionLaw& law);

// Transform of the tilted overshoot, pi_circ(alpha) = int exp(-alpha u)
// E_tilted exp(-theta_star R(u)) du, for the exponential family; its
// alpha -> 0 limit recovers gamma. Exposed for consistency checks.
double pi_circ_exp(const LevyModel& m, double omega, double alpha);

// First-exceedance integral of the tilted master equation for one exponential
// component (theta = psi_tilted(omega)).
cplx F_circ(const LevyModel& m_tilted, double theta_star, cplx alpha, double omega);

}  // namespace inspectruin
