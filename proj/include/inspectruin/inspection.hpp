#pragma once

#include <string>
#include <variant>
#include <vector>

#include "inspectruin/rng.hpp"

namespace inspectruin {

// Inter-inspection time families. The first four admit exact transform and
// asymptotics formulas; the lognormal is available for simulation only.
struct Exponential {
    double omega;
};

struct Hyperexponential {
    std::vector<double> p;      // mixing probabilities, positive, sum to 1
    std::vector<double> omega;  // component rates, positive
};

struct Erlang {
    int k;
    double omega;
};

struct HyperErlang {
    std::vector<int> k;      // strictly increasing shape parameters
    std::vector<double> p;   // mixing probabilities, positive, sum to 1
    double omega;            // common scale
};

struct Lognormal {
    double mean;
    double variance;
};

using InspectionLaw = std::variant<Exponential, Hyperexponential, Erlang, HyperErlang, Lognormal>;

// Throws std::invalid_argument on malformed parameters.
void validate(const InspectionLaw& law);

// Collapses degenerate representations: one-component mixtures and
// shape-one Erlangs reduce to the simpler family, so equivalent laws take
// identical evaluation paths.
InspectionLaw simplify(const InspectionLaw& law);

double mean(const InspectionLaw& law);
double variance(const InspectionLaw& law);

double sample(const InspectionLaw& law, Rng& rng);

// Density, for quadrature checks and figure tooling.
double density(const InspectionLaw& law, double t);

std::string family_name(const InspectionLaw& law);
std::string describe(const InspectionLaw& law);

}  // namespace inspectruin
