#pragma once

#include "inspectruin/inspection.hpp"

namespace inspectruin {

struct PhaseFit {
    double target_mean, target_variance;
    InspectionLaw result;
};

// Two-moment phase-type fit: a balanced-means hyperexponential pair when the
// squared coefficient of variation exceeds 1, a common-scale mixture of
// Erlang(k) and Erlang(k+1) when it is below 1, the exact exponential at 1.
// Exact boundary values 1/k collapse to a pure Erlang.
PhaseFit fit_two_moment(double mean, double variance);

}  // namespace inspectruin
