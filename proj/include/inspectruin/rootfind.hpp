#pragma once

#include <vector>

#include "inspectruin/levy_model.hpp"

namespace inspectruin {

// Certified right-half-plane root set of one of the defining denominator
// equations. Construction validates the certificate: exact count, residuals
// below 1e-9 (1 + |root|), closure under conjugation, pairwise separation
// above 1e-7 (near-multiple roots raise a diagnostic instead of silently
// ill-conditioning the downstream linear solves).
struct RootSet {
    std::vector<cplx> roots;        // sorted by (real, imag)
    std::vector<double> residuals;  // |equation value| at each root
    int expected_count = 0;
    // beta = 0 with negative drift puts psi(0) = 0 on the boundary of the
    // right half-plane; it is kept and flagged.
    bool has_boundary_zero = false;
};

// Sorts rates ascending, drops zero-weight components and merges duplicates,
// adding their weights.
void lump_hyperexp(std::vector<double>& p, std::vector<double>& omega);

// Removes zero-weight mixture components of a hyper-Erlang law.
void drop_zero_components(std::vector<int>& k, std::vector<double>& p);

// Roots of sum_i p_i omega_i / (beta + omega_i - phi(a)) = 1. Exactly d real
// roots; the smallest is psi(beta), the rest interlace psi(beta + omega_(i)).
// Duplicate rates are lumped first.
RootSet roots_hyperexp(const LevyModel& m, std::vector<double> p, std::vector<double> omega,
                       double beta);

// Roots of (omega / (beta + omega - phi(a)))^k = 1, via the k level equations
// phi(a) = beta + omega - omega exp(2 pi i j / k).
RootSet roots_erlang(const LevyModel& m, int k, double omega, double beta);

// Roots of sum_i p_i (omega / (beta + omega - phi(a)))^{k_i} = 1. Step one
// solves the degree-k_d polynomial in y = omega / (beta + omega - phi(a)),
// step two the cubic per level.
RootSet roots_hypererlang(const LevyModel& m, std::vector<int> k, std::vector<double> p,
                          double omega, double beta);

// Roots of 1 - ((omega - phi(a))/omega)^{k+1} = p phi(a)/omega for a tilted
// model (positive drift, no killing); k+1 roots, the decay rate among them.
RootSet roots_rooteq_fit(const LevyModel& m_tilted, int k, double p, double omega);

}  // namespace inspectruin
