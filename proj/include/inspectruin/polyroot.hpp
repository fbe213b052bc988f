#pragma once

#include <complex>
#include <vector>

namespace inspectruin {

using cplx = std::complex<double>;

// Dense polynomial coefficients, ascending order: p[0] + p[1] x + ... + p[n] x^n.
using Poly = std::vector<double>;
using CPoly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int k);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);

cplx poly_eval(const Poly& p, cplx x);
double poly_eval(const Poly& p, double x);
cplx poly_eval(const CPoly& p, cplx x);

// m-th derivative of p evaluated at x.
cplx poly_deriv_eval(const Poly& p, int m, cplx x);
double poly_deriv_eval(const Poly& p, int m, double x);

// All complex roots of a polynomial via Aberth-Ehrlich simultaneous iteration,
// with a final Newton polish. Leading zero coefficients are trimmed; throws
// std::invalid_argument for the zero polynomial, std::runtime_error when the
// iteration stalls.
std::vector<cplx> poly_roots(const CPoly& coeffs);
std::vector<cplx> poly_roots(const Poly& coeffs);

}  // namespace inspectruin
