#include "inspectruin/polyroot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace inspectruin {

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly poly_pow(const Poly& a, int k) {
    Poly c{1.0};
    for (int i = 0; i < k; ++i) c = poly_mul(c, a);
    return c;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

Poly poly_scale(const Poly& a, double s) {
    Poly c = a;
    for (double& v : c) v *= s;
    return c;
}

template <typename C, typename X>
static X eval_horner(const C& p, X x) {
    X acc{};
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + X(p[i]);
    return acc;
}

cplx poly_eval(const Poly& p, cplx x) { return eval_horner(p, x); }
double poly_eval(const Poly& p, double x) { return eval_horner(p, x); }
cplx poly_eval(const CPoly& p, cplx x) { return eval_horner(p, x); }

template <typename X>
static X deriv_eval(const Poly& p, int m, X x) {
    X acc{};
    for (std::size_t i = p.size(); i-- > static_cast<std::size_t>(m);) {
        double f = 1.0;
        for (int j = 0; j < m; ++j) f *= static_cast<double>(i - j);
        acc = acc * x + X(p[i] * f);
    }
    return acc;
}

cplx poly_deriv_eval(const Poly& p, int m, cplx x) { return deriv_eval(p, m, x); }
double poly_deriv_eval(const Poly& p, int m, double x) { return deriv_eval(p, m, x); }

namespace {

CPoly trim(CPoly p) {
    while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
    return p;
}

cplx cpoly_deriv_eval(const CPoly& p, cplx x) {
    cplx acc{};
    for (std::size_t i = p.size(); i-- > 1;) acc = acc * x + p[i] * static_cast<double>(i);
    return acc;
}

}  // namespace

std::vector<cplx> poly_roots(const CPoly& coeffs_in) {
    CPoly p = trim(coeffs_in);
    const int n = static_cast<int>(p.size()) - 1;
    if (n < 0 || (n == 0 && std::abs(p[0]) == 0.0))
        throw std::invalid_argument("poly_roots: zero polynomial");
    if (n == 0) return {};
    if (n == 1) return {-p[0] / p[1]};

    // Cauchy bound for the root moduli, used for the initial ring.
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i] / p[n]));
    const double radius = 1.0 + bound;

    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) {
        const double ang = 2.0 * M_PI * (i + 0.25) / n + 0.5;  // fixed, asymmetric start
        z[i] = 0.7 * radius * cplx(std::cos(ang), std::sin(ang));
    }

    bool converged = false;
    for (int it = 0; it < 400 && !converged; ++it) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            const cplx pv = poly_eval(p, z[i]);
            const cplx dv = cpoly_deriv_eval(p, z[i]);
            cplx ratio = (std::abs(dv) > 0.0) ? pv / dv : cplx(0.0);
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            const cplx denom = 1.0 - ratio * sum;
            const cplx step = (std::abs(denom) > 0.0) ? ratio / denom : ratio;
            z[i] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[i]))) converged = false;
        }
    }
    if (!converged) throw std::runtime_error("poly_roots: Aberth iteration did not converge");

    for (int i = 0; i < n; ++i) {  // Newton polish
        for (int it = 0; it < 4; ++it) {
            const cplx dv = cpoly_deriv_eval(p, z[i]);
            if (std::abs(dv) == 0.0) break;
            z[i] -= poly_eval(p, z[i]) / dv;
        }
    }
    return z;
}

std::vector<cplx> poly_roots(const Poly& coeffs) {
    return poly_roots(CPoly(coeffs.begin(), coeffs.end()));
}

}  // namespace inspectruin
