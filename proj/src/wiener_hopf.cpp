#include "inspectruin/wiener_hopf.hpp"

#include <cmath>
#include <stdexcept>

namespace inspectruin {

cplx xi(const LevyModel& m, cplx alpha, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("xi requires beta > 0");
    const double ps = psi(m, beta);
    if (std::abs(alpha - ps) < 1e-8)
        return beta / (ps * phi_prime(m, ps));
    return (alpha - ps) / (phi(m, alpha) - beta) * (beta / ps);
}

double xi(const LevyModel& m, double alpha, double beta) {
    return xi(m, cplx(alpha), beta).real();
}

namespace {

// Taylor coefficients of phi(at + t) - b in t, built from the closed-form
// derivatives of the rational exponent.
std::vector<double> phi_series(const LevyModel& m, double at, double b, int n) {
    const double d = m.mu + at;
    std::vector<double> v(n + 1);
    v[0] = phi(m, at) - b;
    if (n >= 1) v[1] = phi_prime(m, at);
    if (n >= 2) v[2] = 0.5 * m.sigma2 + m.lambda * m.mu / (d * d * d);
    double g = m.lambda * m.mu / (d * d * d);
    for (int j = 3; j <= n; ++j) {
        g *= -1.0 / d;
        v[j] = g;
    }
    return v;
}

std::vector<double> series_pow(const std::vector<double>& u, int k) {
    const std::size_t n = u.size();
    std::vector<double> out(n, 0.0);
    out[0] = 1.0;
    for (int c = 0; c < k; ++c) {
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) next[i + j] += out[i] * u[j];
        out = std::move(next);
    }
    return out;
}

// Taylor coefficients of xi(., b)^k in t = alpha - at, from the cleared
// identity xi (phi - b) psi = (alpha - psi) b, differentiated by Leibniz'
// rule, i.e. solved as a series division.
std::vector<double> xi_pow_series(const LevyModel& m, int k, int n_max, double at, double b) {
    const double ps = psi(m, b);
    const auto v = phi_series(m, at, b, n_max + 1);
    std::vector<double> u(n_max + 1);
    if (at == ps) {
        // On the singular point the common zero cancels exactly:
        // xi(ps + t) = (b/ps) / sum_{j>=1} v_j t^{j-1}, so the division is by
        // phi'(ps) instead of a vanishing constant term.
        u[0] = b / (ps * v[1]);
        for (int n = 1; n <= n_max; ++n) {
            double acc = 0.0;
            for (int mm = 0; mm < n; ++mm) acc -= u[mm] * v[n - mm + 1];
            u[n] = acc / v[1];
        }
    } else {
        u[0] = (at - ps) * b / (ps * v[0]);
        for (int n = 1; n <= n_max; ++n) {
            double acc = (n == 1) ? b / ps : 0.0;
            for (int mm = 0; mm < n; ++mm) acc -= u[mm] * v[n - mm];
            u[n] = acc / v[0];
        }
    }
    return series_pow(u, k);
}

// d^n/dt^n of the truncated series at offset s.
double series_deriv_at(const std::vector<double>& coeffs, int n, double s) {
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > static_cast<std::size_t>(n);) {
        double f = 1.0;
        for (int i = 0; i < n; ++i) f *= static_cast<double>(j - i);
        acc = acc * s + coeffs[j] * f;
    }
    return acc;
}

// n-th derivatives (0..n_max) of xi^k. Queries on the singular point
// alpha = psi(b) are evaluated at psi +/- eps and averaged; both sides come
// from the series centered exactly on the cancelled zero, which keeps the
// recursion well conditioned at every order.
std::vector<double> derivs_all(const LevyModel& m, int k, int n_max, double alpha, double beta,
                               const XiDerivConfig& cfg) {
    if (n_max > cfg.k_max)
        throw std::invalid_argument("xi_k_deriv: derivative order exceeds k_max");
    const double ps = psi(m, beta);
    const double scale = std::max(1.0, std::abs(ps));
    std::vector<double> d(n_max + 1);
    if (std::abs(alpha - ps) > 1e-8 * scale) {
        const auto coeffs = xi_pow_series(m, k, n_max, alpha, beta);
        double fact = 1.0;
        for (int n = 0; n <= n_max; ++n) {
            d[n] = coeffs[n] * fact;
            fact *= (n + 1);
        }
        return d;
    }
    const double eps = cfg.eps_rel * scale;
    const auto coeffs = xi_pow_series(m, k, n_max + 8, ps, beta);
    for (int n = 0; n <= n_max; ++n)
        d[n] = 0.5 * (series_deriv_at(coeffs, n, eps) + series_deriv_at(coeffs, n, -eps));
    return d;
}

}  // namespace

double xi_k_deriv(const LevyModel& m, int k, int n, double alpha, double beta,
                  const XiDerivConfig& cfg) {
    if (k < 1) throw std::invalid_argument("xi_k_deriv requires k >= 1");
    if (n < 0) throw std::invalid_argument("xi_k_deriv requires n >= 0");
    if (n == 0) return std::pow(xi(m, alpha, beta), k);
    return derivs_all(m, k, n, alpha, beta, cfg)[n];
}

double delta_nk(const LevyModel& m, int n, int k, double theta, double beta_plus_omega,
                const XiDerivConfig& cfg) {
    if (n < 0 || n > k - 1) throw std::invalid_argument("delta_nk requires 0 <= n <= k-1");
    double f = 1.0;
    for (int j = 1; j <= n; ++j) f *= -theta / j;
    return f * xi_k_deriv(m, k, n, theta, beta_plus_omega, cfg);
}

std::vector<double> delta_all(const LevyModel& m, int k, double beta_plus_omega,
                              const XiDerivConfig& cfg) {
    const double theta = psi(m, beta_plus_omega);
    const auto d = derivs_all(m, k, k - 1, theta, beta_plus_omega, cfg);
    std::vector<double> out(k);
    double f = 1.0;
    for (int n = 0; n < k; ++n) {
        out[n] = f * d[n];
        f *= -theta / (n + 1);
    }
    return out;
}

}  // namespace inspectruin
