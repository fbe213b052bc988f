#include "inspectruin/levy_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace inspectruin {

void LevyModel::validate() const {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("premium rate r must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("arrival rate lambda must be nonnegative");
    if (!(mu > 0.0)) throw std::invalid_argument("claim parameter mu must be positive");
    if (!net_profit())
        throw std::invalid_argument("net profit condition violated: r - lambda/mu must be positive");
    const double b = mu * sigma2 + 2.0 * r;
    if (b * b - 8.0 * sigma2 * (r * mu - lambda) < 0.0)
        throw std::invalid_argument("no light-tail decay rate: discriminant negative");
}

cplx phi(const LevyModel& m, cplx alpha) {
    if (std::abs(alpha + m.mu) < 1e-12)
        throw std::domain_error("phi evaluated at its pole alpha = -mu");
    return 0.5 * m.sigma2 * alpha * alpha + m.r * alpha - m.lambda * alpha / (m.mu + alpha);
}

double phi(const LevyModel& m, double alpha) {
    if (std::abs(alpha + m.mu) < 1e-12)
        throw std::domain_error("phi evaluated at its pole alpha = -mu");
    return 0.5 * m.sigma2 * alpha * alpha + m.r * alpha - m.lambda * alpha / (m.mu + alpha);
}

double phi_prime(const LevyModel& m, double alpha) {
    if (std::abs(alpha + m.mu) < 1e-12)
        throw std::domain_error("phi_prime evaluated at its pole alpha = -mu");
    const double d = m.mu + alpha;
    return m.sigma2 * alpha + m.r - m.lambda * m.mu / (d * d);
}

namespace {

// Bisection + Newton for phi(a) = beta on a bracket [lo, hi] with
// phi(lo) <= beta <= phi(hi) and phi increasing on the bracket.
double solve_increasing(const LevyModel& m, double beta, double lo, double hi) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = phi(m, x) - beta;
        if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(beta))) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double dp = phi_prime(m, x);
        double xn = x - f / dp;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-16 * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace

double psi(const LevyModel& m, double beta) {
    if (beta < 0.0) throw std::invalid_argument("psi requires beta >= 0");
    double lo = 0.0;
    if (phi_prime(m, 0.0) < 0.0) {
        // Tilted branch: start at the minimum of phi, where phi' = 0.
        double a = 0.0, b = 1.0;
        while (phi_prime(m, b) < 0.0) b *= 2.0;
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
            const double mid = 0.5 * (a + b);
            (phi_prime(m, mid) < 0.0 ? a : b) = mid;
        }
        lo = b;
    } else if (beta == 0.0) {
        return 0.0;
    }
    double hi = std::max(1.0, 2.0 * lo);
    while (phi(m, hi) < beta) hi *= 2.0;
    return solve_increasing(m, beta, lo, hi);
}

double theta_star(const LevyModel& m) {
    if (!(m.sigma2 > 0.0)) throw std::invalid_argument("theta_star requires sigma2 > 0");
    if (m.lambda == 0.0) return 2.0 * m.r / m.sigma2;  // Brownian-only zero of phi(-theta)
    const double b = m.mu * m.sigma2 + 2.0 * m.r;
    const double disc = b * b - 8.0 * m.sigma2 * (m.r * m.mu - m.lambda);
    if (disc < 0.0) throw std::runtime_error("no light-tail decay rate: discriminant negative");
    return (b - std::sqrt(disc)) / (2.0 * m.sigma2);
}

LevyModel twist(const LevyModel& m) {
    const double th = theta_star(m);
    if (!(th < m.mu))
        throw std::runtime_error("invalid twist: theta_star >= mu");
    return LevyModel{m.sigma2, m.r - th * m.sigma2, m.lambda * m.mu / (m.mu - th), m.mu - th};
}

}  // namespace inspectruin
