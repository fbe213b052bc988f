#include "inspectruin/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "inspectruin/polyroot.hpp"

namespace inspectruin {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kSeparationTol = 1e-7;
constexpr double kConjTol = 1e-9;

// Candidate roots of phi(a) = c: the cubic N(a) - c D(a) = 0, Newton-polished.
std::vector<cplx> phi_level_roots(const LevyModel& m, cplx c) {
    const cplx two_c = 2.0 * c;
    CPoly cubic{-two_c * m.mu, cplx(2.0 * (m.r * m.mu - m.lambda)) - two_c,
                cplx(m.mu * m.sigma2 + 2.0 * m.r), cplx(m.sigma2)};
    auto roots = poly_roots(cubic);
    for (auto& a : roots) {
        for (int it = 0; it < 3; ++it) {
            const cplx d = m.mu + a;
            const cplx f = 0.5 * m.sigma2 * a * a + m.r * a - m.lambda * a / d - c;
            const cplx fp = m.sigma2 * a + m.r - m.lambda * m.mu / (d * d);
            if (std::abs(fp) == 0.0) break;
            a -= f / fp;
        }
    }
    return roots;
}

RootSet assemble(const LevyModel& m, std::vector<cplx> candidates, int expected, double beta,
                 const std::function<double(cplx)>& residual) {
    const bool drift_positive = phi_prime(m, 0.0) < 0.0;
    std::vector<cplx> kept;
    bool boundary_zero = false;
    for (const cplx& a : candidates) {
        if (beta == 0.0 && std::abs(a) < 1e-9) {
            // a = 0 always solves the unkilled equation: with negative drift it
            // is the psi(0) boundary root, with positive drift a spurious one.
            if (!drift_positive && !boundary_zero) {
                kept.push_back(cplx(0.0));
                boundary_zero = true;
            }
            continue;
        }
        if (a.real() > -1e-12) kept.push_back(a);
    }
    if (static_cast<int>(kept.size()) != expected) {
        std::ostringstream os;
        os << "root count mismatch: expected " << expected << ", found " << kept.size();
        throw std::runtime_error(os.str());
    }

    // Snap conjugate pairs together so they are exact mirror images; levels
    // solved independently agree only to rounding.
    std::vector<bool> paired(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (paired[i] || kept[i].imag() <= kConjTol) continue;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j == i || paired[j]) continue;
            if (std::abs(kept[j] - std::conj(kept[i])) < kConjTol) {
                const cplx z = 0.5 * (kept[i] + std::conj(kept[j]));
                kept[i] = z;
                kept[j] = std::conj(z);
                paired[i] = paired[j] = true;
                break;
            }
        }
    }

    std::sort(kept.begin(), kept.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });

    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = i + 1; j < kept.size(); ++j)
            if (std::abs(kept[i] - kept[j]) < kSeparationTol)
                throw std::runtime_error("near-multiple roots: separation below 1e-7");

    for (const cplx& a : kept) {
        if (std::abs(a.imag()) <= kConjTol) continue;
        bool paired = false;
        for (const cplx& b : kept)
            if (std::abs(b - std::conj(a)) < kConjTol) { paired = true; break; }
        if (!paired) throw std::runtime_error("complex root without conjugate partner");
    }

    RootSet set;
    set.expected_count = expected;
    set.has_boundary_zero = boundary_zero;
    set.roots = std::move(kept);
    set.residuals.reserve(set.roots.size());
    for (const cplx& a : set.roots) {
        const double res = (boundary_zero && std::abs(a) == 0.0) ? 0.0 : residual(a);
        if (!(res <= kResidualTol * (1.0 + std::abs(a)))) {
            std::ostringstream os;
            os << "root residual " << res << " exceeds tolerance at root " << a.real();
            throw std::runtime_error(os.str());
        }
        set.residuals.push_back(res);
    }
    return set;
}

void check_mixture_args(const std::vector<double>& p, std::size_t n) {
    if (p.size() != n || p.empty()) throw std::invalid_argument("mixture sizes do not match");
    double sum = 0.0;
    bool any = false;
    for (double pi : p) {
        if (pi < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
        if (pi > 0.0) any = true;
        sum += pi;
    }
    if (!any) throw std::invalid_argument("mixture needs a positive weight");
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
}

}  // namespace

void lump_hyperexp(std::vector<double>& p, std::vector<double>& omega) {
    std::vector<std::size_t> idx(p.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });
    std::vector<double> lp, lw;
    for (std::size_t i : idx) {
        if (p[i] == 0.0) continue;
        if (!lw.empty() && std::abs(omega[i] - lw.back()) <= 1e-12 * std::max(1.0, lw.back()))
            lp.back() += p[i];
        else {
            lw.push_back(omega[i]);
            lp.push_back(p[i]);
        }
    }
    p = std::move(lp);
    omega = std::move(lw);
}

void drop_zero_components(std::vector<int>& k, std::vector<double>& p) {
    std::vector<int> nk;
    std::vector<double> np;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        nk.push_back(k[i]);
        np.push_back(p[i]);
    }
    k = std::move(nk);
    p = std::move(np);
}

RootSet roots_hyperexp(const LevyModel& m, std::vector<double> p, std::vector<double> omega,
                       double beta) {
    check_mixture_args(p, omega.size());
    for (double w : omega)
        if (!(w > 0.0)) throw std::invalid_argument("rates must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
    lump_hyperexp(p, omega);
    const int d = static_cast<int>(p.size());

    // Step one in x = phi(a) space: h(x) = sum p_i omega_i/(beta+omega_i-x) - 1
    // has the exact root x = beta, then one root between consecutive poles.
    const auto h = [&](double x) {
        double acc = -1.0;
        for (int i = 0; i < d; ++i) acc += p[i] * omega[i] / (beta + omega[i] - x);
        return acc;
    };
    std::vector<double> xs{beta};
    for (int j = 1; j < d; ++j) {
        double lo = beta + omega[j - 1], hi = beta + omega[j];
        const double pad = 1e-13 * (hi - lo);
        lo += pad;
        hi -= pad;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) < 0.0 ? lo : hi) = mid;
        }
        xs.push_back(0.5 * (lo + hi));
    }

    std::vector<cplx> candidates;
    for (double x : xs) candidates.emplace_back(psi(m, x));

    // Cleared-form residual, scaled by the term magnitudes so it certifies
    // backward error even when some rate is extreme.
    const auto residual = [&](cplx a) {
        const cplx ph = phi(m, a);
        cplx lhs = 1.0;
        double scale = 1.0;
        for (int j = 0; j < d; ++j) {
            lhs *= beta + omega[j] - ph;
            scale *= beta + omega[j] + std::abs(ph);
        }
        cplx rhs = 0.0;
        for (int i = 0; i < d; ++i) {
            cplx term = p[i] * omega[i];
            double tscale = p[i] * omega[i];
            for (int j = 0; j < d; ++j)
                if (j != i) {
                    term *= beta + omega[j] - ph;
                    tscale *= beta + omega[j] + std::abs(ph);
                }
            rhs += term;
            scale += tscale;
        }
        return std::abs(lhs - rhs) / scale;
    };
    return assemble(m, std::move(candidates), d, beta, residual);
}

RootSet roots_erlang(const LevyModel& m, int k, double omega, double beta) {
    if (k < 1) throw std::invalid_argument("Erlang shape must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("rate must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");

    std::vector<cplx> candidates;
    for (int j = 0; j < k; ++j) {
        if (2 * j > k) {  // conjugate level of k - j: mirror for exact pairing
            const std::size_t base = candidates.size() - 3 * static_cast<std::size_t>(2 * j - k);
            for (int t = 0; t < 3; ++t) candidates.push_back(std::conj(candidates[base + t]));
            continue;
        }
        const cplx level = beta + omega - omega * std::exp(cplx(0.0, 2.0 * M_PI * j / k));
        for (const cplx& a : phi_level_roots(m, level)) candidates.push_back(a);
    }

    const auto residual = [&](cplx a) {
        const cplx ph = phi(m, a);
        const cplx s = beta + omega - ph;
        const double scale = std::pow(beta + omega + std::abs(ph), k) + std::pow(omega, k);
        return std::abs(std::pow(s, k) - std::pow(omega, k)) / scale;
    };
    return assemble(m, std::move(candidates), k, beta, residual);
}

RootSet roots_hypererlang(const LevyModel& m, std::vector<int> k, std::vector<double> p,
                          double omega, double beta) {
    check_mixture_args(p, k.size());
    drop_zero_components(k, p);
    if (!(omega > 0.0)) throw std::invalid_argument("rate must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 1) throw std::invalid_argument("shapes must be >= 1");
        if (i > 0 && k[i] <= k[i - 1])
            throw std::invalid_argument("shapes must be strictly increasing");
    }
    const int kd = k.back();

    Poly ypoly(kd + 1, 0.0);
    ypoly[0] = -1.0;
    for (std::size_t i = 0; i < k.size(); ++i) ypoly[k[i]] += p[i];
    const auto ys = poly_roots(ypoly);

    std::vector<cplx> candidates;
    for (const cplx& y : ys) {
        const cplx level = beta + omega - omega / y;
        for (const cplx& a : phi_level_roots(m, level)) candidates.push_back(a);
    }

    const auto residual = [&](cplx a) {
        const cplx ph = phi(m, a);
        const cplx s = beta + omega - ph;
        const double smag = beta + omega + std::abs(ph);
        cplx acc = std::pow(s, kd);
        double scale = std::pow(smag, kd);
        for (std::size_t i = 0; i < k.size(); ++i) {
            acc -= p[i] * std::pow(omega, k[i]) * std::pow(s, kd - k[i]);
            scale += p[i] * std::pow(omega, k[i]) * std::pow(smag, kd - k[i]);
        }
        return std::abs(acc) / scale;
    };
    return assemble(m, std::move(candidates), kd, beta, residual);
}

RootSet roots_rooteq_fit(const LevyModel& m_tilted, int k, double p, double omega) {
    if (k < 1) throw std::invalid_argument("shape must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("rate must be positive");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("weight must lie in [0,1]");
    if (!(phi_prime(m_tilted, 0.0) < 0.0))
        throw std::invalid_argument("roots_rooteq_fit expects a tilted model with positive drift");

    // Step one in w = (omega - phi(a))/omega: w^{k+1} - p w - (1-p) = 0.
    Poly wpoly(k + 2, 0.0);
    wpoly[0] = -(1.0 - p);
    wpoly[1] = -p;
    wpoly[k + 1] = 1.0;
    const auto ws = poly_roots(wpoly);

    std::vector<cplx> candidates;
    for (const cplx& w : ws) {
        const cplx level = omega * (1.0 - w);
        for (const cplx& a : phi_level_roots(m_tilted, level)) candidates.push_back(a);
    }

    const auto residual = [&](cplx a) {
        const cplx ph = phi(m_tilted, a);
        const double wk = std::pow(omega, k);
        const double scale = omega * wk + std::pow(omega + std::abs(ph), k + 1) +
                             p * std::abs(ph) * wk;
        return std::abs(omega * wk - std::pow(omega - ph, k + 1) - p * ph * wk) / scale;
    };
    return assemble(m_tilted, std::move(candidates), k + 1, 0.0, residual);
}

}  // namespace inspectruin
