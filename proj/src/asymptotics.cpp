#include "inspectruin/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "inspectruin/linsolve.hpp"
#include "inspectruin/transforms.hpp"
#include "inspectruin/wiener_hopf.hpp"

namespace inspectruin {

namespace {

constexpr double kSingularWindow = 1e-8;
constexpr double kOffsetEps = 1e-6;

// Two-sided real offsets for the removable singularities sitting on the real
// axis (theta_star and the psi values).
cplx eval_offset_c(cplx alpha, const std::vector<double>& singular,
                   const std::function<cplx(cplx)>& f) {
    const double win = kSingularWindow * std::max(1.0, std::abs(alpha));
    bool near = false;
    for (double s : singular)
        if (std::abs(alpha - s) < win) { near = true; break; }
    if (!near) return f(alpha);
    const double eps = kOffsetEps * std::max(1.0, std::abs(alpha));
    return 0.5 * (f(alpha + eps) + f(alpha - eps));
}

LinearSolution solve_realified_rows(const RootSet& roots,
                                    const std::vector<std::vector<cplx>>& rows_a,
                                    const std::vector<cplx>& rows_b) {
    const std::size_t n = roots.roots.size();
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t j = 0; j < n; ++j) {
        const double im = roots.roots[j].imag();
        if (std::abs(im) <= 1e-9) {
            std::vector<double> row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = rows_a[j][i].real();
            a.push_back(std::move(row));
            b.push_back(rows_b[j].real());
        } else if (im > 0.0) {
            std::vector<double> re(n), imrow(n);
            for (std::size_t i = 0; i < n; ++i) {
                re[i] = rows_a[j][i].real();
                imrow[i] = rows_a[j][i].imag();
            }
            a.push_back(std::move(re));
            b.push_back(rows_b[j].real());
            a.push_back(std::move(imrow));
            b.push_back(rows_b[j].imag());
        }
    }
    if (a.size() != n) throw std::runtime_error("realification lost rows: unpaired complex roots");
    return solve_dense(std::move(a), std::move(b));
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0 + 1e-12)
        throw std::runtime_error("asymptotic prefactor outside (0,1]: diagnostic");
}

}  // namespace

cplx F_circ(const LevyModel& m_tilted, double theta_star, cplx alpha, double omega) {
    const double theta = psi(m_tilted, omega);
    const cplx xi_t = xi(m_tilted, cplx(theta), omega);
    const cplx xi_s = xi(m_tilted, cplx(theta_star), omega);
    const cplx xi_a = xi(m_tilted, alpha, omega);
    return theta / (theta_star - theta) *
           ((xi_t - xi_a) / (alpha - theta) - (xi_s - xi_a) / (alpha - theta_star));
}

namespace {

struct ExpCircParts {
    LevyModel mq;
    double theta_star, theta, xi_q_theta, z;
};

ExpCircParts exp_circ_parts(const LevyModel& m, double omega) {
    ExpCircParts p;
    p.mq = twist(m);
    p.theta_star = theta_star(m);
    p.theta = psi(p.mq, omega);
    p.xi_q_theta = xi(p.mq, p.theta, omega);
    // pi_circ at theta, pinned by the root alpha = theta_star of the left side.
    const cplx f_at_star = eval_offset_c(
        cplx(p.theta_star), {p.theta_star, p.theta},
        [&](cplx a) { return F_circ(p.mq, p.theta_star, a, omega); });
    p.z = ((p.theta - p.theta_star) / p.theta * f_at_star).real() / p.xi_q_theta;
    return p;
}

}  // namespace

double pi_circ_exp(const LevyModel& m, double omega, double alpha) {
    const ExpCircParts p = exp_circ_parts(m, omega);
    const auto eval = [&](cplx a) {
        const cplx f = F_circ(p.mq, p.theta_star, a, omega);
        const cplx num = (p.theta - a) * f - p.theta * p.z * p.xi_q_theta;
        const cplx den = p.theta - a - p.theta * xi(p.mq, a, omega);
        return num / den;
    };
    return eval_offset_c(cplx(alpha), {p.theta_star, p.theta}, eval).real();
}

AsymptoticsResult gamma_exp(const LevyModel& m, double omega) {
    m.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const ExpCircParts p = exp_circ_parts(m, omega);
    const double psi_w = psi(m, omega);

    AsymptoticsResult out;
    out.theta_star = p.theta_star;
    out.family = "exponential";
    out.roots = roots_hyperexp(p.mq, {1.0}, {omega}, 0.0);
    out.z = {p.z};
    out.condition = 1.0;
    const double f0 = eval_offset_c(cplx(0.0), {p.theta_star, p.theta},
                                    [&](cplx a) { return F_circ(p.mq, p.theta_star, a, omega); })
                          .real();
    out.numerator = p.theta * (f0 - p.z * p.xi_q_theta);        // assembled kappa
    out.denominator = -p.theta * phi_prime(p.mq, 0.0) / omega;  // -(1 + theta f(0, omega))
    out.gamma = -phi_prime(m, 0.0) / phi_prime(p.mq, 0.0) * psi_w / (psi_w + p.theta_star);
    check_gamma(out.gamma);
    return out;
}

AsymptoticsResult gamma_hyperexp(const LevyModel& m, std::vector<double> p,
                                 std::vector<double> omega) {
    m.validate();
    lump_hyperexp(p, omega);
    const std::size_t d = p.size();
    const LevyModel mq = twist(m);
    const double th_star = theta_star(m);

    AsymptoticsResult out;
    out.theta_star = th_star;
    out.family = "hyperexp";
    out.roots = roots_hyperexp(mq, p, omega, 0.0);

    std::vector<double> theta(d), xi_q(d);
    for (std::size_t i = 0; i < d; ++i) {
        theta[i] = psi(mq, omega[i]);
        xi_q[i] = xi(mq, theta[i], omega[i]);
    }

    std::vector<std::vector<cplx>> rows_a(d, std::vector<cplx>(d));
    std::vector<cplx> rows_b(d);
    for (std::size_t j = 0; j < d; ++j) {
        const cplx aj = out.roots.roots[j];
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> sing{th_star, theta[i]};
            rows_b[j] += p[i] * eval_offset_c(aj, sing, [&](cplx a) {
                return F_circ(mq, th_star, a, omega[i]);
            });
            rows_a[j][i] = p[i] * theta[i] / (theta[i] - aj) * xi_q[i];
        }
    }
    auto sol = solve_realified_rows(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    // Phi(a) = prod_i (omega_i - phi_Q(a)); at zero the product-rule
    // derivatives only need phi_Q'(0) = phi'(-theta_star).
    const double dphi = phi_prime(mq, 0.0);
    double phi0 = 1.0;
    for (double w : omega) phi0 *= w;
    double dphi0 = 0.0;  // Phi'(0)
    for (std::size_t i = 0; i < d; ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) prod *= omega[j];
        dphi0 += -dphi * prod;
    }
    double weighted_dphi_i = 0.0;  // sum_i p_i Phi_i'(0) omega_i
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            double prod = 1.0;
            for (std::size_t l = 0; l < d; ++l)
                if (l != i && l != j) prod *= omega[l];
            acc += -dphi * prod;
        }
        weighted_dphi_i += p[i] * acc * omega[i];
    }

    double num = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double f0 =
            eval_offset_c(cplx(0.0), {th_star, theta[i]},
                          [&](cplx a) { return F_circ(mq, th_star, a, omega[i]); })
                .real();
        num += p[i] * (f0 - xi_q[i] * out.z[i]);
    }
    out.numerator = phi0 * num;
    out.denominator = dphi0 - weighted_dphi_i;
    out.gamma = out.numerator / out.denominator;
    check_gamma(out.gamma);
    return out;
}

namespace {

// Erlang overshoot pieces under the tilted measure, sharing
// theta = psi_tilted(omega) and the tilted delta coefficients.
struct CircParts {
    int k;
    double omega, theta, theta_star;
    std::vector<double> delta;  // delta^Q_{0,k} .. delta^Q_{k-1,k}
};

CircParts circ_parts(const LevyModel& mq, double th_star, int k, double omega) {
    if (k < 1 || k > 12)
        throw std::invalid_argument("Erlang shape must lie in [1, 12] (derivative-order cap)");
    CircParts parts;
    parts.k = k;
    parts.omega = omega;
    parts.theta = psi(mq, omega);
    parts.theta_star = th_star;
    parts.delta = delta_all(mq, k, omega);
    return parts;
}

cplx erlang_Icirc_raw(const LevyModel& mq, const CircParts& parts, cplx alpha) {
    const double theta = parts.theta, th_star = parts.theta_star;
    const cplx xik_a = std::pow(xi(mq, alpha, parts.omega), parts.k);
    const double xik_s = std::pow(xi(mq, th_star, parts.omega), parts.k);
    const double lead = std::pow(theta / (theta - th_star), parts.k);
    cplx acc = lead * (xik_s - xik_a) / (alpha - th_star);
    // Taylor partial sums of xi^k around theta, written through the deltas:
    // sum_{m<=n} xi^{(m)}(theta) (a-theta)^m/m! = sum_{m<=n} delta_m ((theta-a)/theta)^m.
    const cplx q = (theta - alpha) / theta;
    cplx taylor = 0.0, qpow = 1.0;
    cplx ratio_pow = 1.0 / (theta - alpha);
    for (int n = 0; n < parts.k; ++n) {
        taylor += parts.delta[n] * qpow;
        qpow *= q;
        acc -= lead * std::pow(theta - th_star, n) * ratio_pow * (xik_a - taylor);
        ratio_pow /= (theta - alpha);
    }
    return acc;
}

cplx erlang_Icirc(const LevyModel& mq, const CircParts& parts, cplx alpha) {
    return eval_offset_c(alpha, {parts.theta_star, parts.theta},
                         [&](cplx a) { return erlang_Icirc_raw(mq, parts, a); });
}

cplx erlang_Jbar_circ(const CircParts& parts, int i, cplx alpha) {
    const double theta = parts.theta;
    const cplx ratio = theta / (theta - alpha);
    cplx fact = 1.0;
    for (int j = 1; j <= i; ++j) fact *= (alpha - theta) / static_cast<double>(j);
    cplx acc = 0.0;
    for (int n = i; n < parts.k; ++n)
        acc += parts.delta[parts.k - 1 - n] * std::pow(ratio, n + 1);
    return fact * acc;
}

}  // namespace

AsymptoticsResult gamma_erlang(const LevyModel& m, int k, double omega) {
    m.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const LevyModel mq = twist(m);
    const double th_star = theta_star(m);
    const CircParts parts = circ_parts(mq, th_star, k, omega);

    AsymptoticsResult out;
    out.theta_star = th_star;
    out.family = "erlang";
    out.roots = roots_erlang(mq, k, omega, 0.0);

    std::vector<std::vector<cplx>> rows_a(k, std::vector<cplx>(k));
    std::vector<cplx> rows_b(k);
    for (int j = 0; j < k; ++j) {
        const cplx aj = out.roots.roots[j];
        rows_b[j] = erlang_Icirc(mq, parts, aj);
        for (int i = 0; i < k; ++i) rows_a[j][i] = erlang_Jbar_circ(parts, i, aj);
    }
    auto sol = solve_realified_rows(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    cplx num = erlang_Icirc(mq, parts, cplx(0.0));
    for (int i = 0; i < k; ++i) num -= erlang_Jbar_circ(parts, i, cplx(0.0)) * out.z[i];
    out.numerator = num.real();
    out.denominator = -k * phi_prime(m, -th_star) / omega;
    out.gamma = out.numerator / out.denominator;
    check_gamma(out.gamma);
    return out;
}

AsymptoticsResult gamma_hypererlang(const LevyModel& m, std::vector<int> k, std::vector<double> p,
                                    double omega) {
    m.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (k.size() != p.size()) throw std::invalid_argument("mixture sizes do not match");
    drop_zero_components(k, p);
    const std::size_t d = k.size();
    const int kd = k.empty() ? 0 : k.back();
    const LevyModel mq = twist(m);
    const double th_star = theta_star(m);

    AsymptoticsResult out;
    out.theta_star = th_star;
    out.family = "hypererlang";
    out.roots = roots_hypererlang(mq, k, p, omega, 0.0);

    std::vector<CircParts> parts;
    parts.reserve(d);
    for (std::size_t i = 0; i < d; ++i) parts.push_back(circ_parts(mq, th_star, k[i], omega));

    std::vector<std::vector<cplx>> rows_a(kd, std::vector<cplx>(kd));
    std::vector<cplx> rows_b(kd);
    for (int ell = 0; ell < kd; ++ell) {
        const cplx al = out.roots.roots[ell];
        for (std::size_t i = 0; i < d; ++i) {
            rows_b[ell] += p[i] * erlang_Icirc(mq, parts[i], al);
            for (int j = 0; j < k[i]; ++j) rows_a[ell][j] += p[i] * erlang_Jbar_circ(parts[i], j, al);
        }
    }
    auto sol = solve_realified_rows(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        cplx inner = erlang_Icirc(mq, parts[i], cplx(0.0));
        for (int j = 0; j < k[i]; ++j) inner -= erlang_Jbar_circ(parts[i], j, cplx(0.0)) * out.z[j];
        num += p[i] * inner.real();
        den += -p[i] * k[i] * phi_prime(m, -th_star) / omega;
    }
    out.numerator = num;
    out.denominator = den;
    out.gamma = num / den;
    check_gamma(out.gamma);
    return out;
}

AsymptoticsResult gamma_asymptotics(const LevyModel& m, const InspectionLaw& law_in) {
    validate(law_in);
    const InspectionLaw law = simplify(law_in);
    return std::visit(
        [&](const auto& v) -> AsymptoticsResult {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return gamma_exp(m, v.omega);
            else if constexpr (std::is_same_v<T, Hyperexponential>)
                return gamma_hyperexp(m, v.p, v.omega);
            else if constexpr (std::is_same_v<T, Erlang>) return gamma_erlang(m, v.k, v.omega);
            else if constexpr (std::is_same_v<T, HyperErlang>)
                return gamma_hypererlang(m, v.k, v.p, v.omega);
            else
                throw std::invalid_argument(
                    "no closed-form asymptotics for lognormal inspection times; use simulation");
        },
        law);
}

}  // namespace inspectruin
