#include "inspectruin/transforms.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "inspectruin/linsolve.hpp"
#include "inspectruin/wiener_hopf.hpp"

namespace inspectruin {

namespace {

constexpr double kSingularWindow = 1e-8;
constexpr double kOffsetEps = 1e-6;

void check_query(double alpha, double beta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("transform query requires alpha > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("transform query requires beta > 0");
}

// Evaluate f(alpha); if alpha sits within the window of a removable
// singularity, average the two-sided offsets instead.
double eval_offset(double alpha, const std::vector<cplx>& singular,
                   const std::function<double(double)>& f) {
    const double win = kSingularWindow * std::max(1.0, std::abs(alpha));
    bool near = false;
    for (const cplx& s : singular)
        if (std::abs(cplx(alpha) - s) < win) { near = true; break; }
    if (!near) return f(alpha);
    const double eps = kOffsetEps * std::max(1.0, std::abs(alpha));
    return 0.5 * (f(alpha + eps) + f(alpha - eps));
}

// Rows evaluated at complex-conjugate root pairs are replaced by their sum
// and their difference over i, which keeps the system and its solution real.
LinearSolution solve_realified(const RootSet& roots,
                               const std::vector<std::vector<cplx>>& rows_a,
                               const std::vector<cplx>& rows_b) {
    const std::size_t n = roots.roots.size();
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(n);
    b.reserve(n);
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

std::vector<cplx> singular_points(const RootSet& roots, std::initializer_list<double> extra) {
    std::vector<cplx> s(roots.roots.begin(), roots.roots.end());
    for (double e : extra) s.emplace_back(e);
    return s;
}

}  // namespace

cplx hyperexp_F(const LevyModel& m, cplx alpha, double beta, double omega) {
    const double b = beta + omega;
    const double theta = psi(m, b);
    const cplx xi_theta = xi(m, cplx(theta), b);
    return (alpha * xi_theta - theta * xi(m, alpha, b)) / (alpha * (theta - alpha)) + 1.0 / alpha;
}

cplx hyperexp_Gbar(const LevyModel& m, cplx alpha, double beta, double omega) {
    const double b = beta + omega;
    const double theta = psi(m, b);
    return theta * xi(m, cplx(theta), b) / (theta - alpha);
}

TransformEval pi_exp(const LevyModel& m, double alpha, double beta, double omega) {
    check_query(alpha, beta);
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const double b = beta + omega;
    const double theta = psi(m, b);
    const double psi_b = psi(m, beta);

    TransformEval out;
    out.roots = roots_hyperexp(m, {1.0}, {omega}, beta);
    out.condition = 1.0;
    // pi(theta, beta | T_omega), the single unknown of the linear step.
    const double xi_theta = xi(m, theta, b);
    out.z = {(omega * psi_b * xi_theta - beta * theta + beta * psi_b) /
             (theta * omega * psi_b * xi_theta)};

    const auto closed_form = [&](double a) {
        const double ph = phi(m, a);
        const double num =
            omega * ph * (theta - a) * psi_b + a * beta * (ph - beta - omega) * (theta - psi_b);
        const double den = (ph - beta) * (beta + omega) * (theta - a) * psi_b;
        return num / (a * den);
    };
    out.value = eval_offset(alpha, {cplx(theta), cplx(psi_b)}, closed_form);
    out.rho = 1.0 - alpha * out.value;
    return out;
}

TransformEval pi_hyperexp(const LevyModel& m, double alpha, double beta, std::vector<double> p,
                          std::vector<double> omega) {
    check_query(alpha, beta);
    lump_hyperexp(p, omega);
    const std::size_t d = p.size();

    TransformEval out;
    out.roots = roots_hyperexp(m, p, omega, beta);

    std::vector<std::vector<cplx>> rows_a(d, std::vector<cplx>(d));
    std::vector<cplx> rows_b(d);
    for (std::size_t j = 0; j < d; ++j) {
        const cplx aj = out.roots.roots[j];
        for (std::size_t i = 0; i < d; ++i) {
            const double c = p[i] * omega[i] / (beta + omega[i]);
            rows_a[j][i] = c * hyperexp_Gbar(m, aj, beta, omega[i]);
            rows_b[j] += c * hyperexp_F(m, aj, beta, omega[i]);
        }
    }
    auto sol = solve_realified(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    const auto eval = [&](double a) {
        cplx num = 0.0, den_sum = 0.0;
        const cplx ph = phi(m, cplx(a));
        for (std::size_t i = 0; i < d; ++i) {
            const double c = p[i] * omega[i] / (beta + omega[i]);
            num += c * (hyperexp_F(m, cplx(a), beta, omega[i]) -
                        hyperexp_Gbar(m, cplx(a), beta, omega[i]) * out.z[i]);
            den_sum += p[i] * omega[i] / (beta + omega[i] - ph);
        }
        return (num / (1.0 - den_sum)).real();
    };

    std::vector<double> thetas;
    for (double w : omega) thetas.push_back(psi(m, beta + w));
    auto sing = singular_points(out.roots, {});
    for (double t : thetas) sing.emplace_back(t);
    out.value = eval_offset(alpha, sing, eval);
    out.rho = 1.0 - alpha * out.value;
    return out;
}

ErlangParts erlang_parts(const LevyModel& m, int k, double omega, double beta) {
    if (k < 1 || k > 12)
        throw std::invalid_argument("Erlang shape must lie in [1, 12] (derivative-order cap)");
    ErlangParts parts;
    parts.k = k;
    parts.omega = omega;
    parts.beta = beta;
    parts.theta = psi(m, beta + omega);
    parts.delta = delta_all(m, k, beta + omega);
    return parts;
}

cplx erlang_I(const LevyModel& m, const ErlangParts& parts, cplx alpha) {
    const double theta = parts.theta;
    const double b = parts.beta + parts.omega;
    const cplx ratio = theta / (theta - alpha);
    const cplx xik = std::pow(xi(m, alpha, b), parts.k);
    cplx acc = std::pow(ratio, parts.k) * (1.0 - xik) / alpha;
    double partial = 0.0;  // sum_{m<=n} delta_{m,k}
    for (int n = 0; n < parts.k; ++n) {
        partial += parts.delta[n];
        acc -= std::pow(ratio, parts.k - n) * (1.0 - partial) / theta;
    }
    return acc;
}

cplx erlang_Jbar(const ErlangParts& parts, int i, cplx alpha) {
    const double theta = parts.theta;
    const cplx ratio = theta / (theta - alpha);
    cplx fact = 1.0;
    for (int j = 1; j <= i; ++j) fact *= (alpha - theta) / static_cast<double>(j);
    cplx acc = 0.0;
    for (int n = i; n < parts.k; ++n)
        acc += parts.delta[parts.k - 1 - n] * std::pow(ratio, n + 1);
    return fact * acc;
}

TransformEval pi_erlang(const LevyModel& m, double alpha, double beta, int k, double omega) {
    check_query(alpha, beta);
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const ErlangParts parts = erlang_parts(m, k, omega, beta);

    TransformEval out;
    out.roots = roots_erlang(m, k, omega, beta);

    std::vector<std::vector<cplx>> rows_a(k, std::vector<cplx>(k));
    std::vector<cplx> rows_b(k);
    for (int j = 0; j < k; ++j) {
        const cplx aj = out.roots.roots[j];
        rows_b[j] = erlang_I(m, parts, aj);
        for (int i = 0; i < k; ++i) rows_a[j][i] = erlang_Jbar(parts, i, aj);
    }
    auto sol = solve_realified(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    const double weight = std::pow(omega / (beta + omega), k);
    const auto eval = [&](double a) {
        cplx num = erlang_I(m, parts, cplx(a));
        for (int i = 0; i < k; ++i) num -= erlang_Jbar(parts, i, cplx(a)) * out.z[i];
        const cplx y = omega / (beta + omega - phi(m, cplx(a)));
        return (weight * num / (1.0 - std::pow(y, k))).real();
    };
    out.value = eval_offset(alpha, singular_points(out.roots, {parts.theta}), eval);
    out.rho = 1.0 - alpha * out.value;
    return out;
}

TransformEval pi_hypererlang(const LevyModel& m, double alpha, double beta, std::vector<int> k,
                             std::vector<double> p, double omega) {
    check_query(alpha, beta);
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (k.size() != p.size()) throw std::invalid_argument("mixture sizes do not match");
    drop_zero_components(k, p);
    const std::size_t d = k.size();
    const int kd = k.empty() ? 0 : k.back();
    if (kd > 12) throw std::invalid_argument("largest shape must be <= 12 (derivative-order cap)");

    TransformEval out;
    out.roots = roots_hypererlang(m, k, p, omega, beta);

    std::vector<ErlangParts> parts;
    std::vector<double> weights(d);
    parts.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        parts.push_back(erlang_parts(m, k[i], omega, beta));
        weights[i] = p[i] * std::pow(omega / (beta + omega), k[i]);
    }

    std::vector<std::vector<cplx>> rows_a(kd, std::vector<cplx>(kd));
    std::vector<cplx> rows_b(kd);
    for (int ell = 0; ell < kd; ++ell) {
        const cplx al = out.roots.roots[ell];
        for (std::size_t i = 0; i < d; ++i) {
            rows_b[ell] += weights[i] * erlang_I(m, parts[i], al);
            for (int j = 0; j < k[i]; ++j)
                rows_a[ell][j] += weights[i] * erlang_Jbar(parts[i], j, al);
        }
    }
    auto sol = solve_realified(out.roots, rows_a, rows_b);
    out.z = std::move(sol.x);
    out.condition = sol.condition;

    const auto eval = [&](double a) {
        cplx num = 0.0, den_sum = 0.0;
        const cplx y = omega / (beta + omega - phi(m, cplx(a)));
        for (std::size_t i = 0; i < d; ++i) {
            cplx inner = erlang_I(m, parts[i], cplx(a));
            for (int j = 0; j < k[i]; ++j) inner -= erlang_Jbar(parts[i], j, cplx(a)) * out.z[j];
            num += weights[i] * inner;
            den_sum += p[i] * std::pow(y, k[i]);
        }
        return (num / (1.0 - den_sum)).real();
    };
    out.value = eval_offset(alpha, singular_points(out.roots, {parts[0].theta}), eval);
    out.rho = 1.0 - alpha * out.value;
    return out;
}

TransformEval pi_transform(const LevyModel& m, double alpha, double beta,
                           const InspectionLaw& law_in) {
    validate(law_in);
    const InspectionLaw law = simplify(law_in);
    return std::visit(
        [&](const auto& v) -> TransformEval {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return pi_exp(m, alpha, beta, v.omega);
            else if constexpr (std::is_same_v<T, Hyperexponential>)
                return pi_hyperexp(m, alpha, beta, v.p, v.omega);
            else if constexpr (std::is_same_v<T, Erlang>)
                return pi_erlang(m, alpha, beta, v.k, v.omega);
            else if constexpr (std::is_same_v<T, HyperErlang>)
                return pi_hypererlang(m, alpha, beta, v.k, v.p, v.omega);
            else
                throw std::invalid_argument(
                    "no transform for lognormal inspection times; use simulation");
        },
        law);
}

}  // namespace inspectruin
