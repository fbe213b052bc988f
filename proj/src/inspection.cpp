#include "inspectruin/inspection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace inspectruin {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_mixture(const std::vector<double>& p, std::size_t n_components) {
    require(!p.empty() && p.size() == n_components, "mixture sizes do not match");
    double sum = 0.0;
    for (double pi : p) {
        require(pi > 0.0, "mixture weights must be positive");
        sum += pi;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "mixture weights must sum to 1");
}

double lognormal_sigma(const Lognormal& ln) {
    return std::sqrt(std::log(1.0 + ln.variance / (ln.mean * ln.mean)));
}

double lognormal_mu(const Lognormal& ln) {
    return std::log(ln.mean) - 0.5 * std::log(1.0 + ln.variance / (ln.mean * ln.mean));
}

}  // namespace

void validate(const InspectionLaw& law) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                require(v.omega > 0.0, "exponential rate must be positive");
            } else if constexpr (std::is_same_v<T, Hyperexponential>) {
                check_mixture(v.p, v.omega.size());
                for (double w : v.omega) require(w > 0.0, "hyperexponential rates must be positive");
            } else if constexpr (std::is_same_v<T, Erlang>) {
                require(v.k >= 1, "Erlang shape must be >= 1");
                require(v.omega > 0.0, "Erlang scale must be positive");
            } else if constexpr (std::is_same_v<T, HyperErlang>) {
                check_mixture(v.p, v.k.size());
                require(v.omega > 0.0, "hyper-Erlang scale must be positive");
                for (std::size_t i = 0; i < v.k.size(); ++i) {
                    require(v.k[i] >= 1, "hyper-Erlang shapes must be >= 1");
                    if (i > 0) require(v.k[i] > v.k[i - 1], "hyper-Erlang shapes must be strictly increasing");
                }
            } else {
                require(v.mean > 0.0 && v.variance > 0.0, "lognormal mean and variance must be positive");
            }
        },
        law);
}

InspectionLaw simplify(const InspectionLaw& law) {
    if (const auto* he = std::get_if<Hyperexponential>(&law)) {
        if (he->p.size() == 1) return Exponential{he->omega[0]};
    } else if (const auto* e = std::get_if<Erlang>(&law)) {
        if (e->k == 1) return Exponential{e->omega};
    } else if (const auto* hel = std::get_if<HyperErlang>(&law)) {
        if (hel->k.size() == 1)
            return hel->k[0] == 1 ? InspectionLaw{Exponential{hel->omega}}
                                  : InspectionLaw{Erlang{hel->k[0], hel->omega}};
    }
    return law;
}

double mean(const InspectionLaw& law) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return 1.0 / v.omega;
            else if constexpr (std::is_same_v<T, Hyperexponential>) {
                double m = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i) m += v.p[i] / v.omega[i];
                return m;
            } else if constexpr (std::is_same_v<T, Erlang>) return v.k / v.omega;
            else if constexpr (std::is_same_v<T, HyperErlang>) {
                double m = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i) m += v.p[i] * v.k[i] / v.omega;
                return m;
            } else return v.mean;
        },
        law);
}

double variance(const InspectionLaw& law) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return 1.0 / (v.omega * v.omega);
            else if constexpr (std::is_same_v<T, Hyperexponential>) {
                double m = 0.0, m2 = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i) {
                    m += v.p[i] / v.omega[i];
                    m2 += 2.0 * v.p[i] / (v.omega[i] * v.omega[i]);
                }
                return m2 - m * m;
            } else if constexpr (std::is_same_v<T, Erlang>) return v.k / (v.omega * v.omega);
            else if constexpr (std::is_same_v<T, HyperErlang>) {
                double m = 0.0, m2 = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i) {
                    m += v.p[i] * v.k[i] / v.omega;
                    m2 += v.p[i] * v.k[i] * (v.k[i] + 1.0) / (v.omega * v.omega);
                }
                return m2 - m * m;
            } else return v.variance;
        },
        law);
}

double sample(const InspectionLaw& law, Rng& rng) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return rng.exponential(v.omega);
            else if constexpr (std::is_same_v<T, Hyperexponential>) {
                const double u = rng.uniform();
                double acc = 0.0;
                std::size_t i = 0;
                for (; i + 1 < v.p.size(); ++i) {
                    acc += v.p[i];
                    if (u <= acc) break;
                }
                return rng.exponential(v.omega[i]);
            } else if constexpr (std::is_same_v<T, Erlang>) {
                double t = 0.0;
                for (int j = 0; j < v.k; ++j) t += rng.exponential(v.omega);
                return t;
            } else if constexpr (std::is_same_v<T, HyperErlang>) {
                const double u = rng.uniform();
                double acc = 0.0;
                std::size_t i = 0;
                for (; i + 1 < v.p.size(); ++i) {
                    acc += v.p[i];
                    if (u <= acc) break;
                }
                double t = 0.0;
                for (int j = 0; j < v.k[i]; ++j) t += rng.exponential(v.omega);
                return t;
            } else {
                return rng.lognormal(lognormal_mu(v), lognormal_sigma(v));
            }
        },
        law);
}

namespace {

double erlang_density(int k, double omega, double t) {
    double acc = omega * std::exp(-omega * t);
    for (int j = 1; j < k; ++j) acc *= omega * t / j;
    return acc;
}

}  // namespace

double density(const InspectionLaw& law, double t) {
    if (t <= 0.0) return 0.0;
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return v.omega * std::exp(-v.omega * t);
            else if constexpr (std::is_same_v<T, Hyperexponential>) {
                double f = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i)
                    f += v.p[i] * v.omega[i] * std::exp(-v.omega[i] * t);
                return f;
            } else if constexpr (std::is_same_v<T, Erlang>) return erlang_density(v.k, v.omega, t);
            else if constexpr (std::is_same_v<T, HyperErlang>) {
                double f = 0.0;
                for (std::size_t i = 0; i < v.p.size(); ++i)
                    f += v.p[i] * erlang_density(v.k[i], v.omega, t);
                return f;
            } else {
                const double s = lognormal_sigma(v), m = lognormal_mu(v);
                const double z = (std::log(t) - m) / s;
                return std::exp(-0.5 * z * z) / (t * s * std::sqrt(2.0 * M_PI));
            }
        },
        law);
}

std::string family_name(const InspectionLaw& law) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) return "exponential";
            else if constexpr (std::is_same_v<T, Hyperexponential>) return "hyperexp";
            else if constexpr (std::is_same_v<T, Erlang>) return "erlang";
            else if constexpr (std::is_same_v<T, HyperErlang>) return "hypererlang";
            else return "lognormal";
        },
        law);
}

std::string describe(const InspectionLaw& law) {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) os << "exponential:" << v.omega;
            else if constexpr (std::is_same_v<T, Hyperexponential>) {
                os << "hyperexp:";
                for (std::size_t i = 0; i < v.p.size(); ++i) os << (i ? "," : "") << v.p[i];
                for (double w : v.omega) os << "," << w;
            } else if constexpr (std::is_same_v<T, Erlang>) os << "erlang:" << v.k << "," << v.omega;
            else if constexpr (std::is_same_v<T, HyperErlang>) {
                os << "hypererlang:";
                for (std::size_t i = 0; i < v.k.size(); ++i) os << (i ? "," : "") << v.k[i];
                for (double pi : v.p) os << "," << pi;
                os << "," << v.omega;
            } else os << "lognormal:" << v.mean << "," << v.variance;
        },
        law);
    return os.str();
}

}  // namespace inspectruin
