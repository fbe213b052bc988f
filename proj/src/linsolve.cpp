#include "inspectruin/linsolve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace inspectruin {

namespace {

double norm1(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i][j]);
        best = std::max(best, col);
    }
    return best;
}

}  // namespace

LinearSolution solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("solve_dense: bad dimensions");
    const double a_norm = norm1(a);

    // Augment with the identity so the inverse (for the condition estimate)
    // comes out of the same factorization.
    std::vector<std::vector<double>> rhs(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i][0] = b[i];
        rhs[i][1 + i] = 1.0;
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (a[piv][col] == 0.0) throw std::runtime_error("solve_dense: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = a[i][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            for (std::size_t j = 0; j <= n; ++j) rhs[i][j] -= f * rhs[col][j];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const double inv = 1.0 / a[col][col];
        for (std::size_t j = 0; j <= n; ++j) rhs[col][j] *= inv;
        for (std::size_t i = 0; i < col; ++i) {
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) rhs[i][j] -= f * rhs[col][j];
        }
    }

    double inv_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::abs(rhs[i][1 + j]);
        inv_norm = std::max(inv_norm, col);
    }
    const double condition = a_norm * inv_norm;
    if (!(condition < 1e12)) {
        std::ostringstream os;
        os << "solve_dense: ill-conditioned system, condition estimate " << condition;
        throw std::runtime_error(os.str());
    }

    LinearSolution sol;
    sol.condition = condition;
    sol.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.x[i] = rhs[i][0];
    return sol;
}

}  // namespace inspectruin
