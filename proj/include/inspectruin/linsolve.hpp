#pragma once

#include <vector>

namespace inspectruin {

struct LinearSolution {
    std::vector<double> x;
    double condition;  // 1-norm condition estimate
};

// Dense LU with partial pivoting for the small systems assembled by the
// transform and asymptotics modules (order <= ~12). Throws
// std::runtime_error when the matrix is singular or the condition estimate
// exceeds 1e12.
LinearSolution solve_dense(std::vector<std::vector<double>> a, std::vector<double> b);

}  // namespace inspectruin
