#pragma once

#include <cmath>
#include <vector>

#include "opsplit/errors.hpp"

namespace opsplit::detail {

/// Solves the dense n×n system a·x = b in place (a row-major) by LU with
/// partial pivoting. Pivots below 1e-14·max|a| raise SingularMatrixError.
inline std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));
    const double breakdown = 1e-14 * std::max(scale, 1e-300);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            double v = std::fabs(a[row * n + col]);
            if (v > best) {
                best = v;
                pivot = row;
            }
        }
        if (best <= breakdown)
            throw SingularMatrixError("lu_solve: pivot " + std::to_string(best) +
                                      " below breakdown threshold at column " +
                                      std::to_string(col));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            double factor = a[row * n + col] / a[col * n + col];
            a[row * n + col] = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
            b[row] -= factor * b[col];
        }
    }

    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

}  // namespace opsplit::detail
