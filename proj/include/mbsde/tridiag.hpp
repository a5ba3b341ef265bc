#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace mbsde {

// Thomas elimination for a tridiagonal system. lower/upper have length n-1,
// diag and rhs length n. No pivoting: throws on a (near-)zero pivot.
inline std::vector<double> thomas_solve(std::span<const double> lower,
                                        std::span<const double> diag,
                                        std::span<const double> upper,
                                        std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n)
        throw std::invalid_argument("thomas_solve: inconsistent band sizes");

    std::vector<double> c(n - 1), x(n);
    double pivot = diag[0];
    if (std::fabs(pivot) < 1e-300) throw std::runtime_error("thomas_solve: singular matrix");
    if (n > 1) c[0] = upper[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if (std::fabs(pivot) < 1e-300) throw std::runtime_error("thomas_solve: singular matrix");
        if (i < n - 1) c[i] = upper[i] / pivot;
        x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

} // namespace mbsde
