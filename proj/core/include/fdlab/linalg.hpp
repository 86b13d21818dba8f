#pragma once

#include <cstddef>
#include <vector>

namespace fdlab {

/// Dense row-major square matrix, only as large as the flatness fits need.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit DenseMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Solve A x = b by partially pivoted Gaussian elimination (A destroyed).
std::vector<double> solve_dense(DenseMatrix A, std::vector<double> b);

/// Thomas solve of a tridiagonal system; diag/lower/upper are destroyed.
/// lower[i] multiplies x[i-1] in row i, upper[i] multiplies x[i+1].
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs);

} // namespace fdlab
