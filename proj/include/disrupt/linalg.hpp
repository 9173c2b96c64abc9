#pragma once

// Small dense linear algebra for the regression fits. Design matrices here are
// tall and narrow (n up to ~1e5, k around a dozen), so Householder QR plus
// k-by-k triangular work is all that is needed.

#include <cstddef>
#include <span>
#include <vector>

namespace disrupt {

struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> a;  // row-major

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(size_t r, size_t c) { return a[r * cols + c]; }
    double operator()(size_t r, size_t c) const { return a[r * cols + c]; }
};

struct LeastSquaresResult {
    std::vector<double> beta;
    Matrix r;                           // k-by-k upper triangular factor of X
    bool full_rank = true;
    std::vector<size_t> deficient_cols; // column indices with vanishing pivot
};

// Least squares via Householder QR. On rank deficiency, beta is not computed and
// deficient_cols names the offending columns.
LeastSquaresResult qr_least_squares(const Matrix& x, std::span<const double> y);

// (X'X)^{-1} from the R factor: R^{-1} R^{-T}.
Matrix xtx_inverse_from_r(const Matrix& r);

// Solve A x = b for symmetric positive definite A (in place Cholesky).
// Returns false when A is not positive definite.
bool cholesky_solve(Matrix a, std::span<const double> b, std::vector<double>& x);

// Inverse of a symmetric positive definite matrix via Cholesky.
// Returns false when A is not positive definite.
bool spd_inverse(const Matrix& a, Matrix& inv);

std::vector<double> mat_vec(const Matrix& a, std::span<const double> v);

// v' A v for square A.
double quad_form(const Matrix& a, std::span<const double> v);

}  // namespace disrupt
