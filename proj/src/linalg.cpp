#include "disrupt/linalg.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace disrupt {

LeastSquaresResult qr_least_squares(const Matrix& x, std::span<const double> y) {
    const size_t n = x.rows;
    const size_t k = x.cols;
    assert(y.size() == n);
    if (n < k) throw std::invalid_argument("qr_least_squares: fewer rows than columns");

    // column-major working copy; qty accumulates Q'y alongside
    std::vector<double> a(n * k);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) a[j * n + i] = x(i, j);
    std::vector<double> qty(y.begin(), y.end());

    // column scale for the rank tolerance
    double scale = 0.0;
    for (size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += a[j * n + i] * a[j * n + i];
        scale = std::max(scale, std::sqrt(s));
    }
    const double tol = (scale > 0.0 ? scale : 1.0) * 1e-12 * static_cast<double>(n);

    LeastSquaresResult res;
    res.r = Matrix(k, k);

    for (size_t j = 0; j < k; ++j) {
        double* col = &a[j * n];
        double norm = 0.0;
        for (size_t i = j; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm <= tol) {
            res.full_rank = false;
            res.deficient_cols.push_back(j);
            continue;
        }
        const double alpha = col[j] >= 0.0 ? -norm : norm;
        // Householder vector v = x - alpha e_j, stored over the column
        col[j] -= alpha;
        double vnorm2 = 0.0;
        for (size_t i = j; i < n; ++i) vnorm2 += col[i] * col[i];
        if (vnorm2 > 0.0) {
            for (size_t jj = j + 1; jj < k; ++jj) {
                double* c2 = &a[jj * n];
                double dot = 0.0;
                for (size_t i = j; i < n; ++i) dot += col[i] * c2[i];
                const double f = 2.0 * dot / vnorm2;
                for (size_t i = j; i < n; ++i) c2[i] -= f * col[i];
            }
            double dot = 0.0;
            for (size_t i = j; i < n; ++i) dot += col[i] * qty[i];
            const double f = 2.0 * dot / vnorm2;
            for (size_t i = j; i < n; ++i) qty[i] -= f * col[i];
        }
        col[j] = alpha;
        for (size_t i = 0; i <= j; ++i) res.r(i, j) = a[j * n + i];
    }
    if (!res.full_rank) return res;

    // back substitution on R beta = (Q'y)[0..k)
    res.beta.assign(k, 0.0);
    for (size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (size_t m = jj + 1; m < k; ++m) s -= res.r(jj, m) * res.beta[m];
        res.beta[jj] = s / res.r(jj, jj);
    }
    return res;
}

Matrix xtx_inverse_from_r(const Matrix& r) {
    const size_t k = r.rows;
    // R^{-1} by back substitution against each unit vector
    Matrix rinv(k, k);
    for (size_t col = 0; col < k; ++col) {
        for (size_t jj = k; jj-- > 0;) {
            double s = (jj == col) ? 1.0 : 0.0;
            for (size_t m = jj + 1; m < k; ++m) s -= r(jj, m) * rinv(m, col);
            rinv(jj, col) = s / r(jj, jj);
        }
    }
    Matrix out(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (size_t m = 0; m < k; ++m) s += rinv(i, m) * rinv(j, m);
            out(i, j) = s;
        }
    return out;
}

namespace {

bool cholesky_factor(Matrix& a) {
    const size_t k = a.rows;
    for (size_t j = 0; j < k; ++j) {
        double d = a(j, j);
        for (size_t m = 0; m < j; ++m) d -= a(j, m) * a(j, m);
        if (!(d > 0.0)) return false;
        a(j, j) = std::sqrt(d);
        for (size_t i = j + 1; i < k; ++i) {
            double s = a(i, j);
            for (size_t m = 0; m < j; ++m) s -= a(i, m) * a(j, m);
            a(i, j) = s / a(j, j);
        }
    }
    return true;
}

}  // namespace

bool cholesky_solve(Matrix a, std::span<const double> b, std::vector<double>& x) {
    const size_t k = a.rows;
    if (!cholesky_factor(a)) return false;
    x.assign(b.begin(), b.end());
    for (size_t i = 0; i < k; ++i) {
        for (size_t m = 0; m < i; ++m) x[i] -= a(i, m) * x[m];
        x[i] /= a(i, i);
    }
    for (size_t i = k; i-- > 0;) {
        for (size_t m = i + 1; m < k; ++m) x[i] -= a(m, i) * x[m];
        x[i] /= a(i, i);
    }
    return true;
}

bool spd_inverse(const Matrix& a, Matrix& inv) {
    const size_t k = a.rows;
    Matrix l = a;
    if (!cholesky_factor(l)) return false;
    inv = Matrix(k, k);
    std::vector<double> col(k);
    for (size_t c = 0; c < k; ++c) {
        for (size_t i = 0; i < k; ++i) col[i] = (i == c) ? 1.0 : 0.0;
        for (size_t i = 0; i < k; ++i) {
            for (size_t m = 0; m < i; ++m) col[i] -= l(i, m) * col[m];
            col[i] /= l(i, i);
        }
        for (size_t i = k; i-- > 0;) {
            for (size_t m = i + 1; m < k; ++m) col[i] -= l(m, i) * col[m];
            col[i] /= l(i, i);
        }
        for (size_t i = 0; i < k; ++i) inv(i, c) = col[i];
    }
    return true;
}

std::vector<double> mat_vec(const Matrix& a, std::span<const double> v) {
    assert(v.size() == a.cols);
    std::vector<double> out(a.rows, 0.0);
    for (size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double quad_form(const Matrix& a, std::span<const double> v) {
    assert(a.rows == a.cols && v.size() == a.rows);
    double s = 0.0;
    for (size_t i = 0; i < a.rows; ++i) {
        double row = 0.0;
        for (size_t j = 0; j < a.cols; ++j) row += a(i, j) * v[j];
        s += v[i] * row;
    }
    return s;
}

}  // namespace disrupt
