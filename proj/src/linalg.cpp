#include "redkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "redkit/errors.hpp"
#include "redkit/simd.hpp"

namespace redkit::linalg {

bool is_symmetric(const Matrix& m, double tol) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > tol) return false;
    return true;
}

double frobenius_norm(const Matrix& m) {
    return std::sqrt(simd::sum_squares(std::span<const double>(m.data)));
}

double off_diagonal_norm(const Matrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j) acc += m.at(i, j) * m.at(i, j);
    return std::sqrt(acc);
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Matrix gram(const Matrix& m) {
    const Matrix t = transpose(m);
    Matrix g(m.cols, m.cols);
    for (std::size_t i = 0; i < m.cols; ++i)
        for (std::size_t j = i; j < m.cols; ++j) {
            const double v = simd::dot(t.row(i), t.row(j));
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    return g;
}

std::optional<Matrix> cholesky_lower(const Matrix& a) {
    if (!a.square()) return std::nullopt;
    const std::size_t n = a.rows;
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l.at(j, k) * l.at(j, k);
        if (!(diag > 0.0)) return std::nullopt;  // also rejects NaN
        const double ljj = std::sqrt(diag);
        l.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = v / ljj;
        }
    }
    return l;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
    if (!a.square()) throw numeric_error("eigenvalues: matrix is not square");
    const std::size_t n = a.rows;
    if (n == 1) return {a.at(0, 0)};

    const double scale = std::max(1.0, frobenius_norm(a));
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off <= 1e-14 * scale) break;
        if (sweep == kMaxSweeps - 1)
            throw numeric_error("jacobi eigensolver did not converge");
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(p, k) = a.at(k, p);
                    a.at(k, q) = s * akp + c * akq;
                    a.at(q, k) = a.at(k, q);
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double spectral_norm(const Matrix& m) {
    const auto eig = symmetric_eigenvalues(gram(m));
    const double top = std::max(0.0, eig.back());
    return std::sqrt(top);
}

double spectral_radius_symmetric(const Matrix& a) {
    const auto eig = symmetric_eigenvalues(a);
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

std::vector<double> solve(Matrix a, std::vector<double> b) {
    if (!a.square() || a.rows != b.size())
        throw numeric_error("solve: dimension mismatch");
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) < 1e-300)
            throw numeric_error("solve: singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(piv, j), a.at(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double v = b[i];
        for (std::size_t j = i + 1; j < n; ++j) v -= a.at(i, j) * x[j];
        x[i] = v / a.at(i, i);
    }
    return x;
}

}  // namespace redkit::linalg
