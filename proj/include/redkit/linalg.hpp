#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace redkit {

// Dense row-major matrix. Small and value-semantic; everything in this
// library operates at desk scale.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data.data() + i * cols, cols);
    }

    bool square() const { return rows == cols; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

namespace linalg {

bool is_symmetric(const Matrix& m, double tol);

double frobenius_norm(const Matrix& m);

// Frobenius norm of the off-diagonal part.
double off_diagonal_norm(const Matrix& m);

Matrix transpose(const Matrix& m);

// m^T * m (Gram matrix), symmetric PSD by construction.
Matrix gram(const Matrix& m);

// Lower-triangular Cholesky factor of a symmetric matrix, or nullopt if a
// pivot is nonpositive (matrix not positive definite).
std::optional<Matrix> cholesky_lower(const Matrix& a);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Throws numeric_error if the sweep limit is hit before convergence.
std::vector<double> symmetric_eigenvalues(Matrix a);

// Largest singular value, via the Gram matrix spectrum.
double spectral_norm(const Matrix& m);

// Spectral radius max|lambda| of a symmetric matrix.
double spectral_radius_symmetric(const Matrix& a);

// Solve a*x = b by Gaussian elimination with partial pivoting.
// Throws numeric_error on a (numerically) singular system.
std::vector<double> solve(Matrix a, std::vector<double> b);

}  // namespace linalg
}  // namespace redkit
