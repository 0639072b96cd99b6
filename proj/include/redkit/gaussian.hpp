#pragma once

#include "redkit/linalg.hpp"

namespace redkit {

// Correlation matrix C with its deviation A = C - I. Construction enforces
// symmetry and a unit diagonal (1e-10); positive definiteness is checked by
// the operations that need it, so degenerate sample correlations (perfectly
// dependent columns) remain representable and are rejected downstream.
class CorrelationModel {
public:
    explicit CorrelationModel(Matrix c);

    const Matrix& correlation() const { return c_; }
    std::size_t dim() const { return c_.rows; }

    Matrix deviation() const;  // A = C - I, zero diagonal
    double deviation_frobenius() const;
    double deviation_spectral_radius() const;

private:
    Matrix c_;
};

// C_ij = Sigma_ij / sqrt(Sigma_ii Sigma_jj); the diagonal is exactly 1.
// Throws validation_error for a nonpositive diagonal entry or asymmetry.
CorrelationModel correlation_from_covariance(const Matrix& sigma);

// Gaussian total correlation -ln(det C)/2, computed as -sum ln L_ii from the
// Cholesky factor. Throws validation_error if C is not positive definite.
double gaussian_total_correlation(const CorrelationModel& model);

// Quadratic (chi^2) proxy: sum of squared off-diagonal correlations over 4.
double chi2_quadratic_proxy(const CorrelationModel& model);

// ||A||_F^2/2 - ||A||_F^3/3, valid when the spectral radius of A = C - I is
// below 1; then -ln det C is at least this value.
double kl_frobenius_lower_bound(const CorrelationModel& model);

}  // namespace redkit
