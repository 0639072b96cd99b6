#include "redkit/gaussian.hpp"

#include <cmath>
#include <string>

#include "redkit/errors.hpp"

namespace redkit {

CorrelationModel::CorrelationModel(Matrix c) : c_(std::move(c)) {
    if (!c_.square() || c_.rows == 0)
        throw validation_error("correlation: matrix must be square and nonempty");
    for (std::size_t i = 0; i < c_.rows; ++i) {
        if (std::abs(c_.at(i, i) - 1.0) > 1e-10)
            throw validation_error("correlation: diagonal entry " + std::to_string(i) +
                                   " is not 1 within 1e-10");
        for (std::size_t j = i + 1; j < c_.cols; ++j) {
            if (std::abs(c_.at(i, j) - c_.at(j, i)) > 1e-10)
                throw validation_error("correlation: matrix is not symmetric within 1e-10");
            if (!std::isfinite(c_.at(i, j)))
                throw validation_error("correlation: non-finite entry");
        }
    }
}

Matrix CorrelationModel::deviation() const {
    Matrix a = c_;
    for (std::size_t i = 0; i < a.rows; ++i) a.at(i, i) = 0.0;
    return a;
}

double CorrelationModel::deviation_frobenius() const {
    return linalg::off_diagonal_norm(c_);
}

double CorrelationModel::deviation_spectral_radius() const {
    return linalg::spectral_radius_symmetric(deviation());
}

CorrelationModel correlation_from_covariance(const Matrix& sigma) {
    if (!sigma.square() || sigma.rows == 0)
        throw validation_error("covariance: matrix must be square and nonempty");
    const double scale = [&] {
        double m = 0.0;
        for (double v : sigma.data) m = std::max(m, std::abs(v));
        return std::max(1.0, m);
    }();
    for (std::size_t i = 0; i < sigma.rows; ++i) {
        if (!(sigma.at(i, i) > 0.0))
            throw validation_error("covariance: diagonal entry " + std::to_string(i) +
                                   " is not strictly positive");
        for (std::size_t j = i + 1; j < sigma.cols; ++j)
            if (std::abs(sigma.at(i, j) - sigma.at(j, i)) > 1e-9 * scale)
                throw validation_error("covariance: matrix is not symmetric");
    }

    Matrix c(sigma.rows, sigma.cols);
    for (std::size_t i = 0; i < sigma.rows; ++i) {
        c.at(i, i) = 1.0;
        for (std::size_t j = i + 1; j < sigma.cols; ++j) {
            const double v =
                sigma.at(i, j) / std::sqrt(sigma.at(i, i) * sigma.at(j, j));
            c.at(i, j) = v;
            c.at(j, i) = v;
        }
    }
    return CorrelationModel(std::move(c));
}

double gaussian_total_correlation(const CorrelationModel& model) {
    const auto lower = linalg::cholesky_lower(model.correlation());
    if (!lower)
        throw validation_error(
            "gaussian total correlation: correlation matrix is not positive definite");
    // det C = prod L_ii^2, so -ln(det C)/2 = -sum ln L_ii.
    double acc = 0.0;
    for (std::size_t i = 0; i < lower->rows; ++i) acc -= std::log(lower->at(i, i));
    return acc;
}

double chi2_quadratic_proxy(const CorrelationModel& model) {
    const Matrix& c = model.correlation();
    double acc = 0.0;
    for (std::size_t i = 0; i < c.rows; ++i)
        for (std::size_t j = 0; j < c.cols; ++j)
            if (i != j) acc += c.at(i, j) * c.at(i, j);
    return 0.25 * acc;
}

double kl_frobenius_lower_bound(const CorrelationModel& model) {
    const double rho = model.deviation_spectral_radius();
    if (!(rho < 1.0))
        throw validation_error(
            "kl-frobenius bound: spectral radius of C - I must be below 1, got " +
            std::to_string(rho));
    const double a = model.deviation_frobenius();
    return 0.5 * a * a - a * a * a / 3.0;
}

}  // namespace redkit
