#pragma once

#include <cstdint>
#include <vector>

#include "redkit/discrete.hpp"
#include "redkit/gaussian.hpp"
#include "redkit/linalg.hpp"

namespace redkit {

// Real-valued observations, rows = samples, cols = variables.
struct SampleBatch {
    Matrix data;

    // Validates: at least 2 rows, finite entries.
    explicit SampleBatch(Matrix data);

    std::size_t rows() const { return data.rows; }
    std::size_t cols() const { return data.cols; }
};

// Plug-in joint table: cell probability = count / rows. Accepts a single row.
// Every symbol of column i must lie in {0, ..., sizes[i]-1}.
JointTable empirical_joint(const std::vector<std::vector<long>>& samples,
                           const std::vector<std::size_t>& alphabet_sizes);

// Pearson correlation matrix (centered columns, divisor rows-1), diagonal
// exactly 1. Throws for a column with variance at or below 1e-12: constant
// columns have no defined correlation and are rejected, not imputed.
// Perfectly dependent columns yield a singular matrix, which is returned;
// downstream operations that need positive definiteness reject it.
CorrelationModel sample_correlation(const SampleBatch& batch);

// chi2_quadratic_proxy of the sample correlation.
double chi2_redundancy_estimate(const SampleBatch& batch);

}  // namespace redkit
