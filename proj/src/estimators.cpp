#include "redkit/estimators.hpp"

#include <cmath>
#include <string>

#include "redkit/compensated.hpp"
#include "redkit/errors.hpp"
#include "redkit/simd.hpp"

namespace redkit {

SampleBatch::SampleBatch(Matrix d) : data(std::move(d)) {
    if (data.rows < 2)
        throw validation_error("sample batch: need at least 2 rows");
    if (data.cols < 1) throw validation_error("sample batch: no columns");
    for (double v : data.data)
        if (!std::isfinite(v))
            throw validation_error("sample batch: non-finite entry");
}

JointTable empirical_joint(const std::vector<std::vector<long>>& samples,
                           const std::vector<std::size_t>& alphabet_sizes) {
    if (samples.empty())
        throw validation_error("empirical joint: need at least one sample row");
    const std::size_t n = alphabet_sizes.size();

    std::size_t cells = 1;
    for (std::size_t k : alphabet_sizes) {
        if (k == 0) throw validation_error("empirical joint: zero alphabet size");
        cells *= k;
    }
    std::vector<double> counts(cells, 0.0);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto& row = samples[r];
        if (row.size() != n)
            throw validation_error("empirical joint: row " + std::to_string(r) +
                                   " has arity " + std::to_string(row.size()) +
                                   ", expected " + std::to_string(n));
        std::size_t flat = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long s = row[i];
            if (s < 0 || static_cast<std::size_t>(s) >= alphabet_sizes[i])
                throw validation_error("empirical joint: symbol " + std::to_string(s) +
                                       " outside alphabet of coordinate " +
                                       std::to_string(i));
            flat = flat * alphabet_sizes[i] + static_cast<std::size_t>(s);
        }
        counts[flat] += 1.0;
    }
    const double total = static_cast<double>(samples.size());
    for (double& c : counts) c /= total;
    return JointTable(alphabet_sizes, std::move(counts));
}

CorrelationModel sample_correlation(const SampleBatch& batch) {
    const std::size_t n = batch.rows(), d = batch.cols();
    Matrix cols(d, n);  // transposed, centered
    for (std::size_t j = 0; j < d; ++j) {
        NeumaierAccumulator mean_acc;
        for (std::size_t i = 0; i < n; ++i) mean_acc.add(batch.data.at(i, j));
        const double mean = mean_acc.total() / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            cols.at(j, i) = batch.data.at(i, j) - mean;
    }

    const double divisor = static_cast<double>(n - 1);
    std::vector<double> variance(d);
    for (std::size_t j = 0; j < d; ++j) {
        variance[j] = simd::sum_squares(cols.row(j)) / divisor;
        if (!(variance[j] > 1e-12))
            throw validation_error("sample correlation: column " + std::to_string(j) +
                                   " has variance <= 1e-12 (constant column)");
    }

    Matrix c(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        c.at(a, a) = 1.0;
        for (std::size_t b = a + 1; b < d; ++b) {
            const double cov = simd::dot(cols.row(a), cols.row(b)) / divisor;
            const double v = cov / std::sqrt(variance[a] * variance[b]);
            c.at(a, b) = v;
            c.at(b, a) = v;
        }
    }
    return CorrelationModel(std::move(c));
}

double chi2_redundancy_estimate(const SampleBatch& batch) {
    return chi2_quadratic_proxy(sample_correlation(batch));
}

}  // namespace redkit
