#include "redkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "redkit/compensated.hpp"
#include "redkit/errors.hpp"
#include "redkit/simd.hpp"

namespace redkit {

Spectrum spectrum_from_eigenvalues(std::span<const double> eigenvalues) {
    if (eigenvalues.empty())
        throw validation_error("spectrum: need at least one eigenvalue");

    double max_eig = 0.0;
    for (double v : eigenvalues) {
        if (!std::isfinite(v)) throw validation_error("spectrum: non-finite eigenvalue");
        if (v < -1e-12)
            throw validation_error("spectrum: eigenvalue " + std::to_string(v) +
                                   " below the -1e-12 tolerance");
        max_eig = std::max(max_eig, v);
    }
    if (max_eig <= 0.0)
        throw validation_error("spectrum: all eigenvalues are zero");

    Spectrum s;
    s.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
    const double clip = 1e-12 * max_eig;
    for (double& v : s.eigenvalues)
        if (v < clip) v = 0.0;

    const double total = compensated_sum(s.eigenvalues);
    s.normalized.resize(s.eigenvalues.size());
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        s.normalized[i] = s.eigenvalues[i] / total;

    NeumaierAccumulator entropy;
    for (double l : s.normalized)
        if (l > 0.0) entropy.add(-l * std::log(l));
    s.spectral_entropy = entropy.total();
    s.effective_rank = std::exp(s.spectral_entropy);

    const double d = static_cast<double>(s.dim());
    s.spectral_redundancy =
        std::clamp(1.0 - s.effective_rank / d, 0.0, 1.0 - 1.0 / d);
    return s;
}

Spectrum spectral_redundancy_of_batch(const Matrix& batch) {
    if (batch.rows < 2)
        throw validation_error("batch spectrum: need at least 2 rows for a covariance");
    if (batch.cols < 1) throw validation_error("batch spectrum: empty batch");
    for (double v : batch.data)
        if (!std::isfinite(v)) throw validation_error("batch spectrum: non-finite entry");

    // Center columns, then covariance with divisor rows-1 through the
    // reduction kernels on contiguous columns.
    const std::size_t n = batch.rows, d = batch.cols;
    Matrix cols(d, n);  // transposed, centered
    for (std::size_t j = 0; j < d; ++j) {
        NeumaierAccumulator mean_acc;
        for (std::size_t i = 0; i < n; ++i) mean_acc.add(batch.at(i, j));
        const double mean = mean_acc.total() / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) cols.at(j, i) = batch.at(i, j) - mean;
    }
    Matrix cov(d, d);
    const double divisor = static_cast<double>(n - 1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            const double v = simd::dot(cols.row(a), cols.row(b)) / divisor;
            cov.at(a, b) = v;
            cov.at(b, a) = v;
        }

    std::vector<double> eig = linalg::symmetric_eigenvalues(cov);
    double max_eig = 0.0;
    for (double v : eig) max_eig = std::max(max_eig, v);
    if (max_eig <= 0.0)
        throw validation_error("batch spectrum: zero-variance batch (all rows identical)");
    for (double& v : eig)
        if (v < 0.0) v = 0.0;  // symmetric-eigensolver dust on a PSD matrix
    return spectrum_from_eigenvalues(eig);
}

AttentionStack::AttentionStack(std::vector<Matrix> heads_in)
    : heads(std::move(heads_in)) {
    if (heads.size() < 2)
        throw validation_error("attention stack: need at least 2 heads");
    const std::size_t n = heads.front().rows;
    for (const Matrix& h : heads) {
        if (!h.square() || h.rows != n)
            throw validation_error("attention stack: heads must share one square shape");
        for (double v : h.data)
            if (!std::isfinite(v))
                throw validation_error("attention stack: non-finite entry");
        if (linalg::frobenius_norm(h) <= 1e-12)
            throw validation_error("attention stack: zero-norm head");
    }
}

double head_redundancy(const AttentionStack& stack) {
    const std::size_t h = stack.heads.size();
    std::vector<double> norms2(h);
    for (std::size_t i = 0; i < h; ++i)
        norms2[i] = simd::sum_squares(std::span<const double>(stack.heads[i].data));

    double acc = 0.0;
    for (std::size_t a = 0; a < h; ++a)
        for (std::size_t b = a + 1; b < h; ++b) {
            const double ip = simd::dot(std::span<const double>(stack.heads[a].data),
                                        std::span<const double>(stack.heads[b].data));
            acc += 2.0 * (ip * ip) / (norms2[a] * norms2[b]);  // both ordered pairs
        }
    return acc / (static_cast<double>(h) * static_cast<double>(h - 1));
}

double spectral_norm_energy_bound(const Matrix& w, double sigma2, double m) {
    if (!(sigma2 >= 0.0))
        throw validation_error("energy bound: sigma2 must be nonnegative");
    if (!(m >= 0.0)) throw validation_error("energy bound: M must be nonnegative");
    const double norm = linalg::spectral_norm(w);
    // small allowance for matrices scaled to hit M exactly
    if (norm > m * (1.0 + 1e-9) + 1e-12)
        throw validation_error("energy bound: ||W||_2 = " + std::to_string(norm) +
                               " exceeds M = " + std::to_string(m));
    return m * m * sigma2;
}

}  // namespace redkit
