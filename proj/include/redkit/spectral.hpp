#pragma once

#include <span>
#include <vector>

#include "redkit/linalg.hpp"

namespace redkit {

// Normalized covariance spectrum with its entropy summaries.
//   spectral_entropy    H = -sum l~_i ln l~_i   (nats, 0 ln 0 = 0)
//   effective_rank      exp(H), in [1, D]
//   spectral_redundancy 1 - effective_rank / D, in [0, 1 - 1/D]
struct Spectrum {
    std::vector<double> eigenvalues;  // input order, sub-1e-12-relative values clipped to 0
    std::vector<double> normalized;   // sums to 1
    double spectral_entropy = 0.0;
    double effective_rank = 0.0;
    double spectral_redundancy = 0.0;

    std::size_t dim() const { return eigenvalues.size(); }
};

// Builds the spectrum summaries from raw eigenvalues.
// Eigenvalues below 1e-12 times the largest are clipped to 0 (eigensolver
// dust); entries below -1e-12 or an all-zero spectrum are rejected.
// The entropy sum is compensated, so extremal spectra (uniform, rank-one)
// land exactly on the bounds.
Spectrum spectrum_from_eigenvalues(std::span<const double> eigenvalues);

// Column-covariance spectrum of a batch (rows = samples, cols = features).
// Covariance uses centered columns and divisor rows-1. Throws for fewer than
// two rows or an all-constant batch (zero spectrum).
Spectrum spectral_redundancy_of_batch(const Matrix& batch);

// H >= 2 attention maps of a common square shape.
struct AttentionStack {
    std::vector<Matrix> heads;

    // Validates the shape constraints and nonzero Frobenius norms.
    explicit AttentionStack(std::vector<Matrix> heads);
};

// Mean squared Frobenius cosine over ordered pairs of distinct heads; in [0,1].
double head_redundancy(const AttentionStack& stack);

// Certified energy cap M^2 sigma2 for z = W x with ||W||_2 <= M and
// E||x||^2 <= sigma2. Throws if the spectral norm of W exceeds M.
double spectral_norm_energy_bound(const Matrix& w, double sigma2, double m);

}  // namespace redkit
