#pragma once

// Shared test helpers: seeded generators (exponential-normalized tables and
// channels, correlation perturbations) and small independent oracles kept
// deliberately naive so they do not share code paths with the library.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "redkit/compensated.hpp"
#include "redkit/discrete.hpp"
#include "redkit/gaussian.hpp"
#include "redkit/kernels.hpp"
#include "redkit/linalg.hpp"
#include "redkit/rng.hpp"

namespace testsupport {

inline std::vector<redkit::Kernel> all_kernels() {
    return {redkit::Kernel::kl(), redkit::Kernel::chi_squared(),
            redkit::Kernel::power(1.5), redkit::Kernel::squared_hellinger(),
            redkit::Kernel::jensen_shannon()};
}

// iid exponentials per cell, normalized: uniform on the simplex.
inline redkit::JointTable random_joint_table(redkit::SplitMix64& rng,
                                             const std::vector<std::size_t>& sizes) {
    std::size_t cells = 1;
    for (std::size_t k : sizes) cells *= k;
    std::vector<double> probs(cells);
    double total = 0.0;
    for (double& p : probs) {
        p = -std::log(rng.uniform_pos());
        total += p;
    }
    for (double& p : probs) p /= total;
    return redkit::JointTable(sizes, std::move(probs));
}

// Random shape with n in {2,3} and alphabet sizes in {2..max_k}.
inline redkit::JointTable random_joint_table(redkit::SplitMix64& rng,
                                             std::size_t max_k = 5) {
    const std::size_t n = 2 + rng.next_u64() % 2;
    std::vector<std::size_t> sizes(n);
    for (auto& k : sizes) k = 2 + rng.next_u64() % (max_k - 1);
    return random_joint_table(rng, sizes);
}

inline redkit::CoordinateChannel random_channel(redkit::SplitMix64& rng,
                                                std::size_t coord, std::size_t k_in,
                                                std::size_t k_out) {
    redkit::Matrix t(k_in, k_out);
    for (std::size_t r = 0; r < k_in; ++r) {
        double total = 0.0;
        for (std::size_t c = 0; c < k_out; ++c) {
            t.at(r, c) = -std::log(rng.uniform_pos());
            total += t.at(r, c);
        }
        for (std::size_t c = 0; c < k_out; ++c) t.at(r, c) /= total;
    }
    return redkit::CoordinateChannel(coord, std::move(t));
}

// C = I + eps*B with symmetric zero-diagonal B, eps scaled to the target
// Frobenius norm of the deviation; positive definiteness (and, on request,
// spectral radius below 1) verified, redrawing until both hold.
inline redkit::CorrelationModel random_correlation(redkit::SplitMix64& rng,
                                                   std::size_t dim, double target_fro,
                                                   bool need_radius_below_one = false) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        redkit::Matrix b(dim, dim);
        double fro2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) {
                const double v = 2.0 * rng.uniform() - 1.0;
                b.at(i, j) = v;
                b.at(j, i) = v;
                fro2 += 2.0 * v * v;
            }
        if (fro2 <= 0.0) continue;
        const double eps = target_fro / std::sqrt(fro2);
        redkit::Matrix c = redkit::Matrix::identity(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j) c.at(i, j) = eps * b.at(i, j);
        if (!redkit::linalg::cholesky_lower(c)) continue;
        redkit::CorrelationModel model(std::move(c));
        if (need_radius_below_one && !(model.deviation_spectral_radius() < 0.999))
            continue;
        return model;
    }
    throw std::runtime_error("random_correlation: exhausted redraw budget");
}

// Inverse-CDF draw over flat cells: first index whose running mass exceeds u.
inline std::size_t sample_categorical(redkit::SplitMix64& rng,
                                      std::span<const double> probs) {
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return i;
    }
    return probs.size() - 1;
}

// Brute-force redundancy for 2-coordinate tables; own marginal computation
// and kernel evaluation, no shared code with the library path.
inline double oracle_redundancy_2d(const std::vector<double>& cells, std::size_t k1,
                                   std::size_t k2, const redkit::Kernel& kernel) {
    std::vector<double> m1(k1, 0.0), m2(k2, 0.0);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k2; ++j) {
            m1[i] += cells[i * k2 + j];
            m2[j] += cells[i * k2 + j];
        }
    double acc = 0.0;
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k2; ++j) {
            const double q = m1[i] * m2[j];
            if (q <= 0.0) continue;
            acc += q * kernel.eval(cells[i * k2 + j] / q);
        }
    return acc;
}

// 2D standard Gaussian with correlation rho discretized on cell centers over
// [-half, half]^2; mass normalized with a compensated total.
inline redkit::JointTable gaussian_table(double rho, std::size_t bins, double half) {
    const double h = 2.0 * half / static_cast<double>(bins);
    std::vector<double> centers(bins);
    for (std::size_t i = 0; i < bins; ++i)
        centers[i] = -half + (static_cast<double>(i) + 0.5) * h;
    std::vector<double> w(bins * bins);
    const double denom = 2.0 * (1.0 - rho * rho);
    redkit::NeumaierAccumulator total;
    for (std::size_t i = 0; i < bins; ++i)
        for (std::size_t j = 0; j < bins; ++j) {
            const double x = centers[i], y = centers[j];
            w[i * bins + j] = std::exp(-(x * x - 2.0 * rho * x * y + y * y) / denom);
            total.add(w[i * bins + j]);
        }
    const double t = total.total();
    for (double& v : w) v /= t;
    return redkit::JointTable({bins, bins}, std::move(w));
}

}  // namespace testsupport
