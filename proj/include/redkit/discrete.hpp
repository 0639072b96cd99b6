#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "redkit/kernels.hpp"
#include "redkit/linalg.hpp"

namespace redkit {

// Dense probability table over a finite product alphabet, row-major with the
// last coordinate fastest. Immutable after construction; all operations on it
// are pure. Practical ceiling: around 1e7 cells (exactness at desk scale is
// the point, not scalability).
class JointTable {
public:
    // Validates: n >= 2 coordinates, positive alphabet sizes, cell count
    // matching, no negative entry, total mass 1 within 1e-12 (compensated
    // summation, so the check is meaningful at any table size).
    JointTable(std::vector<std::size_t> sizes, std::vector<double> probs);

    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::span<const double> probs() const { return probs_; }
    std::size_t coordinates() const { return sizes_.size(); }
    std::size_t cells() const { return probs_.size(); }

    double prob(std::span<const std::size_t> index) const;
    std::size_t flat_index(std::span<const std::size_t> index) const;

private:
    std::vector<std::size_t> sizes_;
    std::vector<double> probs_;
};

// Row-stochastic noise acting on one coordinate.
struct CoordinateChannel {
    std::size_t coordinate_index;
    Matrix transition;  // input alphabet x output alphabet

    // Validates nonnegative entries and unit row sums (1e-12).
    CoordinateChannel(std::size_t coordinate_index, Matrix transition);

    static CoordinateChannel identity(std::size_t coordinate_index,
                                      std::size_t alphabet_size);
};

// Marginal distribution of each coordinate (compensated accumulation).
std::vector<std::vector<double>> marginals(const JointTable& joint);

// Product of the marginals as a table over the same alphabet.
JointTable product_measure(const JointTable& joint);

// R_f(X) = sum_x Pi(x) f(p(x)/Pi(x)); cells with Pi(x) = 0 contribute 0.
// Throws validation_error if mass above 1e-12 sits where the product measure
// vanishes (cannot happen for a consistent table).
double redundancy_f(const JointTable& joint, const Kernel& kernel);

// sum_i H(X_i) - H(X) in nats, 0 ln 0 = 0. Equals redundancy_f(., kl).
double total_correlation_entropy(const JointTable& joint);

// Pushforward law under independent per-coordinate channels; one channel per
// coordinate, in coordinate order (identity channels allowed).
JointTable apply_coordinate_channels(const JointTable& joint,
                                     const std::vector<CoordinateChannel>& channels);

}  // namespace redkit
