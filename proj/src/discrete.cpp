#include "redkit/discrete.hpp"

#include <cmath>
#include <string>

#include "redkit/compensated.hpp"
#include "redkit/errors.hpp"
#include "redkit/simd.hpp"

namespace redkit {

namespace {

// Mixed-radix digit counter over a table's index space, last digit fastest.
struct CellWalker {
    explicit CellWalker(const std::vector<std::size_t>& sizes)
        : sizes(sizes), digits(sizes.size(), 0) {}

    const std::vector<std::size_t>& sizes;
    std::vector<std::size_t> digits;

    bool advance() {
        for (std::size_t i = sizes.size(); i-- > 0;) {
            if (++digits[i] < sizes[i]) return true;
            digits[i] = 0;
        }
        return false;
    }
};

std::size_t checked_cell_count(const std::vector<std::size_t>& sizes) {
    std::size_t cells = 1;
    for (std::size_t k : sizes) {
        if (k == 0) throw validation_error("joint table: alphabet size must be positive");
        if (cells > (std::size_t{1} << 40) / k)
            throw validation_error("joint table: cell count out of supported range");
        cells *= k;
    }
    return cells;
}

}  // namespace

JointTable::JointTable(std::vector<std::size_t> sizes, std::vector<double> probs)
    : sizes_(std::move(sizes)), probs_(std::move(probs)) {
    if (sizes_.size() < 2)
        throw validation_error("joint table: need at least 2 coordinates");
    const std::size_t cells = checked_cell_count(sizes_);
    if (probs_.size() != cells)
        throw validation_error("joint table: expected " + std::to_string(cells) +
                               " cells, got " + std::to_string(probs_.size()));
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw validation_error("joint table: negative or NaN cell probability");
    }
    const double total = compensated_sum(probs_);
    if (std::abs(total - 1.0) > 1e-12)
        throw validation_error("joint table: mass sums to " + std::to_string(total) +
                               ", not 1 within 1e-12");
}

std::size_t JointTable::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != sizes_.size())
        throw validation_error("joint table: index arity mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (index[i] >= sizes_[i])
            throw validation_error("joint table: index out of range");
        flat = flat * sizes_[i] + index[i];
    }
    return flat;
}

double JointTable::prob(std::span<const std::size_t> index) const {
    return probs_[flat_index(index)];
}

CoordinateChannel::CoordinateChannel(std::size_t coordinate_index, Matrix transition)
    : coordinate_index(coordinate_index), transition(std::move(transition)) {
    if (this->transition.rows == 0 || this->transition.cols == 0)
        throw validation_error("channel: empty transition matrix");
    for (std::size_t r = 0; r < this->transition.rows; ++r) {
        NeumaierAccumulator acc;
        for (std::size_t c = 0; c < this->transition.cols; ++c) {
            const double v = this->transition.at(r, c);
            if (!(v >= 0.0))
                throw validation_error("channel: negative or NaN transition entry");
            acc.add(v);
        }
        if (std::abs(acc.total() - 1.0) > 1e-12)
            throw validation_error("channel: row " + std::to_string(r) +
                                   " does not sum to 1 within 1e-12");
    }
}

CoordinateChannel CoordinateChannel::identity(std::size_t coordinate_index,
                                              std::size_t alphabet_size) {
    return CoordinateChannel(coordinate_index, Matrix::identity(alphabet_size));
}

std::vector<std::vector<double>> marginals(const JointTable& joint) {
    const auto& sizes = joint.sizes();
    const std::size_t n = sizes.size();
    std::vector<std::vector<NeumaierAccumulator>> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i].resize(sizes[i]);

    CellWalker walker(sizes);
    std::size_t flat = 0;
    const auto probs = joint.probs();
    do {
        const double p = probs[flat++];
        for (std::size_t i = 0; i < n; ++i) acc[i][walker.digits[i]].add(p);
    } while (walker.advance());

    std::vector<std::vector<double>> result(n);
    for (std::size_t i = 0; i < n; ++i) {
        result[i].resize(sizes[i]);
        for (std::size_t j = 0; j < sizes[i]; ++j) result[i][j] = acc[i][j].total();
    }
    return result;
}

namespace {

std::vector<double> product_cells(const JointTable& joint,
                                  const std::vector<std::vector<double>>& margs) {
    const auto& sizes = joint.sizes();
    std::vector<double> cells(joint.cells());
    CellWalker walker(sizes);
    std::size_t flat = 0;
    do {
        double v = 1.0;
        for (std::size_t i = 0; i < sizes.size(); ++i) v *= margs[i][walker.digits[i]];
        cells[flat++] = v;
    } while (walker.advance());
    return cells;
}

}  // namespace

JointTable product_measure(const JointTable& joint) {
    return JointTable(joint.sizes(), product_cells(joint, marginals(joint)));
}

double redundancy_f(const JointTable& joint, const Kernel& kernel) {
    const auto pi = product_cells(joint, marginals(joint));
    const auto p = joint.probs();
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (pi[i] <= 0.0 && p[i] > 1e-12)
            throw validation_error(
                "redundancy: joint mass on a cell where the product measure "
                "vanishes (inconsistent table)");
    }
    return simd::fdiv_sum(kernel, p, pi);
}

double total_correlation_entropy(const JointTable& joint) {
    // H in nats via -sum x ln x; the marginal entropies use the compensated
    // marginals, the joint entropy runs through the reduction kernel.
    NeumaierAccumulator marginal_entropy;
    for (const auto& m : marginals(joint))
        marginal_entropy.add(-simd::xlogx_sum(m));
    const double joint_entropy = -simd::xlogx_sum(joint.probs());
    return marginal_entropy.total() - joint_entropy;
}

namespace {

// Push one coordinate of a dense table through a row-stochastic matrix.
std::vector<double> push_coordinate(const std::vector<double>& cells,
                                    const std::vector<std::size_t>& sizes,
                                    std::size_t coord, const Matrix& k) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t j = 0; j < coord; ++j) outer *= sizes[j];
    for (std::size_t j = coord + 1; j < sizes.size(); ++j) inner *= sizes[j];
    const std::size_t k_in = k.rows, k_out = k.cols;

    std::vector<double> out(outer * k_out * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t x = 0; x < k_in; ++x) {
            const double* src = cells.data() + (o * k_in + x) * inner;
            for (std::size_t y = 0; y < k_out; ++y) {
                const double w = k.at(x, y);
                if (w == 0.0) continue;
                double* dst = out.data() + (o * k_out + y) * inner;
                for (std::size_t r = 0; r < inner; ++r) dst[r] += w * src[r];
            }
        }
    }
    return out;
}

}  // namespace

JointTable apply_coordinate_channels(const JointTable& joint,
                                     const std::vector<CoordinateChannel>& channels) {
    const std::size_t n = joint.coordinates();
    if (channels.size() != n)
        throw validation_error("channels: need exactly one channel per coordinate");
    for (std::size_t i = 0; i < n; ++i) {
        if (channels[i].coordinate_index != i)
            throw validation_error("channels: channel " + std::to_string(i) +
                                   " has coordinate_index " +
                                   std::to_string(channels[i].coordinate_index));
        if (channels[i].transition.rows != joint.sizes()[i])
            throw validation_error("channels: transition rows do not match alphabet "
                                   "size of coordinate " + std::to_string(i));
    }

    std::vector<double> cells(joint.probs().begin(), joint.probs().end());
    std::vector<std::size_t> sizes = joint.sizes();
    for (std::size_t i = 0; i < n; ++i) {
        cells = push_coordinate(cells, sizes, i, channels[i].transition);
        sizes[i] = channels[i].transition.cols;
    }
    return JointTable(std::move(sizes), std::move(cells));
}

}  // namespace redkit
