#pragma once

#include <cmath>
#include <span>

namespace redkit {

// Neumaier compensated accumulator. Used where a sum must be accurate to the
// last bit regardless of length (table normalization checks, marginal
// accumulation, spectral entropy), not for the bulk reduction kernels.
class NeumaierAccumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double total() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    NeumaierAccumulator acc;
    for (double x : xs) acc.add(x);
    return acc.total();
}

}  // namespace redkit
