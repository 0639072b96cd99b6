// Scalar reference kernels. These define the semantics the vector variants
// are tested against; keep them as plain sequential loops.

#include <cmath>
#include <cstddef>

#include "redkit/kernels.hpp"
#include "simd_detail.hpp"

namespace redkit::simd::detail {

namespace {

double scalar_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double scalar_dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double scalar_sum_squares(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double scalar_xlogx_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > 0.0) acc += x[i] * std::log(x[i]);
    }
    return acc;
}

double scalar_fdiv_sum(const Kernel& kernel, const double* p, const double* q,
                       std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i] <= 0.0) continue;
        acc += q[i] * kernel.eval(p[i] / q[i]);
    }
    return acc;
}

}  // namespace

const OpsTable& scalar_table() {
    static const OpsTable table{scalar_sum, scalar_dot, scalar_sum_squares,
                                scalar_xlogx_sum, scalar_fdiv_sum};
    return table;
}

}  // namespace redkit::simd::detail
