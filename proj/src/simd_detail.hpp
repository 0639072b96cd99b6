#pragma once

#include <cstddef>

#include "redkit/kernels.hpp"

namespace redkit::simd::detail {

struct OpsTable {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    double (*xlogx_sum)(const double*, std::size_t);
    double (*fdiv_sum)(const Kernel&, const double*, const double*, std::size_t);
};

// Reference semantics; plain sequential loops.
const OpsTable& scalar_table();

// AVX2 variants; only valid to call when cpu_has_avx2() is true.
const OpsTable& avx2_table();
bool cpu_has_avx2();

}  // namespace redkit::simd::detail
