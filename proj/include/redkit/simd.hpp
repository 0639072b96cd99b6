#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "redkit/kernels.hpp"

namespace redkit::simd {

// Instruction set of the active reduction kernels. The scalar kernels are the
// reference semantics; vector variants must agree with them within 1e-12
// relative (enforced by the equivalence test suite).
enum class Isa { scalar, avx2 };

// Detected at first use: AVX2 when the CPU supports it, otherwise scalar.
// The environment variable REDKIT_SIMD=scalar|avx2|auto overrides detection.
Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_supported();

// Test hooks. force_isa(avx2) throws validation_error on hardware without it.
void force_isa(Isa isa);
void reset_isa();

// --- data-parallel reduction kernels ---------------------------------------
// Accumulation order is fixed per ISA, so results are bit-stable run to run.

// Sum of entries.
double sum(std::span<const double> x);

// Inner product; sizes must match.
double dot(std::span<const double> a, std::span<const double> b);

// Sum of squared entries.
double sum_squares(std::span<const double> x);

// Sum of x ln x over entries, with 0 ln 0 = 0. Requires x_i >= 0.
double xlogx_sum(std::span<const double> x);

// Sum of q_i * f(p_i / q_i) over entries with q_i > 0; cells with q_i <= 0
// contribute nothing. The t = 0 limit convention of the kernel applies.
double fdiv_sum(const Kernel& kernel, std::span<const double> p,
                std::span<const double> q);

}  // namespace redkit::simd
