#include "redkit/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "redkit/errors.hpp"
#include "simd_detail.hpp"

namespace redkit::simd {

namespace {

Isa detect() {
    if (const char* env = std::getenv("REDKIT_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_supported())
                throw validation_error("REDKIT_SIMD=avx2 but the CPU lacks AVX2");
            return Isa::avx2;
        }
        // anything else (including "auto") falls through to detection
    }
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int> forced{-1};  // -1: auto

const detail::OpsTable& table() {
    const int f = forced.load(std::memory_order_relaxed);
    const Isa isa = f >= 0 ? static_cast<Isa>(f) : active_isa();
    return isa == Isa::avx2 ? detail::avx2_table() : detail::scalar_table();
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa active_isa() {
    const int f = forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<Isa>(f);
    static const Isa detected = detect();
    return detected;
}

const char* isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_supported())
        throw validation_error("cannot force avx2: unsupported CPU");
    forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { forced.store(-1, std::memory_order_relaxed); }

double sum(std::span<const double> x) { return table().sum(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw validation_error("dot: size mismatch");
    return table().dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> x) {
    return table().sum_squares(x.data(), x.size());
}

double xlogx_sum(std::span<const double> x) {
    return table().xlogx_sum(x.data(), x.size());
}

double fdiv_sum(const Kernel& kernel, std::span<const double> p,
                std::span<const double> q) {
    if (p.size() != q.size()) throw validation_error("fdiv_sum: size mismatch");
    return table().fdiv_sum(kernel, p.data(), q.data(), p.size());
}

}  // namespace redkit::simd
