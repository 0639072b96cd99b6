#pragma once

#include <cmath>
#include <cstdint>

namespace redkit {

// SplitMix64 counter generator (Steele, Lea & Flood; the reference constants).
// Chosen so that any language can reproduce the exact stream from a 64-bit
// seed:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output = z ^ (z >> 31)
//
// Derived conventions, fixed for cross-implementation reproducibility:
//   uniform()     = (output >> 11) * 2^-53            in [0, 1)
//   uniform_pos() = ((output >> 11) + 1) * 2^-53      in (0, 1]
//   normal()      = sqrt(-2 ln u1) * cos(2*pi*u2)     u1 = uniform_pos(),
//                                                     u2 = uniform()
// normal() consumes exactly two raw outputs per call.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Zero-mean Gaussian with standard deviation sigma.
    double normal(double sigma) { return sigma * normal(); }

private:
    std::uint64_t state_;
};

}  // namespace redkit
