#pragma once

#include <cmath>
#include <cstdint>

namespace mvt {

/// splitmix64 finalizer. Used both as the stream generator and for deriving
/// independent child seeds, so every randomized result is a pure function of
/// the caller's 64-bit seed regardless of platform or standard library.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for worker `index` under `seed`; children of distinct indices
/// produce streams that are independent for all practical purposes.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Minimal counter-based generator: splitmix64 stream plus Box-Muller normals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe under log().
    double uniform_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached state).
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is fine here: n is tiny relative to 2^64, the
        // bias is far below anything observable in these experiments.
        return next_u64() % n;
    }

private:
    std::uint64_t state_;
};

} // namespace mvt
