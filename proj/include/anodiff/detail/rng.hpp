#pragma once

#include <cstdint>

namespace anodiff::detail {

/// splitmix64 stream. Small, fast, and fully portable: unlike the standard
/// distributions, every draw is bit-reproducible across implementations.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; never returns zero.
    double unit_positive() { return 1.0 - unit(); }
};

/// Derives an independent stream for (seed, stream_index) by hashing the
/// counter into the seed. Stream i is the same no matter how many streams
/// exist or which worker draws from it.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t z = seed + (stream_index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return SplitMix64{z ^ (z >> 31)};
}

}  // namespace anodiff::detail
