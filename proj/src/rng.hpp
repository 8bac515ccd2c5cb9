#pragma once

#include <cstdint>

namespace arcq::runtime {

/// Deterministic 64-bit generator; the whole state is remixed each draw so
/// identical seeds replay identical sequences everywhere.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ull;
        state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ull;
        state = (state ^ (state >> 27)) * 0x94D049BB133111EBull;
        state ^= state >> 31;
        return state;
    }

    /// Uniform in [0, 1).
    double next_uniform() { return static_cast<double>(next_u64()) * 0x1.0p-64; }
};

}  // namespace arcq::runtime
