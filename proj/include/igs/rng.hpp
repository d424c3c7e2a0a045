#pragma once

#include <cstdint>

namespace igs {

// splitmix64 finalizer (Steele, Lea, Flood; public domain reference code).
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-style generator: splitmix64 over an incrementing state.
//
// A stream is a pure function of (base_seed, stream_index), so the i-th
// draw of stream i is reproducible no matter which thread runs it or in
// which order streams are consumed. Stream starting points are scrambled
// through mix64 so that consecutive indices do not yield overlapping
// counter ranges.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(mix64(seed + 0x9E3779B97F4A7C15ULL)) {}

    Rng(uint64_t base_seed, uint64_t stream)
        : state_(mix64(mix64(base_seed + 0x9E3779B97F4A7C15ULL) + stream)) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n); n > 0. Bias is O(n / 2^64).
    uint32_t next_below(uint32_t n) {
        return static_cast<uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    uint64_t state_;
};

} // namespace igs
