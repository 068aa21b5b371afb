#pragma once

#include <cstdint>

namespace r1dual {

/// SplitMix64 finalizer; statelessly mixes one word.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic per-frame random stream derived from (seed, frame) by a
/// counter-based construction, so frames can be processed in any order or
/// in parallel without changing the results.
class FrameRng {
public:
    FrameRng(uint64_t seed, uint64_t frame)
        : state_(mix64(seed ^ mix64(frame + 0x5851f42d4c957f2dULL))) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    uint8_t bit() { return static_cast<uint8_t>(next() >> 63); }

    /// Uniform in (0, 1].
    double uniform_pos() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one spare value is cached.
    double gaussian();

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace r1dual
