#pragma once

#include <cstdint>

namespace hyperperc::rng {

// Counter-based generator built on the SplitMix64 finalizer
// (constants from Steele/Lea/Flood, "Fast splittable pseudorandom number
// generators").  value(seed, counter) is a pure function, so any execution
// order -- parallel trials included -- reproduces the same stream.
inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t value(uint64_t seed, uint64_t counter) {
    return mix(seed + counter * kGolden);
}

// Uniform in [0,1) with 53 random bits.
inline double uniform(uint64_t seed, uint64_t counter) {
    return static_cast<double>(value(seed, counter) >> 11) * 0x1.0p-53;
}

// Per-trial stream: seed XOR trial index (mixed so adjacent trials decorrelate).
inline uint64_t trial_stream(uint64_t seed, uint64_t trial) {
    return mix(seed ^ trial);
}

}  // namespace hyperperc::rng
