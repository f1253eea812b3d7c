#pragma once

#include <cstdint>

namespace slantpath::rng {

/// splitmix64 finalizer; bijective on 64-bit values.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based substream value for (seed, sample, slab). Stateless, so
/// sampling results do not depend on evaluation order or parallel schedule.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t sample,
                               std::uint64_t slab) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ (sample * 0x9E3779B97F4A7C15ULL));
    h = mix(h ^ (slab * 0xC2B2AE3D27D4EB4FULL));
    return h;
}

/// Uniform draw in [0, 1) from the (seed, sample, slab) substream.
inline double uniform01(std::uint64_t seed, std::uint64_t sample,
                        std::uint64_t slab) {
    return static_cast<double>(substream(seed, sample, slab) >> 11) * 0x1.0p-53;
}

}  // namespace slantpath::rng
