#pragma once

#include <cstdint>

namespace fpa {

// Counter-style splittable generator (splitmix64). Streams are derived by
// hashing (seed, index...) so that every (episode, period) pair gets its own
// reproducible stream regardless of scheduling.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

inline std::uint64_t hash64(std::uint64_t x) {
    SplitMix64 g(x);
    return g.next();
}

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t idx) {
    return hash64(seed ^ (0xd1b54a32d192ed03ULL * (idx + 1)));
}

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    return substream(substream(seed, i), j);
}

}  // namespace fpa
