#pragma once

#include <cstdint>

namespace nhvqe {

/// Minimal deterministic generator (splitmix64). Used everywhere randomness is
/// needed so results are reproducible bit-for-bit across platforms and
/// standard-library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a salt, so
/// concurrent or per-term sampling stays deterministic regardless of call
/// order.
inline std::uint64_t seed_stream(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ull + salt * 0x9e3779b97f4a7c15ull));
    return g.next();
}

}  // namespace nhvqe
