#pragma once

// Deterministic randomness. Every stochastic routine in this library draws
// from a RandomSource so that a 64-bit seed fully determines the output on
// every platform. The generator is xoshiro256** (Blackman/Vigna), seeded by
// expanding the 64-bit seed with the splitmix64 sequence; both algorithms
// are publicly specified, so seeds reproduce across independent
// implementations.

#include <array>
#include <cstdint>
#include <stdexcept>

namespace conclust {

namespace detail {

// splitmix64: advances x by the golden-ratio increment and returns the
// scrambled value.
inline std::uint64_t splitmix64_next(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless finalizer used for deriving stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = detail::splitmix64_next(x);
    }

    std::uint64_t seed() const { return seed_; }

    // xoshiro256** next().
    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound). Unbiased: draws below the rejection
    // threshold are discarded.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RandomSource::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent source for stream `index`, derived only from (seed, index).
    // Callers that fan work out per row/run use this so results do not depend
    // on scheduling.
    RandomSource split(std::uint64_t index) const {
        return RandomSource(detail::mix64(seed_ + (index + 1) * 0xD1B54A32D192ED03ULL));
    }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_ = 0;
};

} // namespace conclust
