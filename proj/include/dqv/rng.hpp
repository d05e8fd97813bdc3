#pragma once

#include <cstdint>

namespace dqv {

// SplitMix64 (Steele, Lea, Vigna; public domain reference implementation).
// Chosen over std::mt19937_64 because the standard distributions are
// implementation-defined, and experiment outputs must be byte-identical
// across compilers and across worker counts. Each trial gets its own
// stream keyed on (seed, trial index), so results never depend on how
// trials are split over threads.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    // Stream for trial `index` of a run seeded with `seed`. The two words
    // are mixed through the output function first so that nearby seeds or
    // indices do not produce correlated streams.
    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(seed) ^ mix(index * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Unbiased uniform draw from {0, ..., bound-1} by rejection.
    std::uint64_t next_bounded(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Fair three-sided die, used for round types and for membership in the
    // verifier's random subset (one face in, two faces out gives exactly 1/3).
    std::uint32_t die3() { return static_cast<std::uint32_t>(next_bounded(3)); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

// Decorrelated child seed, for running several independent estimates off one
// user-facing seed (one per sweep entry, one per experiment row, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return SplitMix64::for_trial(seed, salt).next_u64();
}

// Documented default seed for every randomized entry point.
inline constexpr std::uint64_t kDefaultSeed = 1729;

} // namespace dqv
