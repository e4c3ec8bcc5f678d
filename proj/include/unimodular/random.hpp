#pragma once

#include <cstdint>

namespace ul {

/// Counter-based SplitMix64: value i of stream `seed` is
/// mix(seed + (i + 1) * 0x9E3779B97F4A7C15), mix being the SplitMix64 finalizer.
/// Any value can be recomputed from (seed, i) alone, so sharded and sequential
/// consumers see the same numbers.
class CounterRng {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t i) const noexcept { return mix(seed_ + (i + 1) * kGolden); }

    /// floor(at(i) * bound / 2^64), in [0, bound).
    std::uint64_t below(std::uint64_t i, std::uint64_t bound) const noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(at(i)) * bound) >> 64);
    }

    /// Top 53 bits as a double in [0, 1).
    double unit(std::uint64_t i) const noexcept { return static_cast<double>(at(i) >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Sequential view of a CounterRng.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t start = 0) noexcept : rng_(seed), next_(start) {}

    std::uint64_t next() noexcept { return rng_.at(next_++); }
    std::uint64_t below(std::uint64_t bound) noexcept { return rng_.below(next_++, bound); }
    double unit() noexcept { return rng_.unit(next_++); }
    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    std::uint64_t position() const noexcept { return next_; }

private:
    CounterRng rng_;
    std::uint64_t next_;
};

} // namespace ul
