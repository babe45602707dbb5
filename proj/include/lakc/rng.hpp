#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace lakc {

// Deterministic RNG utilities. Everything seeded in this library goes through
// SplitMix64 plus the substream derivation below, so results are reproducible
// bit-for-bit across platforms and thread counts; the <random> distributions
// are implementation-defined and deliberately avoided.

namespace detail {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Independent stream id for (seed, a, b). Used to give every cluster/round/
// operation its own generator so parallel evaluation order cannot matter.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = detail::mix64(seed + detail::kGolden);
    h = detail::mix64(h ^ (a + detail::kGolden));
    h = detail::mix64(h ^ (b + detail::kGolden));
    return h;
}

// Tags keep unrelated seeded operations on disjoint substreams even when the
// caller passes the same seed to each of them.
enum class stream_tag : std::uint64_t {
    synth = 0x5359ull,
    corrupt = 0x434Full,
    kmeanspp = 0x4B50ull,
    kmedoids = 0x4B4Dull,
    sampling = 0x5341ull,
    kmedians_round = 0x4D44ull,
};

inline std::uint64_t substream(std::uint64_t seed, stream_tag tag, std::uint64_t b = 0) {
    return substream(seed, static_cast<std::uint64_t>(tag), b);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += detail::kGolden);
        return detail::mix64(z);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n); rejection from the top of the range.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Standard normal via Box-Muller; u1 is kept away from zero.
    double next_normal() {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

// First `count` entries of a seeded uniform permutation of {0,...,n-1}
// (partial Fisher-Yates); used for sampling without replacement.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                           SplitMix64& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    if (count > n) count = n;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace lakc
