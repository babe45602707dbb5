#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lakc/rng.hpp"
#include "lakc/types.hpp"

namespace lakc::test {

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// 1-D values as an m x 1 dataset.
inline Dataset dataset_1d(const std::vector<double>& values) {
    return Dataset(std::vector<double>(values), values.size(), 1);
}

inline std::vector<double> random_values(SplitMix64& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = lo + (hi - lo) * rng.next_double();
    return v;
}

// Mixed-texture 1-D samples: uniform, Gaussian, or duplicate-heavy (a handful
// of continuous base values sampled with replacement).
inline std::vector<double> random_values_mixed(SplitMix64& rng, std::size_t n) {
    const std::uint64_t family = rng.next_below(3);
    std::vector<double> v(n);
    if (family == 0) {
        for (auto& x : v) x = 200.0 * rng.next_double() - 100.0;
    } else if (family == 1) {
        for (auto& x : v) x = 5.0 * rng.next_normal();
    } else {
        std::vector<double> base(std::max<std::size_t>(1, n / 3));
        for (auto& b : base) b = 100.0 * (2.0 * rng.next_double() - 1.0);
        for (auto& x : v) x = base[rng.next_below(base.size())];
    }
    return v;
}

inline Dataset random_dataset(SplitMix64& rng, std::size_t m, std::size_t d, double scale = 10.0) {
    std::vector<double> flat(m * d);
    for (auto& x : flat) x = scale * (2.0 * rng.next_double() - 1.0);
    return Dataset(std::move(flat), m, d);
}

}  // namespace lakc::test
