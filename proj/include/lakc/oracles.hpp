#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"

namespace lakc {

// Brute-force references for the test suite. These deliberately recompute
// means per window instead of using prefix sums, so agreement with the fast
// paths is an independent check rather than the same arithmetic twice.
namespace oracle {

struct BruteWindow {
    double cost = 0.0;
    std::size_t start = 0;
    double mean = 0.0;
};

inline double subset_cost(std::span<const double> sorted, std::span<const std::size_t> picks) {
    double mean = 0.0;
    for (std::size_t i : picks) mean += sorted[i];
    mean /= static_cast<double>(picks.size());
    double cost = 0.0;
    for (std::size_t i : picks) {
        const double delta = sorted[i] - mean;
        cost += delta * delta;
    }
    return cost;
}

// O(n*w) scan of every contiguous window of the ascending sort; ties toward
// the smallest start, matching best_window.
inline BruteWindow brute_window(std::span<const double> values, std::size_t width) {
    const std::size_t n = values.size();
    if (width < 1 || width > n) {
        throw width_error("brute_window: width " + std::to_string(width) + " outside [1, " +
                          std::to_string(n) + "]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    BruteWindow best;
    best.cost = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + width <= n; ++s) {
        double mean;
        double cost;
        if (!detail::two_value_window_cost({sorted.data() + s, width}, &cost, &mean)) {
            mean = 0.0;
            for (std::size_t t = 0; t < width; ++t) mean += sorted[s + t];
            mean /= static_cast<double>(width);
            cost = 0.0;
            for (std::size_t t = 0; t < width; ++t) {
                const double delta = sorted[s + t] - mean;
                cost += delta * delta;
            }
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.start = s;
            best.mean = mean;
        }
    }
    return best;
}

// Minimum 1-means cost over ALL size-width subsets, not just contiguous ones.
// Combinatorial, so inputs are capped at n <= 12.
inline double brute_subset_window(std::span<const double> values, std::size_t width) {
    const std::size_t n = values.size();
    if (n > 12) throw domain_error("brute_subset_window: refusing n > 12");
    if (width < 1 || width > n) {
        throw width_error("brute_subset_window: width outside [1, n]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::size_t> picks(width);
    for (std::size_t i = 0; i < width; ++i) picks[i] = i;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        best = std::min(best, subset_cost(sorted, picks));
        // next lexicographic combination
        std::size_t i = width;
        while (i > 0 && picks[i - 1] == n - width + (i - 1)) --i;
        if (i == 0) break;
        ++picks[i - 1];
        for (std::size_t t = i; t < width; ++t) picks[t] = picks[t - 1] + 1;
    }
    return best;
}

// 1-D median: middle element for odd n, midpoint of the middle pair for even
// n (any point between the pair is optimal; the midpoint is the canonical
// representative, so compare costs rather than positions).
inline double brute_median_1d(std::span<const double> values) {
    if (values.empty()) throw empty_cluster_error("brute_median_1d: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace oracle
}  // namespace lakc
