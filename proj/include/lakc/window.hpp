#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/types.hpp"

namespace lakc {

// Outcome of the contiguous-window search over an ascending sort of the input:
// the `width` consecutive values starting at `start` have the smallest 1-means
// cost among all such windows, with ties broken toward the smallest start.
struct WindowResult {
    std::size_t start = 0;
    std::size_t width = 0;
    double mean = 0.0;
    double cost = 0.0;
};

/// Minimum-1-means-cost contiguous window of `width` values.
///
/// Sorts ascending, builds prefix sums of values and squares, then scans all
/// n-width+1 windows in one pass; O(n log n) overall. The comparison uses
/// strict less-than so the first optimal window wins.
inline WindowResult best_window(std::span<const double> values, std::size_t width) {
    const std::size_t n = values.size();
    if (width < 1 || width > n) {
        throw width_error("best_window: width " + std::to_string(width) +
                          " outside [1, " + std::to_string(n) + "]");
    }

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> prefix(n + 1, 0.0);
    std::vector<double> prefix_sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + sorted[i];
        prefix_sq[i + 1] = prefix_sq[i] + sorted[i] * sorted[i];
    }

    WindowResult best;
    best.width = width;
    double best_cost = std::numeric_limits<double>::infinity();
    double best_mean = 0.0;
    for (std::size_t s = 0; s + width <= n; ++s) {
        double cost;
        double mean;
        if (!detail::two_value_window_cost({sorted.data() + s, width}, &cost, &mean)) {
            const double sum = prefix[s + width] - prefix[s];
            const double sumsq = prefix_sq[s + width] - prefix_sq[s];
            cost = one_means_cost({sorted.data() + s, width}, sum, sumsq);
            mean = sum / static_cast<double>(width);
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_mean = mean;
            best.start = s;
        }
    }
    best.cost = best_cost;
    best.mean = best_mean;
    return best;
}

// Window width for a cluster of size m_i at error rate alpha:
// w = m_i - floor(alpha * m_i), i.e. ceil((1 - alpha) * m_i). Always in [1, m_i].
inline std::size_t window_width(std::size_t cluster_size, ErrorRate alpha) {
    if (cluster_size < 1) throw domain_error("window_width: cluster size must be >= 1");
    const auto drop = static_cast<std::size_t>(
        std::floor(alpha.value() * static_cast<double>(cluster_size)));
    return cluster_size - drop;
}

}  // namespace lakc
