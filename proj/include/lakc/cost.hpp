#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "lakc/errors.hpp"
#include "lakc/types.hpp"

namespace lakc {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double delta = a[j] - b[j];
        s += delta * delta;
    }
    return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

// Index of the nearest center under squared Euclidean distance; ties resolve
// to the lowest center index.
inline std::size_t nearest_center(std::span<const double> point, const CenterSet& centers) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.k(); ++i) {
        const double d = squared_distance(point, centers.row(i));
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

// k-means cost: sum over points of the squared distance to the closest center.
inline double cost_kmeans(const Dataset& data, const CenterSet& centers) {
    require_same_dim(data, centers);
    double total = 0.0;
    for (std::size_t p = 0; p < data.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < centers.k(); ++i) {
            const double d = squared_distance(data.row(p), centers.row(i));
            if (d < best) best = d;
        }
        total += best;
    }
    return total;
}

// k-medians cost: sum over points of the Euclidean distance to the closest center.
inline double cost_kmedians(const Dataset& data, const CenterSet& centers) {
    require_same_dim(data, centers);
    double total = 0.0;
    for (std::size_t p = 0; p < data.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < centers.k(); ++i) {
            const double d = squared_distance(data.row(p), centers.row(i));
            if (d < best) best = d;
        }
        total += std::sqrt(best);
    }
    return total;
}

// Coordinate-wise mean of the selected rows.
inline std::vector<double> cluster_mean(const Dataset& data, std::span<const std::size_t> subset) {
    if (subset.empty()) throw empty_cluster_error("cluster_mean: empty subset");
    std::vector<double> mean(data.dim(), 0.0);
    for (std::size_t idx : subset) {
        if (idx >= data.size()) throw shape_error("cluster_mean: index out of range");
        const auto row = data.row(idx);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += row[j];
    }
    for (double& v : mean) v /= static_cast<double>(subset.size());
    return mean;
}

// 1-means cost of a 1-D slice given its exact sum and sum of squares:
// sumsq - sum^2/n. The formula is nonnegative in exact arithmetic, so any
// negative result is round-off and gets clamped to zero.
inline double one_means_cost(std::span<const double> values, double sum, double sumsq) {
    if (values.empty()) throw empty_cluster_error("one_means_cost: empty slice");
    const double cost = sumsq - sum * sum / static_cast<double>(values.size());
    return cost < 0.0 ? 0.0 : cost;
}

inline double one_means_cost(std::span<const double> values) {
    double sum = 0.0;
    double sumsq = 0.0;
    for (double v : values) {
        sum += v;
        sumsq += v * v;
    }
    return one_means_cost(values, sum, sumsq);
}

namespace detail {

// Cost and mean of an ascending window holding at most two distinct values,
// in closed form: x copies of a plus y copies of b cost x*y*(b-a)^2/(x+y).
// Duplicate-heavy data ties such windows exactly (swapping the two counts
// leaves the cost unchanged), and the closed form keeps the tie exact in
// floating point, so the smallest-start rule resolves it the same way in
// every implementation of the window scan. Returns false for windows with
// three or more distinct values.
inline bool two_value_window_cost(std::span<const double> sorted_window, double* cost,
                                  double* mean) {
    const double a = sorted_window.front();
    const double b = sorted_window.back();
    if (a == b) {
        *cost = 0.0;
        *mean = a;
        return true;
    }
    const auto split = std::upper_bound(sorted_window.begin(), sorted_window.end(), a);
    if (*split != b) return false;
    const auto w = static_cast<double>(sorted_window.size());
    const auto x = static_cast<double>(split - sorted_window.begin());
    const double y = w - x;
    const double delta = b - a;
    *cost = x * y * delta * delta / w;
    *mean = (x * a + y * b) / w;
    return true;
}

}  // namespace detail

}  // namespace lakc
