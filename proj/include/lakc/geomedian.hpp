#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/types.hpp"

namespace lakc {

struct MedianConfig {
    // Target relative optimality slack. Iteration stops once the per-step
    // cost improvement falls below tol/100 of the cost scale; the margin
    // covers the tail of improvements still to come after a literal
    // improvement-below-tol stop.
    double tol = 1e-9;
    int max_iter = 1000;
    // Iterates closer than singularity_eps * scale to a data point take the
    // modified (Vardi-Zhang) step; scale is the 1-median cost at the initial
    // mean divided by n.
    double singularity_eps = 1e-12;
};

namespace detail {

inline double cost_at(const Dataset& data, std::span<const std::size_t> subset,
                      const std::vector<double>& y) {
    double total = 0.0;
    for (std::size_t idx : subset) total += distance(data.row(idx), y);
    return total;
}

}  // namespace detail

/// Geometric median (1-median under the Euclidean metric) of the selected rows
/// by Weiszfeld iteration, starting from the coordinate-wise mean.
///
/// Iterates that land on a data point use the Vardi-Zhang correction: with w0
/// coincident points and R the sum of unit vectors toward the others, y is
/// optimal once |R| <= w0, and otherwise the plain update is pulled back
/// toward y by w0/|R|. The per-iteration cost is non-increasing.
///
/// `cost_trace`, when given, receives the cost at the initial mean and after
/// every accepted iterate.
inline std::vector<double> geometric_median(const Dataset& data,
                                            std::span<const std::size_t> subset,
                                            const MedianConfig& config = {},
                                            std::vector<double>* cost_trace = nullptr) {
    if (subset.empty()) throw empty_cluster_error("geometric_median: empty input");
    if (config.tol <= 0.0) throw domain_error("geometric_median: tol must be > 0");
    if (config.max_iter < 1) throw domain_error("geometric_median: max_iter must be >= 1");

    const std::size_t d = data.dim();
    const std::size_t n = subset.size();
    std::vector<double> y = cluster_mean(data, subset);

    double cost = detail::cost_at(data, subset, y);
    if (cost_trace) cost_trace->push_back(cost);
    const double scale = cost / static_cast<double>(n);
    if (scale == 0.0) return y;  // all points coincide with the mean
    const double eps = config.singularity_eps * scale;

    std::vector<double> weighted_sum(d);
    std::vector<double> next(d);
    for (int iter = 0; iter < config.max_iter; ++iter) {
        std::fill(weighted_sum.begin(), weighted_sum.end(), 0.0);
        double weight_total = 0.0;
        std::size_t coincident = 0;
        for (std::size_t idx : subset) {
            const auto row = data.row(idx);
            const double dist = distance(row, y);
            if (dist <= eps) {
                ++coincident;
                continue;
            }
            const double w = 1.0 / dist;
            weight_total += w;
            for (std::size_t j = 0; j < d; ++j) weighted_sum[j] += row[j] * w;
        }
        if (weight_total == 0.0) break;  // every point sits on y

        if (coincident > 0) {
            // R = sum over non-coincident points of (p - y)/|p - y|.
            double r_sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double rj = weighted_sum[j] - weight_total * y[j];
                r_sq += rj * rj;
            }
            const double r = std::sqrt(r_sq);
            if (r <= static_cast<double>(coincident)) break;  // y is the median
            const double pull = static_cast<double>(coincident) / r;
            for (std::size_t j = 0; j < d; ++j) {
                next[j] = (1.0 - pull) * (weighted_sum[j] / weight_total) + pull * y[j];
            }
        } else {
            for (std::size_t j = 0; j < d; ++j) next[j] = weighted_sum[j] / weight_total;
        }

        const double next_cost = detail::cost_at(data, subset, next);
        y = next;
        if (cost_trace) cost_trace->push_back(next_cost);
        const double improvement = cost - next_cost;
        cost = next_cost;
        if (improvement < 0.01 * config.tol * std::max(cost, scale)) break;
    }

    // End game: convergence toward an optimum sitting on a data point can
    // stall with that point still measurably better than the iterate. Snap to
    // the nearest data point when the iterate has already crept onto it and
    // the point wins outright; the distance gate keeps flat configurations
    // (where a far point ties the iterate to within round-off) untouched.
    std::size_t nearest = subset.front();
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t idx : subset) {
        const double dist = distance(data.row(idx), y);
        if (dist < nearest_dist) {
            nearest_dist = dist;
            nearest = idx;
        }
    }
    if (nearest_dist <= 1e-3 * scale) {
        const std::vector<double> snap(data.row(nearest).begin(), data.row(nearest).end());
        if (detail::cost_at(data, subset, snap) < cost) return snap;
    }
    return y;
}

// Convenience overload over the whole dataset.
inline std::vector<double> geometric_median(const Dataset& data, const MedianConfig& config = {},
                                            std::vector<double>* cost_trace = nullptr) {
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return geometric_median(data, all, config, cost_trace);
}

}  // namespace lakc
