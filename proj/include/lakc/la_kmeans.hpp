#pragma once

#include <cstddef>
#include <thread>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/types.hpp"
#include "lakc/window.hpp"

namespace lakc {

namespace detail {

// Static block partition of [0, n) over `threads` workers. Every task writes
// only its own output slot, so the result is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t t = 0; t < n; ++t) fn(t);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t t = lo; t < hi; ++t) fn(t);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace detail

/// Learning-augmented k-means: for every predicted cluster and every
/// dimension, keep the cheapest contiguous window of ceil((1-alpha)*m_i)
/// sorted projections and use the window means as the center coordinates.
///
/// Deterministic; the k*d window searches are independent, so `threads` only
/// changes wall time, never the output. O(d * m log m) total.
inline CenterSet la_kmeans(const Dataset& data, const Labeling& labels, ErrorRate alpha,
                           unsigned threads = 1) {
    require_labels_match(data, labels);
    labels.require_nonempty_clusters();

    const std::size_t k = static_cast<std::size_t>(labels.k());
    const std::size_t d = data.dim();
    const auto groups = labels.groups();

    std::vector<std::size_t> widths(k);
    for (std::size_t i = 0; i < k; ++i) widths[i] = window_width(groups[i].size(), alpha);

    std::vector<double> centers(k * d, 0.0);
    detail::parallel_for(k * d, threads, [&](std::size_t task) {
        const std::size_t i = task / d;
        const std::size_t j = task % d;
        const auto& members = groups[i];
        std::vector<double> projection(members.size());
        for (std::size_t t = 0; t < members.size(); ++t) projection[t] = data.at(members[t], j);
        centers[i * d + j] = best_window(projection, widths[i]).mean;
    });

    return CenterSet(std::move(centers), k, d);
}

// Approximation factor of la_kmeans at error rate alpha:
// 1 + alpha/(1-alpha) + 4*alpha/((1-2*alpha)*(1-alpha)).
inline double factor_kmeans(ErrorRate alpha) {
    const double a = alpha.value();
    return 1.0 + a / (1.0 - a) + 4.0 * a / ((1.0 - 2.0 * a) * (1.0 - a));
}

}  // namespace lakc
