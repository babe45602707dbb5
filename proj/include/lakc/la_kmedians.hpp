#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/geomedian.hpp"
#include "lakc/rng.hpp"
#include "lakc/types.hpp"

namespace lakc {

struct KMediansConfig {
    ErrorRate alpha{0.0};
    // Per-cluster failure probability budget; the number of rounds grows as
    // log(2k/delta).
    double delta = 0.1;
    // When set, overrides the theoretical round count (the experiment harness
    // runs with a single round).
    std::optional<int> rounds_override;
    std::uint64_t seed = 0;
    MedianConfig median;
};

// Round count R = ceil((2/(1-2*alpha)) * ln(2k/delta)), at least 1.
inline int rounds(ErrorRate alpha, int k, double delta) {
    if (k < 1) throw domain_error("rounds: k must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("rounds: delta must lie in (0, 1)");
    const double a = alpha.value();
    const double r = 2.0 / (1.0 - 2.0 * a) * std::log(2.0 * static_cast<double>(k) / delta);
    const double up = std::ceil(r);
    return std::max(1, static_cast<int>(up));
}

// Number of points removed before the median: ceil(alpha * m_i), capped at
// m_i - 1 so the median always has input.
inline std::size_t clip_count(std::size_t cluster_size, ErrorRate alpha) {
    if (cluster_size < 1) throw domain_error("clip_count: cluster size must be >= 1");
    const auto raw = static_cast<std::size_t>(
        std::ceil(alpha.value() * static_cast<double>(cluster_size)));
    return std::min(raw, cluster_size - 1);
}

/// Learning-augmented k-medians: per predicted cluster, run R independent
/// rounds of {sample an anchor uniformly, drop the clip_count points farthest
/// from it, take the geometric median of the rest}, and keep the candidate
/// whose cost on its own clipped set is smallest (ties to the earliest round).
///
/// Every (cluster, round) pair draws from its own RNG substream of the seed,
/// so the output is a pure function of (data, labels, config) no matter how
/// the rounds are scheduled.
inline CenterSet la_kmedians(const Dataset& data, const Labeling& labels,
                             const KMediansConfig& config) {
    require_labels_match(data, labels);
    labels.require_nonempty_clusters();
    if (config.rounds_override && *config.rounds_override < 1) {
        throw domain_error("la_kmedians: rounds_override must be >= 1");
    }

    const std::size_t k = static_cast<std::size_t>(labels.k());
    const std::size_t d = data.dim();
    const auto groups = labels.groups();
    const int num_rounds = config.rounds_override
                               ? *config.rounds_override
                               : rounds(config.alpha, labels.k(), config.delta);

    std::vector<double> centers(k * d, 0.0);
    struct Ranked {
        double dist;
        std::size_t index;
    };

    for (std::size_t i = 0; i < k; ++i) {
        const auto& members = groups[i];
        const std::size_t m_i = members.size();
        const std::size_t clip = clip_count(m_i, config.alpha);

        std::vector<Ranked> ranked(m_i);
        std::vector<std::size_t> survivors;
        std::vector<double> best_center;
        double best_cost = std::numeric_limits<double>::infinity();

        for (int round = 0; round < num_rounds; ++round) {
            SplitMix64 rng(substream(substream(config.seed, stream_tag::kmedians_round),
                                     i, static_cast<std::uint64_t>(round)));
            const std::size_t anchor = members[rng.next_below(m_i)];

            for (std::size_t t = 0; t < m_i; ++t) {
                ranked[t] = {distance(data.row(members[t]), data.row(anchor)), members[t]};
            }
            // Farthest points go; among equal distances the larger original
            // index is removed first, so sort ascending on (dist, index) and
            // keep the front.
            std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
                if (a.dist != b.dist) return a.dist < b.dist;
                return a.index < b.index;
            });

            survivors.clear();
            for (std::size_t t = 0; t + clip < m_i; ++t) survivors.push_back(ranked[t].index);
            // back to ascending point order: the survivor set is what matters,
            // and a canonical order keeps the arithmetic independent of the
            // anchor's distance ranking
            std::sort(survivors.begin(), survivors.end());

            std::vector<double> candidate = geometric_median(data, survivors, config.median);
            const double candidate_cost = detail::cost_at(data, survivors, candidate);
            if (candidate_cost < best_cost) {
                best_cost = candidate_cost;
                best_center = std::move(candidate);
            }
        }

        for (std::size_t j = 0; j < d; ++j) centers[i * d + j] = best_center[j];
    }

    return CenterSet(std::move(centers), k, d);
}

// Approximation factor of la_kmedians at error rate alpha:
// 1 + alpha * (7 + 10*alpha - 10*alpha^2) / ((1-alpha)*(1-2*alpha)).
inline double factor_kmedians(ErrorRate alpha) {
    const double a = alpha.value();
    const double c = (7.0 + 10.0 * a - 10.0 * a * a) / ((1.0 - a) * (1.0 - 2.0 * a));
    return 1.0 + a * c;
}

}  // namespace lakc
