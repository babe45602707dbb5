#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/geomedian.hpp"
#include "lakc/rng.hpp"
#include "lakc/types.hpp"

namespace lakc {

enum class Objective { means, medians };

inline const char* to_string(Objective o) {
    return o == Objective::means ? "means" : "medians";
}

// kmeans++ seeding: first center uniform, every further center drawn with
// probability proportional to its squared distance to the nearest chosen
// center. Deterministic per seed.
inline CenterSet kmeanspp_init(const Dataset& data, int k, std::uint64_t seed) {
    const std::size_t m = data.size();
    if (k < 1 || static_cast<std::size_t>(k) > m) {
        throw domain_error("kmeanspp_init: k must lie in [1, m]");
    }
    SplitMix64 rng(substream(seed, stream_tag::kmeanspp));

    std::vector<std::size_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    chosen.push_back(static_cast<std::size_t>(rng.next_below(m)));

    std::vector<double> dist_sq(m, 0.0);
    for (std::size_t p = 0; p < m; ++p) {
        dist_sq[p] = squared_distance(data.row(p), data.row(chosen[0]));
    }

    while (chosen.size() < static_cast<std::size_t>(k)) {
        const double total = std::accumulate(dist_sq.begin(), dist_sq.end(), 0.0);
        std::size_t pick = m;  // sentinel
        if (total > 0.0) {
            const double target = rng.next_double() * total;
            double acc = 0.0;
            for (std::size_t p = 0; p < m; ++p) {
                acc += dist_sq[p];
                if (target < acc) {
                    pick = p;
                    break;
                }
            }
            if (pick == m) {  // target landed on accumulated round-off
                for (std::size_t p = m; p-- > 0;) {
                    if (dist_sq[p] > 0.0) {
                        pick = p;
                        break;
                    }
                }
            }
        }
        if (pick == m) {
            // All remaining distances are zero (duplicate-only residue):
            // fall back to the lowest unchosen index.
            for (std::size_t p = 0; p < m; ++p) {
                if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) {
                    pick = p;
                    break;
                }
            }
        }
        chosen.push_back(pick);
        for (std::size_t p = 0; p < m; ++p) {
            dist_sq[p] = std::min(dist_sq[p], squared_distance(data.row(p), data.row(pick)));
        }
    }

    std::vector<double> centers;
    centers.reserve(static_cast<std::size_t>(k) * data.dim());
    for (std::size_t c : chosen) {
        const auto row = data.row(c);
        centers.insert(centers.end(), row.begin(), row.end());
    }
    return CenterSet(std::move(centers), static_cast<std::size_t>(k), data.dim());
}

struct LloydResult {
    CenterSet centers;
    Labeling labels;
    int iterations = 0;
    std::vector<double> cost_trace;  // assignment cost after each update
};

/// Lloyd iterations from the given initialization: assign to the nearest
/// center (ties to the lowest index), recompute means, reseed any emptied
/// cluster with the point farthest from its current center. Stops when the
/// assignment is stable, the relative cost improvement falls under tol, or
/// max_iter is hit.
inline LloydResult lloyd(const Dataset& data, const CenterSet& init, int max_iter = 300,
                         double tol = 1e-9) {
    require_same_dim(data, init);
    const std::size_t m = data.size();
    const std::size_t d = data.dim();
    const std::size_t k = init.k();

    std::vector<double> centers(init.values());
    auto center_row = [&](std::size_t i) { return std::span<const double>(centers.data() + i * d, d); };

    auto assign = [&](std::vector<int>& out) {
        double cost = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const double dist = squared_distance(data.row(p), center_row(i));
                if (dist < best) {
                    best = dist;
                    best_i = i;
                }
            }
            out[p] = static_cast<int>(best_i);
            cost += best;
        }
        return cost;
    };

    std::vector<int> labels(m, 0);
    std::vector<int> next_labels(m, 0);
    double cost = assign(labels);
    std::vector<double> trace;
    int iter = 0;

    while (iter < max_iter) {
        // means per cluster
        std::vector<double> sums(k * d, 0.0);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t p = 0; p < m; ++p) {
            const auto id = static_cast<std::size_t>(labels[p]);
            ++counts[id];
            const auto row = data.row(p);
            for (std::size_t j = 0; j < d; ++j) sums[id * d + j] += row[j];
        }
        std::vector<bool> taken(m, false);
        for (std::size_t i = 0; i < k; ++i) {
            if (counts[i] > 0) {
                for (std::size_t j = 0; j < d; ++j) {
                    centers[i * d + j] = sums[i * d + j] / static_cast<double>(counts[i]);
                }
            } else {
                // farthest-point reseed; distinct points for multiple empties
                std::size_t far = 0;
                double far_dist = -1.0;
                for (std::size_t p = 0; p < m; ++p) {
                    if (taken[p]) continue;
                    const double dist = squared_distance(
                        data.row(p), center_row(static_cast<std::size_t>(labels[p])));
                    if (dist > far_dist) {
                        far_dist = dist;
                        far = p;
                    }
                }
                taken[far] = true;
                const auto row = data.row(far);
                for (std::size_t j = 0; j < d; ++j) centers[i * d + j] = row[j];
            }
        }

        const double next_cost = assign(next_labels);
        ++iter;
        trace.push_back(next_cost);
        const bool stable = std::equal(labels.begin(), labels.end(), next_labels.begin());
        const double improvement = cost - next_cost;
        labels.swap(next_labels);
        cost = next_cost;
        if (stable || improvement < tol * std::max(cost, 1e-300)) break;
    }

    return LloydResult{CenterSet(std::move(centers), k, d),
                       Labeling(std::move(labels), static_cast<int>(k)), iter, std::move(trace)};
}

struct KMedoidsResult {
    CenterSet centers;
    Labeling labels;
    std::vector<std::size_t> medoids;
    int iterations = 0;
    std::vector<double> cost_trace;  // summed distance after each medoid update
};

/// Alternating k-medoids heuristic: seed with k distinct random points, then
/// alternate nearest-medoid assignment (Euclidean distance, ties to the
/// lowest medoid index) with per-cluster medoid updates (the member with the
/// smallest summed distance to its cluster, ties to the lowest point index).
inline KMedoidsResult kmedoids_alternating(const Dataset& data, int k, std::uint64_t seed,
                                           int max_iter = 100) {
    const std::size_t m = data.size();
    if (k < 1 || static_cast<std::size_t>(k) > m) {
        throw domain_error("kmedoids_alternating: k must lie in [1, m]");
    }
    SplitMix64 rng(substream(seed, stream_tag::kmedoids));
    std::vector<std::size_t> medoids =
        sample_without_replacement(m, static_cast<std::size_t>(k), rng);

    std::vector<int> labels(m, 0);
    std::vector<double> trace;
    int iter = 0;

    auto assign_all = [&]() {
        double cost = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < medoids.size(); ++i) {
                const double dist = distance(data.row(p), data.row(medoids[i]));
                if (dist < best) {
                    best = dist;
                    best_i = i;
                }
            }
            labels[p] = static_cast<int>(best_i);
            cost += best;
        }
        return cost;
    };

    assign_all();
    while (iter < max_iter) {
        // medoid update per cluster
        std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
        for (std::size_t p = 0; p < m; ++p) {
            members[static_cast<std::size_t>(labels[p])].push_back(p);
        }
        std::vector<std::size_t> next_medoids = medoids;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i].empty()) continue;  // keep the previous medoid
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_p = members[i].front();
            for (std::size_t cand : members[i]) {
                double total = 0.0;
                for (std::size_t q : members[i]) total += distance(data.row(q), data.row(cand));
                if (total < best) {
                    best = total;
                    best_p = cand;
                }
            }
            next_medoids[i] = best_p;
        }
        const bool stable = next_medoids == medoids;
        medoids = std::move(next_medoids);
        trace.push_back(assign_all());
        ++iter;
        if (stable) break;
    }

    std::vector<double> centers;
    centers.reserve(static_cast<std::size_t>(k) * data.dim());
    for (std::size_t idx : medoids) {
        const auto row = data.row(idx);
        centers.insert(centers.end(), row.begin(), row.end());
    }
    return KMedoidsResult{CenterSet(std::move(centers), static_cast<std::size_t>(k), data.dim()),
                          Labeling(std::move(labels), k), std::move(medoids), iter,
                          std::move(trace)};
}

// Naive predictor baseline: per-cluster mean (means objective) or geometric
// median (medians objective) of the labeled groups, with no outlier handling.
inline CenterSet predictor_naive(const Dataset& data, const Labeling& labels, Objective objective,
                                 const MedianConfig& median_config = {}) {
    require_labels_match(data, labels);
    labels.require_nonempty_clusters();
    const std::size_t d = data.dim();
    const auto groups = labels.groups();
    std::vector<double> centers(groups.size() * d, 0.0);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const std::vector<double> c = objective == Objective::means
                                          ? cluster_mean(data, groups[i])
                                          : geometric_median(data, groups[i], median_config);
        std::copy(c.begin(), c.end(), centers.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    return CenterSet(std::move(centers), groups.size(), d);
}

struct SamplingResult {
    CenterSet centers;
    double best_q = 0.0;
    double best_cost = 0.0;
};

// 15 linear fractions from 1% to 50%, the default grid for the sampling
// baseline.
inline std::vector<double> default_q_grid() {
    std::vector<double> grid(15);
    for (std::size_t t = 0; t < grid.size(); ++t) {
        grid[t] = std::lerp(0.01, 0.50, static_cast<double>(t) / 14.0);
    }
    return grid;
}

/// Random-sampling baseline: for each fraction q, draw max(1, floor(q*m_i))
/// points per cluster without replacement, build centers from the samples,
/// and keep the q whose center set scores the best full-data cost under the
/// requested objective (ties to the earlier q).
inline SamplingResult sampling_baseline(const Dataset& data, const Labeling& labels,
                                        Objective objective, const std::vector<double>& q_grid,
                                        std::uint64_t seed,
                                        const MedianConfig& median_config = {}) {
    require_labels_match(data, labels);
    labels.require_nonempty_clusters();
    if (q_grid.empty()) throw domain_error("sampling_baseline: empty q grid");
    for (double q : q_grid) {
        if (!(q > 0.0 && q <= 1.0)) {
            throw domain_error("sampling_baseline: q must lie in (0, 1], got " + std::to_string(q));
        }
    }

    const std::size_t d = data.dim();
    const auto groups = labels.groups();
    const std::uint64_t base = substream(seed, stream_tag::sampling);

    std::vector<double> best_centers;
    double best_cost = std::numeric_limits<double>::infinity();
    double best_q = q_grid.front();

    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
        const double q = q_grid[qi];
        std::vector<double> centers(groups.size() * d, 0.0);
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const std::size_t m_i = groups[i].size();
            const std::size_t count = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(q * static_cast<double>(m_i))));
            SplitMix64 rng(substream(base, qi, i));
            auto picks = sample_without_replacement(m_i, count, rng);
            std::sort(picks.begin(), picks.end());  // canonical order for the arithmetic
            std::vector<std::size_t> sample(picks.size());
            for (std::size_t t = 0; t < picks.size(); ++t) sample[t] = groups[i][picks[t]];
            const std::vector<double> c = objective == Objective::means
                                              ? cluster_mean(data, sample)
                                              : geometric_median(data, sample, median_config);
            std::copy(c.begin(), c.end(), centers.begin() + static_cast<std::ptrdiff_t>(i * d));
        }
        const CenterSet cs(std::move(centers), groups.size(), d);
        const double cost =
            objective == Objective::means ? cost_kmeans(data, cs) : cost_kmedians(data, cs);
        if (cost < best_cost) {
            best_cost = cost;
            best_q = q;
            best_centers = cs.values();
        }
    }

    return SamplingResult{CenterSet(std::move(best_centers), groups.size(), d), best_q, best_cost};
}

}  // namespace lakc
