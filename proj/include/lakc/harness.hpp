#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lakc/baselines.hpp"
#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/format.hpp"
#include "lakc/la_kmeans.hpp"
#include "lakc/la_kmedians.hpp"
#include "lakc/rng.hpp"
#include "lakc/types.hpp"

namespace lakc {

// ---------------------------------------------------------------------------
// Planted data and label corruption
// ---------------------------------------------------------------------------

struct SynthConfig {
    int k = 2;
    std::size_t per_cluster = 50;
    std::size_t dim = 2;
    double separation = 10.0;
    double spread = 1.0;
    std::uint64_t seed = 0;
};

// Synthetic instance with a known generating partition. The reference centers
// are the empirical per-cluster means and geometric medians of the sample,
// which is what the guarantee checks compare against.
struct PlantedInstance {
    Dataset data;
    Labeling truth;
    CenterSet ref_means;
    CenterSet ref_medians;
};

// k Gaussian blobs of per_cluster points each, centers `separation` apart on
// a line through dimension 0, standard deviation `spread` per coordinate.
inline PlantedInstance synth(const SynthConfig& config) {
    if (config.k < 1) throw domain_error("synth: k must be >= 1");
    if (config.per_cluster < 1) throw domain_error("synth: per_cluster must be >= 1");
    if (config.dim < 1) throw domain_error("synth: dim must be >= 1");
    if (!(config.separation >= 0.0) || !(config.spread >= 0.0)) {
        throw domain_error("synth: separation and spread must be >= 0");
    }

    const auto k = static_cast<std::size_t>(config.k);
    const std::size_t m = k * config.per_cluster;
    const std::size_t d = config.dim;

    SplitMix64 rng(substream(config.seed, stream_tag::synth));
    std::vector<double> points(m * d, 0.0);
    std::vector<int> truth_ids(m, 0);
    std::size_t row = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t t = 0; t < config.per_cluster; ++t, ++row) {
            truth_ids[row] = static_cast<int>(i);
            for (std::size_t j = 0; j < d; ++j) {
                const double center = j == 0 ? static_cast<double>(i) * config.separation : 0.0;
                points[row * d + j] = center + config.spread * rng.next_normal();
            }
        }
    }

    Dataset data(std::move(points), m, d);
    Labeling truth(std::move(truth_ids), config.k);

    const auto groups = truth.groups();
    std::vector<double> means(k * d, 0.0);
    std::vector<double> medians(k * d, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const auto mu = cluster_mean(data, groups[i]);
        const auto med = geometric_median(data, groups[i]);
        std::copy(mu.begin(), mu.end(), means.begin() + static_cast<std::ptrdiff_t>(i * d));
        std::copy(med.begin(), med.end(), medians.begin() + static_cast<std::ptrdiff_t>(i * d));
    }

    return PlantedInstance{std::move(data), std::move(truth),
                           CenterSet(std::move(means), k, d), CenterSet(std::move(medians), k, d)};
}

/// Label corruption at rate alpha: in every true cluster, the floor(alpha*m_i)
/// points closest to the cluster's reference center (distance ties to the
/// lower index) are relabeled, each to a uniformly random one of the k-1
/// other clusters.
inline Labeling corrupt(const Dataset& data, const Labeling& truth, const CenterSet& ref_centers,
                        ErrorRate alpha, std::uint64_t seed) {
    require_labels_match(data, truth);
    require_same_dim(data, ref_centers);
    const int k = truth.k();
    if (k < 2) throw domain_error("corrupt: need k >= 2, there is no other center to move labels to");
    if (ref_centers.k() != static_cast<std::size_t>(k)) {
        throw shape_error("corrupt: reference centers do not match the cluster count");
    }

    std::vector<int> labels(truth.ids());
    const auto groups = truth.groups();

    SplitMix64 rng(substream(seed, stream_tag::corrupt));
    struct Ranked {
        double dist;
        std::size_t index;
    };
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const std::size_t m_i = groups[i].size();
        const auto count = static_cast<std::size_t>(
            std::floor(alpha.value() * static_cast<double>(m_i)));
        if (count == 0) continue;

        std::vector<Ranked> ranked(m_i);
        for (std::size_t t = 0; t < m_i; ++t) {
            ranked[t] = {distance(data.row(groups[i][t]), ref_centers.row(i)), groups[i][t]};
        }
        std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            return a.index < b.index;
        });

        for (std::size_t t = 0; t < count; ++t) {
            const auto r = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k - 1)));
            labels[ranked[t].index] = r >= static_cast<int>(i) ? r + 1 : r;
        }
    }
    return Labeling(std::move(labels), k);
}

// The reference center of each true cluster is its mean (means objective) or
// geometric median (medians objective).
inline Labeling corrupt(const PlantedInstance& instance, ErrorRate alpha, Objective objective,
                        std::uint64_t seed) {
    return corrupt(instance.data, instance.truth,
                   objective == Objective::means ? instance.ref_means : instance.ref_medians,
                   alpha, seed);
}

// ---------------------------------------------------------------------------
// Overlap promise
// ---------------------------------------------------------------------------

struct PromiseRow {
    std::size_t cluster = 0;
    std::size_t overlap = 0;        // |P_i intersect P_i*|
    std::size_t predicted_size = 0;  // |P_i|
    std::size_t true_size = 0;       // |P_i*|
    double required = 0.0;           // (1-alpha) * max(|P_i|, |P_i*|)
    double ratio = 0.0;              // overlap / max(|P_i|, |P_i*|)
    bool ok = false;
};

struct PromiseReport {
    bool ok = false;
    std::vector<PromiseRow> rows;
};

// Checks |P_i intersect P_i*| >= (1-alpha) * max(|P_i|, |P_i*|) for every i.
inline PromiseReport check_promise(const Labeling& labels, const Labeling& truth,
                                   ErrorRate alpha) {
    if (labels.size() != truth.size()) throw shape_error("check_promise: size mismatch");
    if (labels.k() != truth.k()) throw shape_error("check_promise: cluster count mismatch");

    const auto k = static_cast<std::size_t>(labels.k());
    std::vector<std::size_t> overlap(k, 0);
    for (std::size_t p = 0; p < labels.size(); ++p) {
        if (labels[p] == truth[p]) ++overlap[static_cast<std::size_t>(labels[p])];
    }
    const auto pred_sizes = labels.cluster_sizes();
    const auto true_sizes = truth.cluster_sizes();

    PromiseReport report;
    report.ok = true;
    report.rows.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        PromiseRow& row = report.rows[i];
        row.cluster = i;
        row.overlap = overlap[i];
        row.predicted_size = pred_sizes[i];
        row.true_size = true_sizes[i];
        const std::size_t larger = std::max(pred_sizes[i], true_sizes[i]);
        row.required = (1.0 - alpha.value()) * static_cast<double>(larger);
        row.ratio = larger == 0 ? 1.0 : static_cast<double>(overlap[i]) / static_cast<double>(larger);
        row.ok = static_cast<double>(overlap[i]) >= row.required;
        report.ok = report.ok && row.ok;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Experiment runs
// ---------------------------------------------------------------------------

enum class Algo { la_kmeans, la_kmedians, lloyd, kmedoids, predictor_naive, sampling };

inline const char* to_string(Algo a) {
    switch (a) {
        case Algo::la_kmeans: return "la-kmeans";
        case Algo::la_kmedians: return "la-kmedians";
        case Algo::lloyd: return "lloyd";
        case Algo::kmedoids: return "kmedoids";
        case Algo::predictor_naive: return "predictor-naive";
        case Algo::sampling: return "sampling";
    }
    return "?";
}

inline std::optional<Algo> algo_from_string(const std::string& name) {
    for (Algo a : {Algo::la_kmeans, Algo::la_kmedians, Algo::lloyd, Algo::kmedoids,
                   Algo::predictor_naive, Algo::sampling}) {
        if (name == to_string(a)) return a;
    }
    return std::nullopt;
}

// Cost objective an algorithm is evaluated under; predictor-naive and
// sampling follow the caller's choice, the rest are fixed.
inline Objective algo_objective(Algo a, Objective requested) {
    switch (a) {
        case Algo::la_kmeans:
        case Algo::lloyd: return Objective::means;
        case Algo::la_kmedians:
        case Algo::kmedoids: return Objective::medians;
        case Algo::predictor_naive:
        case Algo::sampling: return requested;
    }
    return requested;
}

struct RunConfig {
    Algo algo = Algo::la_kmeans;
    double alpha = 0.0;
    int k = 0;  // 0: take k from the labeling (lloyd/kmedoids honor an explicit value)
    double delta = 0.1;
    // The experiment protocol runs la-kmedians with a single round; clear this
    // to fall back to the theoretical rounds(alpha, k, delta).
    std::optional<int> rounds_override = 1;
    std::uint64_t seed = 0;
    Objective objective = Objective::means;
    std::vector<double> q_grid;  // empty: default 15-point grid
    MedianConfig median;
    int lloyd_max_iter = 300;
    double lloyd_tol = 1e-9;
    int kmedoids_max_iter = 100;
    unsigned threads = 1;
};

struct ExperimentReport {
    std::string algo;
    double alpha = 0.0;
    int k = 0;
    std::uint64_t seed = 0;
    std::optional<double> cost_vs_truth;  // sum_i cost(P_i*, c_i); needs a reference partition
    double cost_min_assign = 0.0;         // cost(P, C) with min-over-centers assignment
    std::optional<double> factor_bound;   // guarantee factor; absent for baselines
    CenterSet centers;
    double wall_ms = 0.0;
    std::vector<std::pair<std::string, std::string>> config;  // echo, stable order
};

// Cost of the reference partition against the paired centers: point p pays
// its distance to center truth[p] (no re-assignment).
inline double cost_vs_partition(const Dataset& data, const Labeling& truth,
                                const CenterSet& centers, Objective objective) {
    require_labels_match(data, truth);
    require_same_dim(data, centers);
    if (static_cast<std::size_t>(truth.k()) != centers.k()) {
        throw shape_error("cost_vs_partition: partition has " + std::to_string(truth.k()) +
                          " clusters, centers " + std::to_string(centers.k()));
    }
    double total = 0.0;
    for (std::size_t p = 0; p < data.size(); ++p) {
        const double sq =
            squared_distance(data.row(p), centers.row(static_cast<std::size_t>(truth[p])));
        total += objective == Objective::means ? sq : std::sqrt(sq);
    }
    return total;
}

inline ExperimentReport run_algorithm(const Dataset& data, const Labeling& labels,
                                      const RunConfig& cfg, const Labeling* truth = nullptr) {
    const Objective obj = algo_objective(cfg.algo, cfg.objective);
    const int k_flat = cfg.k > 0 ? cfg.k : labels.k();

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<CenterSet> centers;
    switch (cfg.algo) {
        case Algo::la_kmeans:
            centers = la_kmeans(data, labels, ErrorRate(cfg.alpha), cfg.threads);
            break;
        case Algo::la_kmedians: {
            const KMediansConfig kc{ErrorRate(cfg.alpha), cfg.delta, cfg.rounds_override, cfg.seed,
                                    cfg.median};
            centers = la_kmedians(data, labels, kc);
            break;
        }
        case Algo::lloyd:
            centers = lloyd(data, kmeanspp_init(data, k_flat, cfg.seed), cfg.lloyd_max_iter,
                            cfg.lloyd_tol)
                          .centers;
            break;
        case Algo::kmedoids:
            centers = kmedoids_alternating(data, k_flat, cfg.seed, cfg.kmedoids_max_iter).centers;
            break;
        case Algo::predictor_naive:
            centers = predictor_naive(data, labels, obj, cfg.median);
            break;
        case Algo::sampling: {
            const auto grid = cfg.q_grid.empty() ? default_q_grid() : cfg.q_grid;
            centers = sampling_baseline(data, labels, obj, grid, cfg.seed, cfg.median).centers;
            break;
        }
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    ExperimentReport report{to_string(cfg.algo),
                            cfg.alpha,
                            static_cast<int>(centers->k()),
                            cfg.seed,
                            std::nullopt,
                            obj == Objective::means ? cost_kmeans(data, *centers)
                                                    : cost_kmedians(data, *centers),
                            std::nullopt,
                            std::move(*centers),
                            wall_ms,
                            {}};
    if (truth) report.cost_vs_truth = cost_vs_partition(data, *truth, report.centers, obj);
    if (cfg.algo == Algo::la_kmeans) report.factor_bound = factor_kmeans(ErrorRate(cfg.alpha));
    if (cfg.algo == Algo::la_kmedians) report.factor_bound = factor_kmedians(ErrorRate(cfg.alpha));

    report.config = {
        {"algo", to_string(cfg.algo)},
        {"objective", to_string(obj)},
        {"alpha", format_g17(cfg.alpha)},
        {"k", std::to_string(report.k)},
        {"delta", format_g17(cfg.delta)},
        {"rounds", cfg.rounds_override ? std::to_string(*cfg.rounds_override) : "auto"},
        {"seed", std::to_string(cfg.seed)},
        {"threads", std::to_string(cfg.threads)},
    };
    return report;
}

// ---------------------------------------------------------------------------
// Alpha sweep and repeated trials
// ---------------------------------------------------------------------------

// grid_size values linearly spanning [0.10, 0.50]; entries >= 0.5 are pulled
// back to 0.499 since the algorithms require alpha < 1/2. grid_size 1
// degenerates to the lower endpoint.
inline std::vector<double> alpha_grid(std::size_t grid_size) {
    if (grid_size < 1) throw domain_error("alpha_grid: grid_size must be >= 1");
    std::vector<double> grid(grid_size);
    for (std::size_t t = 0; t < grid_size; ++t) {
        double v = grid_size == 1 ? 0.10
                                  : std::lerp(0.10, 0.50, static_cast<double>(t) /
                                                              static_cast<double>(grid_size - 1));
        if (v >= 0.5) v = 0.499;
        grid[t] = v;
    }
    return grid;
}

struct SweepResult {
    ExperimentReport best;
    std::vector<ExperimentReport> table;
    std::vector<double> grid;
};

// Runs the configured algorithm at every grid alpha and keeps the run whose
// min-assignment cost is smallest (ties to the earlier grid point). The
// labeling is held fixed across the whole sweep.
inline SweepResult alpha_sweep(const Dataset& data, const Labeling& labels, const RunConfig& base,
                               std::size_t grid_size = 15, const Labeling* truth = nullptr) {
    const auto grid = alpha_grid(grid_size);
    std::vector<ExperimentReport> table;
    table.reserve(grid.size());
    std::size_t best_index = 0;
    for (std::size_t t = 0; t < grid.size(); ++t) {
        RunConfig cfg = base;
        cfg.alpha = grid[t];
        table.push_back(run_algorithm(data, labels, cfg, truth));
        if (table[t].cost_min_assign < table[best_index].cost_min_assign) best_index = t;
    }
    return SweepResult{table[best_index], std::move(table), grid};
}

struct TrialStats {
    double mean_cost = 0.0;
    double std_cost = 0.0;  // sample standard deviation; 0 for a single trial
    double mean_wall_ms = 0.0;
    std::vector<ExperimentReport> reports;
};

// Repeats the run with seeds base.seed + 0 ... + trials-1 and aggregates the
// min-assignment cost. Identical costs short-circuit to a standard deviation
// of exactly zero, so deterministic algorithms report 0 rather than mean
// round-off noise.
inline TrialStats run_trials(const Dataset& data, const Labeling& labels, const RunConfig& base,
                             std::size_t trials = 20, const Labeling* truth = nullptr) {
    if (trials < 1) throw domain_error("run_trials: trials must be >= 1");
    TrialStats stats;
    stats.reports.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        RunConfig cfg = base;
        cfg.seed = base.seed + t;
        stats.reports.push_back(run_algorithm(data, labels, cfg, truth));
    }

    double cost_sum = 0.0;
    double wall_sum = 0.0;
    bool all_equal = true;
    for (const auto& r : stats.reports) {
        cost_sum += r.cost_min_assign;
        wall_sum += r.wall_ms;
        all_equal = all_equal && r.cost_min_assign == stats.reports.front().cost_min_assign;
    }
    stats.mean_cost = cost_sum / static_cast<double>(trials);
    stats.mean_wall_ms = wall_sum / static_cast<double>(trials);
    if (trials > 1 && !all_equal) {
        double ss = 0.0;
        for (const auto& r : stats.reports) {
            const double delta = r.cost_min_assign - stats.mean_cost;
            ss += delta * delta;
        }
        stats.std_cost = std::sqrt(ss / static_cast<double>(trials - 1));
    }
    return stats;
}

}  // namespace lakc
