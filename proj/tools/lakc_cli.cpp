// Command-line front end for the learning-augmented k-clustering library:
// synthetic data generation, label corruption, single runs, alpha sweeps, and
// repeated trials, all on CSV inputs with JSON reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lakc/lakc.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct RunFlags {
    std::string algo;
    std::string points_path;
    std::string labels_path;
    std::string truth_path;
    std::string out_path;
    double alpha = 0.0;
    int k = 0;
    double delta = 0.1;
    int rounds = 1;  // experiment protocol default; 0 selects the theoretical count
    std::uint64_t seed = 0;
    std::string objective = "means";
    unsigned threads = 1;
    bool header = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags, bool alpha_required) {
    cmd->add_option("--algo", flags.algo, "algorithm id")
        ->required()
        ->check(CLI::IsMember({"la-kmeans", "la-kmedians", "lloyd", "kmedoids", "predictor-naive",
                               "sampling"}));
    cmd->add_option("--points", flags.points_path, "points CSV, one point per row")->required();
    cmd->add_option("--labels", flags.labels_path, "labels CSV, one 0-based id per row")
        ->required();
    cmd->add_option("--truth", flags.truth_path,
                    "reference partition CSV; enables cost_vs_truth in the report");
    auto* alpha_opt = cmd->add_option("--alpha", flags.alpha, "label error rate in [0, 0.5)");
    if (alpha_required) alpha_opt->required();
    cmd->add_option("--k", flags.k, "cluster count; defaults to the labeling's");
    cmd->add_option("--delta", flags.delta, "failure probability for la-kmedians");
    cmd->add_option("--rounds", flags.rounds,
                    "la-kmedians rounds (default 1 per the experiment protocol; "
                    "0 uses the theoretical count)");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--objective", flags.objective,
                    "cost objective for predictor-naive/sampling")
        ->check(CLI::IsMember({"means", "medians"}));
    cmd->add_option("--threads", flags.threads, "worker threads for la-kmeans");
    cmd->add_flag("--header", flags.header, "skip the first line of every CSV input");
    cmd->add_option("--out", flags.out_path, "output JSON path")->required();
}

lakc::RunConfig to_run_config(const RunFlags& flags) {
    lakc::RunConfig cfg;
    cfg.algo = *lakc::algo_from_string(flags.algo);
    cfg.alpha = flags.alpha;
    cfg.k = flags.k;
    cfg.delta = flags.delta;
    cfg.rounds_override = flags.rounds > 0 ? std::optional<int>(flags.rounds) : std::nullopt;
    cfg.seed = flags.seed;
    cfg.objective = flags.objective == "medians" ? lakc::Objective::medians : lakc::Objective::means;
    cfg.threads = flags.threads;
    return cfg;
}

struct LoadedInputs {
    lakc::Dataset data;
    lakc::Labeling labels;
    std::optional<lakc::Labeling> truth;
};

LoadedInputs load_inputs(const RunFlags& flags) {
    lakc::Dataset data = lakc::parse_points(flags.points_path, flags.header);
    lakc::Labeling labels = flags.k > 0 ? lakc::parse_labels(flags.labels_path, flags.k, flags.header)
                                        : lakc::parse_labels(flags.labels_path, flags.header);
    lakc::require_labels_match(data, labels);
    std::optional<lakc::Labeling> truth;
    if (!flags.truth_path.empty()) {
        truth = lakc::parse_labels(flags.truth_path, labels.k(), flags.header);
        lakc::require_labels_match(data, *truth);
    }
    return {std::move(data), std::move(labels), std::move(truth)};
}

void append_file_echo(std::vector<std::pair<std::string, std::string>>& config,
                      const RunFlags& flags) {
    config.emplace_back("points", flags.points_path);
    config.emplace_back("labels", flags.labels_path);
    config.emplace_back("truth", flags.truth_path.empty() ? "-" : flags.truth_path);
    config.emplace_back("header", flags.header ? "true" : "false");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lakc::io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw lakc::io_error("write failure on " + path);
}

std::string optional_json(const std::optional<double>& v) {
    return v ? lakc::format_g17(*v) : "null";
}

int cmd_synth(const lakc::SynthConfig& synth_cfg, const std::string& out_points,
              const std::string& out_labels) {
    const lakc::PlantedInstance instance = lakc::synth(synth_cfg);
    lakc::write_points_csv(out_points, instance.data);
    lakc::write_labels_csv(out_labels, instance.truth);
    std::cout << "wrote " << instance.data.size() << " points (d=" << instance.data.dim()
              << ", k=" << instance.truth.k() << ") to " << out_points << " / " << out_labels
              << "\n";
    return 0;
}

int cmd_corrupt(const std::string& points_path, const std::string& labels_path, double alpha,
                const std::string& objective, std::uint64_t seed, const std::string& out_path,
                bool header) {
    const lakc::Dataset data = lakc::parse_points(points_path, header);
    const lakc::Labeling truth = lakc::parse_labels(labels_path, header);
    lakc::require_labels_match(data, truth);
    truth.require_nonempty_clusters();
    const lakc::Objective obj =
        objective == "medians" ? lakc::Objective::medians : lakc::Objective::means;
    const lakc::CenterSet refs = lakc::predictor_naive(data, truth, obj);
    const lakc::Labeling corrupted =
        lakc::corrupt(data, truth, refs, lakc::ErrorRate(alpha), seed);
    lakc::write_labels_csv(out_path, corrupted);

    std::size_t moved = 0;
    for (std::size_t p = 0; p < truth.size(); ++p) {
        if (corrupted[p] != truth[p]) ++moved;
    }
    std::cout << "relabeled " << moved << " of " << truth.size() << " points -> " << out_path
              << "\n";
    return 0;
}

int cmd_run(const RunFlags& flags) {
    const LoadedInputs in = load_inputs(flags);
    lakc::ExperimentReport report = lakc::run_algorithm(
        in.data, in.labels, to_run_config(flags), in.truth ? &*in.truth : nullptr);
    append_file_echo(report.config, flags);
    lakc::emit_report(report, flags.out_path);
    std::cout << report.algo << ": cost_min_assign=" << lakc::format_g17(report.cost_min_assign)
              << " -> " << flags.out_path << "\n";
    return 0;
}

int cmd_sweep(const RunFlags& flags, std::size_t grid_size) {
    const LoadedInputs in = load_inputs(flags);
    lakc::SweepResult sweep = lakc::alpha_sweep(in.data, in.labels, to_run_config(flags),
                                                grid_size, in.truth ? &*in.truth : nullptr);
    append_file_echo(sweep.best.config, flags);

    std::ostringstream out;
    out << "{\n";
    out << "  \"algo\": \"" << lakc::json_escape(sweep.best.algo) << "\",\n";
    out << "  \"k\": " << sweep.best.k << ",\n";
    out << "  \"seed\": " << flags.seed << ",\n";
    out << "  \"grid_size\": " << sweep.grid.size() << ",\n";
    out << "  \"best_alpha\": " << lakc::format_g17(sweep.best.alpha) << ",\n";
    out << "  \"table\": [\n";
    for (std::size_t t = 0; t < sweep.table.size(); ++t) {
        const auto& row = sweep.table[t];
        out << "    {\"alpha\": " << lakc::format_g17(row.alpha)
            << ", \"cost_min_assign\": " << lakc::format_g17(row.cost_min_assign)
            << ", \"cost_vs_truth\": " << optional_json(row.cost_vs_truth)
            << ", \"factor_bound\": " << optional_json(row.factor_bound)
            << ", \"wall_ms\": " << lakc::format_g17(row.wall_ms) << "}"
            << (t + 1 < sweep.table.size() ? ",\n" : "\n");
    }
    out << "  ],\n";
    out << "  \"best\": ";
    std::string best = lakc::report_to_json(sweep.best);
    // indent the nested object under its key
    std::string indented;
    for (char c : best) {
        indented += c;
        if (c == '\n') indented += "  ";
    }
    while (!indented.empty() && (indented.back() == ' ' || indented.back() == '\n')) {
        indented.pop_back();
    }
    out << indented << "\n}\n";
    write_text(flags.out_path, out.str());
    std::cout << "sweep best alpha=" << lakc::format_g17(sweep.best.alpha)
              << " cost=" << lakc::format_g17(sweep.best.cost_min_assign) << " -> "
              << flags.out_path << "\n";
    return 0;
}

int cmd_trials(const RunFlags& flags, std::size_t runs) {
    const LoadedInputs in = load_inputs(flags);
    lakc::TrialStats stats = lakc::run_trials(in.data, in.labels, to_run_config(flags), runs,
                                              in.truth ? &*in.truth : nullptr);

    std::ostringstream out;
    out << "{\n";
    out << "  \"algo\": \"" << lakc::json_escape(stats.reports.front().algo) << "\",\n";
    out << "  \"alpha\": " << lakc::format_g17(flags.alpha) << ",\n";
    out << "  \"k\": " << stats.reports.front().k << ",\n";
    out << "  \"seed\": " << flags.seed << ",\n";
    out << "  \"runs\": " << runs << ",\n";
    out << "  \"mean_cost\": " << lakc::format_g17(stats.mean_cost) << ",\n";
    out << "  \"std_cost\": " << lakc::format_g17(stats.std_cost) << ",\n";
    out << "  \"mean_wall_ms\": " << lakc::format_g17(stats.mean_wall_ms) << ",\n";
    out << "  \"costs\": [";
    for (std::size_t t = 0; t < stats.reports.size(); ++t) {
        if (t) out << ", ";
        out << lakc::format_g17(stats.reports[t].cost_min_assign);
    }
    out << "],\n";
    auto config = stats.reports.front().config;
    append_file_echo(config, flags);
    out << "  \"config\": {";
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (i) out << ",";
        out << "\n    \"" << lakc::json_escape(config[i].first) << "\": \""
            << lakc::json_escape(config[i].second) << "\"";
    }
    out << "\n  }\n}\n";
    write_text(flags.out_path, out.str());
    std::cout << "trials mean=" << lakc::format_g17(stats.mean_cost)
              << " std=" << lakc::format_g17(stats.std_cost) << " -> " << flags.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"learning-augmented k-means / k-medians clustering toolkit"};
    app.require_subcommand(1);

    // synth
    lakc::SynthConfig synth_cfg;
    std::string out_points;
    std::string out_labels;
    auto* synth = app.add_subcommand("synth", "generate a planted Gaussian instance");
    synth->add_option("--k", synth_cfg.k, "cluster count")->required();
    synth->add_option("--per-cluster", synth_cfg.per_cluster, "points per cluster")->required();
    synth->add_option("--dim", synth_cfg.dim, "dimension")->required();
    synth->add_option("--separation", synth_cfg.separation, "distance between adjacent centers")
        ->required();
    synth->add_option("--spread", synth_cfg.spread, "per-coordinate standard deviation")
        ->required();
    synth->add_option("--seed", synth_cfg.seed, "RNG seed");
    synth->add_option("--out-points", out_points, "points CSV output")->required();
    synth->add_option("--out-labels", out_labels, "truth labels CSV output")->required();

    // corrupt
    std::string c_points, c_labels, c_out, c_objective = "means";
    double c_alpha = 0.0;
    std::uint64_t c_seed = 0;
    bool c_header = false;
    auto* corrupt_cmd = app.add_subcommand("corrupt", "corrupt labels at a given error rate");
    corrupt_cmd->add_option("--points", c_points, "points CSV")->required();
    corrupt_cmd->add_option("--labels", c_labels, "truth labels CSV")->required();
    corrupt_cmd->add_option("--alpha", c_alpha, "corruption rate in [0, 0.5)")->required();
    corrupt_cmd->add_option("--objective", c_objective, "reference centers: means or medians")
        ->check(CLI::IsMember({"means", "medians"}));
    corrupt_cmd->add_option("--seed", c_seed, "RNG seed");
    corrupt_cmd->add_option("--out", c_out, "corrupted labels CSV output")->required();
    corrupt_cmd->add_flag("--header", c_header, "skip the first line of every CSV input");

    // run / sweep / trials
    RunFlags run_flags, sweep_flags, trials_flags;
    auto* run = app.add_subcommand("run", "run one algorithm and write a JSON report");
    add_run_flags(run, run_flags, /*alpha_required=*/true);

    std::size_t grid_size = 15;
    auto* sweep = app.add_subcommand("sweep", "guess alpha over a grid, keep the best run");
    add_run_flags(sweep, sweep_flags, /*alpha_required=*/false);
    sweep->add_option("--grid", grid_size, "grid size over [0.1, 0.5]");

    std::size_t runs = 20;
    auto* trials = app.add_subcommand("trials", "repeat a run over consecutive seeds");
    add_run_flags(trials, trials_flags, /*alpha_required=*/false);
    trials->add_option("--runs", runs, "number of repetitions");

    try {
        app.parse(argc, argv);
        if (synth->parsed()) return cmd_synth(synth_cfg, out_points, out_labels);
        if (corrupt_cmd->parsed()) {
            return cmd_corrupt(c_points, c_labels, c_alpha, c_objective, c_seed, c_out, c_header);
        }
        if (run->parsed()) return cmd_run(run_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, grid_size);
        if (trials->parsed()) return cmd_trials(trials_flags, runs);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    } catch (const lakc::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const lakc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
