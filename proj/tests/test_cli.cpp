#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lakc/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = LAKC_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "lakc_test_cli";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string mask_wall_ms(std::string text) {
    return std::regex_replace(text, std::regex("\"wall_ms\": [^,\\n]*"), "\"wall_ms\": X");
}

struct Inputs {
    fs::path points;
    fs::path labels;
    fs::path corrupted;
};

Inputs make_inputs(const fs::path& dir) {
    Inputs in{dir / "points.csv", dir / "labels.csv", dir / "labels_corrupt.csv"};
    REQUIRE(run_cli("synth --k 3 --per-cluster 20 --dim 2 --separation 12 --spread 1 --seed 5"
                    " --out-points " + in.points.string() + " --out-labels " + in.labels.string()) ==
            0);
    REQUIRE(run_cli("corrupt --points " + in.points.string() + " --labels " + in.labels.string() +
                    " --alpha 0.2 --objective means --seed 9 --out " + in.corrupted.string()) == 0);
    return in;
}

}  // namespace

TEST_CASE("cli synth and corrupt produce consistent files") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);

    const lakc::Dataset points = lakc::parse_points(in.points.string());
    REQUIRE(points.size() == 60);
    REQUIRE(points.dim() == 2);

    const lakc::Labeling truth = lakc::parse_labels(in.labels.string(), 3);
    const lakc::Labeling corrupted = lakc::parse_labels(in.corrupted.string(), 3);
    std::size_t moved = 0;
    for (std::size_t p = 0; p < truth.size(); ++p) moved += corrupted[p] != truth[p] ? 1 : 0;
    REQUIRE(moved == 12);  // floor(0.2 * 20) per cluster
}

TEST_CASE("cli run emits a reproducible report") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);
    const fs::path out1 = dir / "report1.json";
    const fs::path out2 = dir / "report2.json";

    const std::string base = "run --algo la-kmeans --points " + in.points.string() + " --labels " +
                             in.corrupted.string() + " --truth " + in.labels.string() +
                             " --alpha 0.2 --k 3 --seed 7 --out ";
    REQUIRE(run_cli(base + out1.string()) == 0);
    REQUIRE(run_cli(base + out2.string()) == 0);

    // identical up to the measured wall time
    REQUIRE(mask_wall_ms(slurp(out1)) == mask_wall_ms(slurp(out2)));

    const auto parsed = nlohmann::json::parse(slurp(out1));
    REQUIRE(parsed.at("algo") == "la-kmeans");
    REQUIRE(parsed.at("k") == 3);
    REQUIRE(parsed.at("centers").size() == 3);
    REQUIRE_FALSE(parsed.at("cost_vs_truth").is_null());
    REQUIRE(parsed.at("cost_min_assign").get<double>() <=
            parsed.at("cost_vs_truth").get<double>() * (1.0 + 1e-9));
    REQUIRE(parsed.at("config").at("points") == in.points.string());
}

TEST_CASE("cli run covers every algorithm") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);
    for (const std::string algo :
         {"la-kmeans", "la-kmedians", "lloyd", "kmedoids", "predictor-naive", "sampling"}) {
        const fs::path out = dir / ("report_" + algo + ".json");
        REQUIRE(run_cli("run --algo " + algo + " --points " + in.points.string() + " --labels " +
                        in.corrupted.string() + " --alpha 0.2 --k 3 --rounds 1 --seed 1" +
                        " --objective medians --out " + out.string()) == 0);
        const auto parsed = nlohmann::json::parse(slurp(out));
        REQUIRE(parsed.at("algo") == algo);
        REQUIRE(parsed.at("cost_vs_truth").is_null());
    }
}

TEST_CASE("cli sweep reports the winning alpha") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);
    const fs::path out = dir / "sweep.json";
    REQUIRE(run_cli("sweep --algo la-kmeans --grid 5 --points " + in.points.string() +
                    " --labels " + in.corrupted.string() + " --truth " + in.labels.string() +
                    " --k 3 --seed 2 --out " + out.string()) == 0);
    const auto parsed = nlohmann::json::parse(slurp(out));
    REQUIRE(parsed.at("grid_size") == 5);
    REQUIRE(parsed.at("table").size() == 5);
    const double best_alpha = parsed.at("best_alpha").get<double>();
    double best_cost = parsed.at("best").at("cost_min_assign").get<double>();
    bool found = false;
    for (const auto& row : parsed.at("table")) {
        REQUIRE(best_cost <= row.at("cost_min_assign").get<double>());
        found = found || row.at("alpha").get<double>() == best_alpha;
    }
    REQUIRE(found);
}

TEST_CASE("cli trials aggregates costs") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);
    const fs::path out = dir / "trials.json";
    REQUIRE(run_cli("trials --algo la-kmeans --runs 4 --points " + in.points.string() +
                    " --labels " + in.corrupted.string() + " --alpha 0.2 --k 3 --seed 0 --out " +
                    out.string()) == 0);
    const auto parsed = nlohmann::json::parse(slurp(out));
    REQUIRE(parsed.at("runs") == 4);
    REQUIRE(parsed.at("costs").size() == 4);
    REQUIRE(parsed.at("std_cost").get<double>() == 0.0);  // deterministic algorithm
}

TEST_CASE("cli exit codes distinguish validation from io failures") {
    const fs::path dir = work_dir();
    const Inputs in = make_inputs(dir);
    const fs::path out = dir / "err.json";

    // missing input file -> io error
    REQUIRE(run_cli("run --algo la-kmeans --points " + (dir / "nope.csv").string() + " --labels " +
                    in.labels.string() + " --alpha 0.2 --out " + out.string()) == 3);

    // alpha outside [0, 1/2) -> validation error
    REQUIRE(run_cli("run --algo la-kmeans --points " + in.points.string() + " --labels " +
                    in.labels.string() + " --alpha 0.7 --out " + out.string()) == 2);

    // label id out of range for the declared k -> validation error
    std::ofstream bad(dir / "bad_labels.csv");
    bad << "0\n9\n";
    bad.close();
    REQUIRE(run_cli("run --algo la-kmeans --points " + in.points.string() + " --labels " +
                    (dir / "bad_labels.csv").string() + " --alpha 0.1 --k 3 --out " +
                    out.string()) == 2);

    // single-cluster corruption is impossible
    std::ofstream lone(dir / "lone_labels.csv");
    for (int p = 0; p < 60; ++p) lone << "0\n";
    lone.close();
    REQUIRE(run_cli("corrupt --points " + in.points.string() + " --labels " +
                    (dir / "lone_labels.csv").string() + " --alpha 0.2 --seed 1 --out " +
                    out.string()) == 2);

    // unknown flags -> validation error
    REQUIRE(run_cli("run --bogus") == 2);
}
