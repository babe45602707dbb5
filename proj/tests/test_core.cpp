#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "lakc/cost.hpp"
#include "lakc/types.hpp"

#include "helpers.hpp"

using namespace lakc;
using lakc::test::dataset_1d;
using lakc::test::rel_close;

TEST_CASE("cost_kmeans matches hand-evaluated cases") {
    const auto pair = dataset_1d({0.0, 2.0});
    REQUIRE(cost_kmeans(pair, CenterSet({1.0}, 1, 1)) == 2.0);

    // a center set containing every data point costs zero
    const Dataset data = Dataset::from_rows({{1.0, 2.0}, {-3.0, 0.5}, {4.0, 4.0}});
    REQUIRE(cost_kmeans(data, CenterSet(std::vector<double>(data.values()), 3, 2)) == 0.0);

    const Dataset two = Dataset::from_rows({{0.0, 0.0}, {3.0, 4.0}});
    REQUIRE(cost_kmeans(two, CenterSet({0.0, 0.0, 0.0, 0.0}, 2, 2)) == 25.0);
}

TEST_CASE("cost_kmedians matches hand-evaluated cases") {
    const auto pair = dataset_1d({0.0, 2.0});
    REQUIRE(cost_kmedians(pair, CenterSet({1.0}, 1, 1)) == 2.0);

    const Dataset data = Dataset::from_rows({{1.0, 2.0}, {-3.0, 0.5}});
    REQUIRE(cost_kmedians(data, CenterSet(std::vector<double>(data.values()), 2, 2)) == 0.0);

    const Dataset two = Dataset::from_rows({{0.0, 0.0}, {3.0, 4.0}});
    REQUIRE(cost_kmedians(two, CenterSet({0.0, 0.0}, 1, 2)) == 5.0);
}

TEST_CASE("cost kernels reject dimension mismatches") {
    const Dataset data = Dataset::from_rows({{0.0, 0.0}});
    const CenterSet centers({1.0}, 1, 1);
    REQUIRE_THROWS_AS(cost_kmeans(data, centers), shape_error);
    REQUIRE_THROWS_AS(cost_kmedians(data, centers), shape_error);
}

TEST_CASE("cluster_mean") {
    const Dataset square = Dataset::from_rows({{0.0, 0.0}, {2.0, 2.0}});
    const std::vector<std::size_t> both{0, 1};
    REQUIRE(cluster_mean(square, both) == std::vector<double>{1.0, 1.0});

    const Dataset single = Dataset::from_rows({{7.0, -1.0}});
    const std::vector<std::size_t> one{0};
    REQUIRE(cluster_mean(single, one) == std::vector<double>{7.0, -1.0});

    const auto line = dataset_1d({1.0, 2.0, 6.0});
    const std::vector<std::size_t> all{0, 1, 2};
    REQUIRE(cluster_mean(line, all) == std::vector<double>{3.0});

    REQUIRE_THROWS_AS(cluster_mean(line, std::vector<std::size_t>{}), empty_cluster_error);
}

TEST_CASE("one_means_cost") {
    const std::vector<double> v{0.0, 1.0, 2.0};
    REQUIRE(one_means_cost(v) == 2.0);  // 5 - 9/3

    const std::vector<double> single{42.0};
    REQUIRE(one_means_cost(single) == 0.0);

    const std::vector<double> pair{3.0, 5.0};
    REQUIRE(one_means_cost(pair) == 2.0);  // 34 - 64/2

    // tiny negative round-off is clamped
    REQUIRE(one_means_cost(pair, 8.0, 32.0 - 1e-14) == 0.0);
}

TEST_CASE("cost identity: cost(X,c) = cost(X,mean) + n*|c-mean|^2") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next_below(200);
        const std::size_t d = 1 + rng.next_below(8);
        const Dataset data = lakc::test::random_dataset(rng, n, d);

        std::vector<double> c(d);
        for (auto& x : c) x = 10.0 * (2.0 * rng.next_double() - 1.0);

        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        const auto mean = cluster_mean(data, all);

        const double lhs = cost_kmeans(data, CenterSet(std::vector<double>(c), 1, d));
        const double at_mean = cost_kmeans(data, CenterSet(std::vector<double>(mean), 1, d));
        const double rhs = at_mean + static_cast<double>(n) * squared_distance(c, mean);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, lhs));
        REQUIRE(at_mean <= lhs);  // the mean minimizes the 1-means cost
    }
}

TEST_CASE("one_means_cost agrees with cost against the slice's own mean") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next_below(50);
        const auto values = lakc::test::random_values(rng, n, -50.0, 50.0);
        const Dataset data = dataset_1d(values);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        const double direct = cost_kmeans(data, CenterSet(cluster_mean(data, all), 1, 1));
        REQUIRE(rel_close(one_means_cost(values), direct, 1e-9));
    }
}

TEST_CASE("costs are permutation-invariant and nonnegative") {
    SplitMix64 rng(5);
    const Dataset data = lakc::test::random_dataset(rng, 60, 3);
    const CenterSet centers(lakc::test::random_dataset(rng, 4, 3).values(), 4, 3);

    std::vector<std::size_t> perm(data.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.next_below(i)]);
    }
    std::vector<double> shuffled(data.size() * data.dim());
    for (std::size_t p = 0; p < data.size(); ++p) {
        const auto row = data.row(perm[p]);
        std::copy(row.begin(), row.end(), shuffled.begin() + static_cast<std::ptrdiff_t>(p * 3));
    }
    const Dataset permuted(std::move(shuffled), data.size(), data.dim());

    const double a = cost_kmeans(data, centers);
    const double b = cost_kmeans(permuted, centers);
    REQUIRE(a >= 0.0);
    REQUIRE(rel_close(a, b, 1e-12));

    const double am = cost_kmedians(data, centers);
    const double bm = cost_kmedians(permuted, centers);
    REQUIRE(am >= 0.0);
    REQUIRE(rel_close(am, bm, 1e-12));
}

TEST_CASE("domain types validate their invariants") {
    REQUIRE_THROWS_AS(Dataset({1.0, 2.0, 3.0}, 2, 2), shape_error);
    REQUIRE_THROWS_AS(Dataset({std::numeric_limits<double>::quiet_NaN()}, 1, 1), domain_error);
    REQUIRE_THROWS_AS(Labeling({0, 2}, 2), domain_error);
    REQUIRE_THROWS_AS(Labeling({-1}, 1), domain_error);
    REQUIRE_THROWS_AS(ErrorRate(0.5), domain_error);
    REQUIRE_THROWS_AS(ErrorRate(-0.01), domain_error);
    REQUIRE(ErrorRate(0.0).value() == 0.0);
    REQUIRE(ErrorRate(0.499).value() == 0.499);

    const Labeling labels({0, 0, 2}, 3);
    REQUIRE_THROWS_AS(labels.require_nonempty_clusters(), empty_cluster_error);
    REQUIRE(labels.cluster_sizes() == std::vector<std::size_t>{2, 0, 1});
}
