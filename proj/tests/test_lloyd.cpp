#include <doctest.h>

#include "engine.hpp"
#include "init.hpp"
#include "lloyd.hpp"
#include "support.hpp"

using tikm::Assignment;
using tikm::CentroidSet;
using tikm::Dataset;
using tikm::EngineConfig;
using tikm::WorkCounters;

namespace {

CentroidSet centers_of(std::size_t d, std::vector<double> values) {
    CentroidSet cs;
    cs.d = d;
    cs.k = values.size() / d;
    cs.centers = std::move(values);
    cs.group_of.assign(cs.k, 0);
    return cs;
}

const Dataset kFourPoints(4, 2, {0, 0, 0, 1, 10, 10, 10, 11});

} // namespace

TEST_CASE("assign_full labels the pinned 4-point instance") {
    const CentroidSet cs = centers_of(2, {0, 0.5, 10, 10.5});
    WorkCounters counters;
    const Assignment labels = tikm::assign_full(kFourPoints, cs, counters);
    CHECK(labels == Assignment{0, 0, 1, 1});
    CHECK(counters.distance_computations == 8); // n * k
}

TEST_CASE("assign_full with k=1 labels everything 0 and counts n") {
    const CentroidSet cs = centers_of(2, {5, 5});
    WorkCounters counters;
    const Assignment labels = tikm::assign_full(kFourPoints, cs, counters);
    CHECK(labels == Assignment{0, 0, 0, 0});
    CHECK(counters.distance_computations == 4);
}

TEST_CASE("assign_full breaks ties toward the lowest centroid index") {
    const Dataset point(1, 2, {5, 5});
    const CentroidSet cs = centers_of(2, {0, 0, 10, 10});
    WorkCounters counters;
    CHECK(tikm::assign_full(point, cs, counters) == Assignment{0});
}

TEST_CASE("assign_full matches the brute-force oracle on random instances") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Dataset data = oracle::random_dataset(60, 3, seed);
        const Dataset centers = oracle::random_dataset(8, 3, seed + 1000);
        CentroidSet cs = centers_of(3, centers.data);
        WorkCounters counters;
        CHECK(tikm::assign_full(data, cs, counters) == oracle::nearest(data, cs));
    }
}

TEST_CASE("assign_full rejects dimension mismatch") {
    const CentroidSet cs = centers_of(3, {0, 0, 0});
    WorkCounters counters;
    CHECK_THROWS_AS(tikm::assign_full(kFourPoints, cs, counters), tikm::DimensionError);
}

TEST_CASE("update_centroids recomputes means and drift") {
    const CentroidSet cs = centers_of(2, {0, 0, 10, 10});
    const Assignment labels{0, 0, 1, 1};
    const auto [next, drift] = tikm::update_centroids(kFourPoints, labels, cs);
    CHECK(next.centers == std::vector<double>{0, 0.5, 10, 10.5});
    CHECK(drift[0] == doctest::Approx(0.5));
    CHECK(drift[1] == doctest::Approx(0.5));

    // Fixed point: means of their own clusters, zero drift.
    const auto [again, drift2] = tikm::update_centroids(kFourPoints, labels, next);
    CHECK(again.centers == next.centers);
    CHECK(drift2 == std::vector<double>{0, 0});
}

TEST_CASE("update_centroids keeps empty-cluster centers") {
    const CentroidSet cs = centers_of(2, {0, 0.5, 42, 43});
    const Assignment labels{0, 0, 0, 0};
    const auto [next, drift] = tikm::update_centroids(kFourPoints, labels, cs);
    CHECK(next.centers[2] == 42.0);
    CHECK(next.centers[3] == 43.0);
    CHECK(drift[1] == 0.0);
}

TEST_CASE("update_centroids: singleton clusters land on their point") {
    const Dataset two(2, 2, {1, 2, 7, 9});
    const CentroidSet cs = centers_of(2, {0, 0, 10, 10});
    const auto [next, drift] = tikm::update_centroids(two, {0, 1}, cs);
    CHECK(next.centers == std::vector<double>{1, 2, 7, 9});
}

TEST_CASE("run_lloyd converges on the 4-point instance") {
    EngineConfig config;
    config.k = 2;
    config.filter_mode = tikm::FilterMode::none;
    config.init_mode = tikm::InitMode::random;
    config.record_objective = true;

    // Scan seeds for one whose random init picks the two far corners, which
    // pins the hand-traced trajectory.
    const tikm::ClusterResult result = tikm::run_lloyd(kFourPoints, config);
    CHECK(result.iterations <= 3);
    CHECK(result.iterations >= 1);
    // Whatever the init, this instance always reaches the balanced optimum or
    // a singleton split; with distinct initial rows the balanced one is forced
    // for inits {0|1, 2|3}. Check the invariant that holds for all inits:
    // final centers are cluster means of the final labels.
    const auto [stable, drift] =
        tikm::update_centroids(kFourPoints, result.assignment, result.centroids);
    for (std::size_t c = 0; c < drift.size(); ++c) CHECK(drift[c] <= 1e-12);
}

TEST_CASE("run_lloyd from corner init reaches the pinned optimum in <= 3 iterations") {
    // Hand trace: labels [0,0,1,1] after iteration 1, centers move to
    // (0,0.5),(10,10.5), iteration 2 repeats the labels -> stable.
    EngineConfig config;
    config.k = 2;
    config.filter_mode = tikm::FilterMode::none;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        config.seed = seed;
        config.init_mode = tikm::InitMode::kmeanspp;
        const tikm::ClusterResult result = tikm::run_lloyd(kFourPoints, config);
        CHECK(result.iterations <= 3);
        if (result.assignment == Assignment{0, 0, 1, 1}) {
            CHECK(result.centroids.centers == std::vector<double>{0, 0.5, 10, 10.5});
        } else {
            CHECK(result.assignment == Assignment{1, 1, 0, 0});
            CHECK(result.centroids.centers == std::vector<double>{10, 10.5, 0, 0.5});
        }
    }
}

TEST_CASE("run_lloyd with n = k stabilizes after one assignment iteration") {
    const Dataset data = oracle::random_dataset(6, 2, 9);
    EngineConfig config;
    config.k = 6;
    config.filter_mode = tikm::FilterMode::none;
    config.init_mode = tikm::InitMode::kmeanspp;
    const tikm::ClusterResult result = tikm::run_lloyd(data, config);
    CHECK(result.iterations == 1);
    CHECK(result.termination == tikm::Termination::tol);
}

TEST_CASE("run_lloyd with max_iters = 0 returns the initial centroids") {
    EngineConfig config;
    config.k = 2;
    config.max_iters = 0;
    config.filter_mode = tikm::FilterMode::none;
    config.init_mode = tikm::InitMode::random;
    config.seed = 4;
    const tikm::ClusterResult result = tikm::run_lloyd(kFourPoints, config);
    CHECK(result.iterations == 0);
    CHECK(result.termination == tikm::Termination::max_iters);
    CHECK(result.centroids.centers ==
          tikm::init_random(kFourPoints, 2, 4).centers);
    CHECK(result.counters_per_iteration.empty());
}

TEST_CASE("run_lloyd rejects invalid configs") {
    EngineConfig config;
    config.k = 9; // > n
    CHECK_THROWS_AS(tikm::run_lloyd(kFourPoints, config), tikm::ConfigError);
    config.k = 2;
    config.lanes = 0;
    CHECK_THROWS_AS(tikm::run_parallel(kFourPoints, config), tikm::ConfigError);
}

TEST_CASE("run_lloyd: monotone objective and exact T*n*k accounting") {
    for (unsigned seed = 0; seed < 5; ++seed) {
        const Dataset data = oracle::random_dataset(80, 4, seed);
        EngineConfig config;
        config.k = 7;
        config.seed = seed;
        config.filter_mode = tikm::FilterMode::none;
        config.record_objective = true;
        const tikm::ClusterResult result = tikm::run_lloyd(data, config);

        REQUIRE(result.iterations >= 1);
        CHECK(result.counters_per_iteration.size() == result.iterations);
        CHECK(result.total_distance_computations() == result.iterations * data.n * config.k);
        for (const auto& c : result.counters_per_iteration) {
            CHECK(c.distance_computations == data.n * config.k);
            CHECK(c.point_filter_hits == 0);
            CHECK(c.group_filter_skips == 0);
        }
        for (std::size_t t = 1; t < result.objective_per_iteration.size(); ++t) {
            CHECK(result.objective_per_iteration[t] <=
                  result.objective_per_iteration[t - 1] + 1e-9);
        }
    }
}
