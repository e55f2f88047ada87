#include <doctest.h>

#include <algorithm>
#include <set>

#include "init.hpp"
#include "support.hpp"

using tikm::CentroidSet;
using tikm::Dataset;
using tikm::init_kmeanspp;
using tikm::init_random;

namespace {

// Index of the dataset row a centroid equals, or n when it matches none.
std::size_t matching_row(const Dataset& data, const CentroidSet& cs, std::size_t c) {
    for (std::size_t i = 0; i < data.n; ++i) {
        bool equal = true;
        for (std::size_t j = 0; j < data.d; ++j) {
            if (data.data[i * data.d + j] != cs.centers[c * cs.d + j]) {
                equal = false;
                break;
            }
        }
        if (equal) return i;
    }
    return data.n;
}

} // namespace

TEST_CASE("init_random: determinism, distinctness, rows only") {
    const Dataset data = oracle::random_dataset(40, 3, 123);
    for (std::size_t k : {std::size_t{1}, std::size_t{7}, std::size_t{40}}) {
        const CentroidSet a = init_random(data, k, 99);
        const CentroidSet b = init_random(data, k, 99);
        CHECK(a.centers == b.centers);
        CHECK(a.k == k);

        std::set<std::size_t> rows;
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t r = matching_row(data, a, c);
            REQUIRE(r < data.n);
            rows.insert(r);
        }
        CHECK(rows.size() == k); // sampled without replacement
    }
}

TEST_CASE("init_random: k=n returns the whole dataset") {
    const Dataset data = oracle::random_dataset(12, 2, 5);
    const CentroidSet cs = init_random(data, 12, 17);
    std::set<std::size_t> rows;
    for (std::size_t c = 0; c < cs.k; ++c) rows.insert(matching_row(data, cs, c));
    CHECK(rows.size() == 12);
}

TEST_CASE("init_random: seeds differ, selections differ") {
    const Dataset data = oracle::random_dataset(200, 2, 5);
    const CentroidSet a = init_random(data, 5, 1);
    const CentroidSet b = init_random(data, 5, 2);
    CHECK(a.centers != b.centers);
}

TEST_CASE("initializers reject k > n and k = 0") {
    const Dataset data = oracle::random_dataset(4, 2, 3);
    CHECK_THROWS_AS(init_random(data, 5, 0), tikm::ConfigError);
    CHECK_THROWS_AS(init_random(data, 0, 0), tikm::ConfigError);
    CHECK_THROWS_AS(init_kmeanspp(data, 5, 0), tikm::ConfigError);
    CHECK_THROWS_AS(init_kmeanspp(data, 0, 0), tikm::ConfigError);
}

TEST_CASE("init_kmeanspp: determinism and rows only") {
    const Dataset data = oracle::random_dataset(50, 4, 321);
    const CentroidSet a = init_kmeanspp(data, 10, 7);
    const CentroidSet b = init_kmeanspp(data, 10, 7);
    CHECK(a.centers == b.centers);
    std::set<std::size_t> rows;
    for (std::size_t c = 0; c < a.k; ++c) {
        const std::size_t r = matching_row(data, a, c);
        REQUIRE(r < data.n);
        rows.insert(r);
    }
    CHECK(rows.size() == 10);
}

TEST_CASE("init_kmeanspp: two separated singletons are both chosen for k=2") {
    // Second pick is distance-weighted, and only the far point carries weight,
    // so its selection probability is 1 for every seed.
    const Dataset data(2, 2, {0.0, 0.0, 100.0, 100.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CentroidSet cs = init_kmeanspp(data, 2, seed);
        std::set<std::size_t> rows;
        for (std::size_t c = 0; c < 2; ++c) rows.insert(matching_row(data, cs, c));
        CHECK(rows == std::set<std::size_t>{0, 1});
    }
}

TEST_CASE("init_kmeanspp: all-duplicate dataset falls back to uniform sampling") {
    const Dataset data(5, 2, {3, 3, 3, 3, 3, 3, 3, 3, 3, 3});
    const CentroidSet cs = init_kmeanspp(data, 3, 42);
    CHECK(cs.k == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(cs.centers[c * 2] == 3.0);
        CHECK(cs.centers[c * 2 + 1] == 3.0);
    }
}

TEST_CASE("init_kmeanspp: k=n selects every point exactly once") {
    const Dataset data = oracle::random_dataset(9, 2, 77);
    const CentroidSet cs = init_kmeanspp(data, 9, 3);
    std::set<std::size_t> rows;
    for (std::size_t c = 0; c < cs.k; ++c) rows.insert(matching_row(data, cs, c));
    CHECK(rows.size() == 9);
}
