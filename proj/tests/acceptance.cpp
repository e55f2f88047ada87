// Acceptance suite: every release criterion as one pass/fail line. Exits
// nonzero when any criterion fails. Heavier than the unit suites by design;
// total runtime stays in the low minutes on a laptop.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include "bench.hpp"
#include "bounds.hpp"
#include "engine.hpp"
#include "init.hpp"
#include "io.hpp"
#include "lloyd.hpp"
#include "support.hpp"

using tikm::Assignment;
using tikm::BlobSpec;
using tikm::BoundState;
using tikm::CentroidSet;
using tikm::Dataset;
using tikm::EngineConfig;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

struct PerIteration {
    std::vector<Assignment> labels;
    std::vector<CentroidSet> centroids;
};

PerIteration record_lloyd(const Dataset& data, const EngineConfig& config,
                          tikm::ClusterResult& out) {
    PerIteration rec;
    EngineConfig c = config;
    c.filter_mode = tikm::FilterMode::none;
    out = tikm::run_lloyd(data, c,
                          [&](std::size_t, const CentroidSet& cs, const Assignment& labels,
                              const BoundState*) {
                              rec.labels.push_back(labels);
                              rec.centroids.push_back(cs);
                          });
    return rec;
}

// ------------------------------------------------------------------
// 1. Oracle exactness: filtered assignments equal Lloyd's per iteration,
//    final centroids within 1e-9 per coordinate.

void criterion_exactness() {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [data, truth] = tikm::gen_blobs({2000, 16, 32, 1.0, 10.0, seed});
        EngineConfig config;
        config.k = 32;
        config.seed = seed;

        tikm::ClusterResult baseline;
        const PerIteration lloyd = record_lloyd(data, config, baseline);

        for (std::size_t G : {std::size_t{1}, std::size_t{4}, std::size_t{32}}) {
            EngineConfig fc = config;
            fc.filter_mode = tikm::FilterMode::point_group;
            fc.groups = G;
            std::vector<Assignment> filtered_labels;
            const tikm::ClusterResult filtered = tikm::run_filtered(
                data, fc,
                [&](std::size_t, const CentroidSet&, const Assignment& labels,
                    const BoundState*) { filtered_labels.push_back(labels); });

            require(filtered.iterations == baseline.iterations,
                    "iteration counts diverged at seed " + std::to_string(seed) +
                        ", G=" + std::to_string(G));
            require(filtered_labels == lloyd.labels,
                    "per-iteration assignments diverged at seed " + std::to_string(seed) +
                        ", G=" + std::to_string(G));
            for (std::size_t v = 0; v < filtered.centroids.centers.size(); ++v) {
                require(std::fabs(filtered.centroids.centers[v] -
                                  baseline.centroids.centers[v]) <= 1e-9,
                        "final centroids diverged at seed " + std::to_string(seed));
            }
        }
    }
}

// ------------------------------------------------------------------
// 2. Work reduction on separated blobs with G=4: strictly fewer distances in
//    total, and per-iteration work efficiency >= 0.5 from iteration 3 on.

void criterion_work_reduction() {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [data, truth] = tikm::gen_blobs({2000, 16, 32, 1.0, 10.0, seed});
        EngineConfig config;
        config.k = 32;
        config.seed = seed;
        config.filter_mode = tikm::FilterMode::point_group;
        config.groups = 4;

        const tikm::ClusterResult filtered = tikm::run_filtered(data, config);
        const std::uint64_t per_iter_baseline =
            static_cast<std::uint64_t>(data.n) * config.k;
        const std::uint64_t baseline_total = filtered.iterations * per_iter_baseline;
        require(filtered.total_distance_computations() < baseline_total,
                "no total work reduction at seed " + std::to_string(seed));

        for (std::size_t t = 2; t < filtered.counters_per_iteration.size(); ++t) {
            const double eff =
                1.0 - static_cast<double>(
                          filtered.counters_per_iteration[t].distance_computations) /
                          static_cast<double>(per_iter_baseline);
            require(eff >= 0.5, "iteration " + std::to_string(t + 1) + " efficiency " +
                                    std::to_string(eff) + " < 0.5 at seed " +
                                    std::to_string(seed));
        }
    }
}

// ------------------------------------------------------------------
// 3. Bound soundness, brute-forced after every iteration of randomized small
//    runs.

void criterion_bound_soundness() {
    std::size_t runs = 0;
    for (unsigned trial = 0; trial < 100; ++trial) {
        const std::size_t n = 20 + (trial * 7) % 181;     // <= 200
        const std::size_t d = 2 + trial % 7;              // <= 8
        const std::size_t k = 2 + trial % 15;             // <= 16
        const std::size_t G = 1 + trial % k;              // <= k
        const Dataset data = oracle::random_dataset(n, d, 9000 + trial);

        EngineConfig config;
        config.k = k;
        config.groups = G;
        config.seed = trial;
        config.filter_mode = tikm::FilterMode::point_group;

        tikm::run_filtered(data, config,
                           [&](std::size_t iter, const CentroidSet& cs,
                               const Assignment&, const BoundState* bounds) {
                               require(bounds != nullptr, "missing bounds");
                               const std::string err = oracle::check_bounds(data, cs, *bounds);
                               require(err.empty(), "trial " + std::to_string(trial) +
                                                        " iteration " + std::to_string(iter) +
                                                        ": " + err);
                           });
        ++runs;
    }
    require(runs == 100, "expected 100 runs");
}

// ------------------------------------------------------------------
// 4. Lane-count invariance: bit-identical outputs for P in {1,2,4,8}.

void criterion_lane_invariance() {
    const auto [data, truth] = tikm::gen_blobs({3000, 8, 16, 1.0, 10.0, 77});
    for (const auto mode : {tikm::FilterMode::none, tikm::FilterMode::point_group}) {
        EngineConfig config;
        config.k = 16;
        config.groups = 4;
        config.seed = 13;
        config.filter_mode = mode;

        config.lanes = 1;
        const tikm::ClusterResult reference = tikm::run_parallel(data, config);
        for (std::size_t lanes : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
            config.lanes = lanes;
            const tikm::ClusterResult result = tikm::run_parallel(data, config);
            require(result.assignment == reference.assignment,
                    "assignments differ at P=" + std::to_string(lanes));
            require(result.centroids.centers == reference.centroids.centers,
                    "centroids differ at P=" + std::to_string(lanes));
            require(result.total_distance_computations() ==
                        reference.total_distance_computations(),
                    "distance totals differ at P=" + std::to_string(lanes));
            require(result.total_point_filter_hits() == reference.total_point_filter_hits(),
                    "filter-hit totals differ at P=" + std::to_string(lanes));
            require(result.total_group_filter_skips() ==
                        reference.total_group_filter_skips(),
                    "group-skip totals differ at P=" + std::to_string(lanes));
        }
    }
}

// ------------------------------------------------------------------
// 5. Counter accounting: Lloyd reports exactly T*n*k; init_bounds exactly n*k.

void criterion_counter_accounting() {
    const auto [data, truth] = tikm::gen_blobs({500, 6, 8, 1.0, 10.0, 5});
    EngineConfig config;
    config.k = 8;
    config.seed = 3;
    config.filter_mode = tikm::FilterMode::none;
    const tikm::ClusterResult lloyd = tikm::run_lloyd(data, config);
    require(lloyd.total_distance_computations() ==
                lloyd.iterations * data.n * config.k,
            "Lloyd total is not T*n*k");
    for (const auto& c : lloyd.counters_per_iteration) {
        require(c.distance_computations == data.n * config.k,
                "a Lloyd iteration is not exactly n*k");
    }

    CentroidSet cs = tikm::init_kmeanspp(data, 8, 3);
    cs = tikm::group_centroids(cs, 4, 3);
    tikm::WorkCounters counters;
    tikm::init_bounds(data, cs, counters);
    require(counters.distance_computations == data.n * 8, "init_bounds is not exactly n*k");

    EngineConfig fc = config;
    fc.filter_mode = tikm::FilterMode::point_group;
    fc.groups = 4;
    const tikm::ClusterResult filtered = tikm::run_filtered(data, fc);
    require(filtered.counters_per_iteration[0].distance_computations == data.n * 8,
            "filtered iteration 1 is not exactly n*k");
}

// ------------------------------------------------------------------
// 6. Monotone objective for both engines across randomized suites.

void criterion_monotone_objective() {
    for (unsigned trial = 0; trial < 20; ++trial) {
        const Dataset data = oracle::random_dataset(150 + trial * 11, 3 + trial % 5,
                                                    4000 + trial);
        EngineConfig config;
        config.k = 3 + trial % 12;
        config.seed = trial;
        config.record_objective = true;

        config.filter_mode = tikm::FilterMode::none;
        const tikm::ClusterResult lloyd = tikm::run_lloyd(data, config);
        for (std::size_t t = 1; t < lloyd.objective_per_iteration.size(); ++t) {
            require(lloyd.objective_per_iteration[t] <=
                        lloyd.objective_per_iteration[t - 1] + 1e-9,
                    "Lloyd objective increased at trial " + std::to_string(trial));
        }

        config.filter_mode = tikm::FilterMode::point_group;
        config.groups = 1 + trial % config.k;
        const tikm::ClusterResult filtered = tikm::run_filtered(data, config);
        for (std::size_t t = 1; t < filtered.objective_per_iteration.size(); ++t) {
            require(filtered.objective_per_iteration[t] <=
                        filtered.objective_per_iteration[t - 1] + 1e-9,
                    "filtered objective increased at trial " + std::to_string(trial));
        }
    }
}

// ------------------------------------------------------------------
// 7. Determinism through the CLI: byte-identical output files across two
//    invocations.

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_cli_determinism() {
    const std::string cli = TIKM_CLI_PATH;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("tikm_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);

    const std::string base_cmd =
        "\"" + cli +
        "\" run --data blobs:n=800,d=8,k_true=10,spread=1,separation=10,seed=3 "
        "--k 10 --filter group --groups 3 --seed 5 --out ";
    const std::string out_a = (dir / "a").string();
    const std::string out_b = (dir / "b").string();
    require(std::system((base_cmd + out_a + " > /dev/null").c_str()) == 0,
            "first CLI run failed");
    require(std::system((base_cmd + out_b + " > /dev/null").c_str()) == 0,
            "second CLI run failed");

    require(read_file(out_a + ".assign.txt") == read_file(out_b + ".assign.txt"),
            "assignment files differ between invocations");
    require(read_file(out_a + ".centroids.csv") == read_file(out_b + ".centroids.csv"),
            "centroid files differ between invocations");
    std::filesystem::remove_all(dir);
}

// ------------------------------------------------------------------
// 8. Ingestion contract: ragged-row diagnostics and exact round trips.

void criterion_ingestion() {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("tikm_acceptance_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);

    const std::string ragged = (dir / "ragged.csv").string();
    {
        std::ofstream out(ragged);
        out << "1.0,2.0\n3.0\n";
    }
    bool caught = false;
    try {
        tikm::load_csv(ragged);
    } catch (const tikm::ParseError& e) {
        caught = std::string(e.what()).find("line 2") != std::string::npos;
    }
    require(caught, "ragged row did not raise ParseError naming line 2");

    const auto [data, truth] = tikm::gen_blobs({200, 5, 4, 1.0, 10.0, 31});
    const std::string round = (dir / "round.csv").string();
    tikm::write_csv(data, round);
    const Dataset back = tikm::load_csv(round);
    require(back.n == data.n && back.d == data.d, "round trip changed the shape");
    for (std::size_t v = 0; v < data.data.size(); ++v) {
        require(std::fabs(back.data[v] - data.data[v]) <= 1e-12,
                "round trip exceeded 1e-12");
    }
    std::filesystem::remove_all(dir);
}

// ------------------------------------------------------------------
// 9. Default bench plan: wide size/dimension range, every filtered cell exact
//    with distance-work speedup > 1.

void criterion_default_plan() {
    tikm::BenchPlan plan = tikm::load_plan(TIKM_DEFAULT_PLAN);
    require(plan.datasets.size() >= 4, "default plan has fewer than 4 datasets");

    bool small_n = false, large_n = false, small_d = false, large_d = false;
    for (const auto& source : plan.datasets) {
        const BlobSpec spec = tikm::parse_blob_spec(source);
        if (spec.n == 1000) small_n = true;
        if (spec.n == 10000) large_n = true;
        if (spec.d == 2) small_d = true;
        if (spec.d == 64) large_d = true;
    }
    require(small_n && large_n, "default plan does not span n in {1e3, 1e4}");
    require(small_d && large_d, "default plan does not span d in {2, 64}");

    const auto dir = std::filesystem::temp_directory_path() /
                     ("tikm_acceptance_plan_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    plan.output = (dir / "report.json").string();

    const tikm::BenchReport report = tikm::run_bench(plan);
    require(report.all_deterministic(), "counters varied across repeats");
    std::size_t filtered_cells = 0;
    for (const auto& cell : report.cells) {
        if (cell.is_baseline) continue;
        ++filtered_cells;
        require(cell.exact, "filtered cell inexact: " + cell.dataset);
        require(cell.work_ratio > 1.0,
                "work ratio not above 1 for " + cell.dataset + " (got " +
                    std::to_string(cell.work_ratio) + ")");
    }
    require(filtered_cells >= 4, "default plan has fewer than 4 filtered cells");
    require(std::filesystem::exists(plan.output), "report was not written");
    std::filesystem::remove_all(dir);
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle exactness (10 seeds, G in {1,4,32})", criterion_exactness},
        {2, "work reduction (G=4, efficiency >= 0.5 from iteration 3)",
         criterion_work_reduction},
        {3, "bound soundness (100 randomized runs, brute force)", criterion_bound_soundness},
        {4, "lane-count invariance (P in {1,2,4,8})", criterion_lane_invariance},
        {5, "counter accounting (T*n*k and n*k)", criterion_counter_accounting},
        {6, "monotone objective (both engines)", criterion_monotone_objective},
        {7, "CLI determinism (byte-identical outputs)", criterion_cli_determinism},
        {8, "ingestion contract (ragged rows, exact round trip)", criterion_ingestion},
        {9, "default bench plan (exact cells, work speedup > 1)", criterion_default_plan},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.fn();
            std::printf("[PASS] criterion %d: %s\n", criterion.id, criterion.name);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] criterion %d: %s — %s\n", criterion.id, criterion.name,
                        e.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
