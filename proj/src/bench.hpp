#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "io.hpp"
#include "types.hpp"

namespace tikm {

// One engine execution inside a bench cell.
struct BenchRepeat {
    std::size_t iterations = 0;
    Termination termination = Termination::max_iters;
    double wall_seconds = 0.0;
    std::uint64_t distance_computations = 0;
    std::uint64_t point_filter_hits = 0;
    std::uint64_t group_filter_skips = 0;
    std::uint64_t grouping_distance_computations = 0;
    std::vector<WorkCounters> per_iteration;
    double objective = 0.0;
};

// One (dataset, config) cell with its repeats and derived comparisons against
// the paired baseline (the filter=none config with the same dataset, k, seed,
// init, tol and max_iters).
struct BenchCell {
    std::string dataset;
    std::size_t n = 0;
    std::size_t d = 0;
    EngineConfig config;
    bool is_baseline = false;
    std::vector<BenchRepeat> repeats;
    double median_wall_seconds = 0.0;
    bool exact = true;
    bool counters_deterministic = true;
    double work_efficiency = 0.0;
    double work_ratio = 1.0;  // baseline distances / this cell's distances
    double speedup_wall = 1.0;
    bool truncated_comparison = false;
};

struct BenchReport {
    int schema_version = 1;
    std::string rng_identity;
    std::string energy_note;
    bool concurrent_cells = false;
    std::vector<BenchCell> cells;

    bool all_exact() const;
    bool all_deterministic() const;
};

struct BenchPlan {
    std::vector<std::string> datasets; // CSV paths or inline blobs: specs
    CsvOptions csv;
    std::vector<EngineConfig> configs;
    std::size_t repeats = 1;
    std::string output;
    std::string format = "json"; // json | csv | markdown
    bool concurrent_cells = false;

    void validate() const;
};

struct BenchOptions {
    // Test hook: flips one label in every filtered result before the
    // exactness check, proving the failure path end to end.
    bool corrupt_exactness = false;
};

// 1 - filtered/baseline. baseline must be positive.
double work_efficiency(std::uint64_t filtered_distances, std::uint64_t baseline_distances);

BenchPlan load_plan(const std::string& path);

// Executes every (dataset, config) cell `repeats` times, verifies exactness of
// filtered cells against their baselines, derives work and wall-clock ratios,
// and writes the report to plan.output in plan.format.
BenchReport run_bench(const BenchPlan& plan, const BenchOptions& options = {});

// Serialization and rendering. Rendering works from the JSON form so written
// reports and in-memory ones share one code path.
std::string report_to_json_text(const BenchReport& report);
std::string render_report_text(const std::string& json_text, const std::string& format);
void emit_report(const BenchReport& report, const std::string& path, const std::string& format);

} // namespace tikm
