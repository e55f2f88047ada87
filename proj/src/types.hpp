#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace tikm {

// Cluster centers plus the group label each center belongs to. group_of is all
// zeros until group assignment runs.
struct CentroidSet {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<double> centers;       // k * d, row major
    std::vector<std::int32_t> group_of; // k entries in [0, G)

    std::span<const double> center(std::size_t j) const {
        return {centers.data() + j * d, d};
    }
    double* center_mut(std::size_t j) { return centers.data() + j * d; }
};

// Per-point nearest-centroid labels.
using Assignment = std::vector<std::int32_t>;

// Work tallies for one iteration. distance_computations counts point-centroid
// distance evaluations only; centroid drift and grouping distances are tracked
// separately so a full Lloyd run accounts exactly iterations * n * k.
struct WorkCounters {
    std::uint64_t distance_computations = 0;
    std::uint64_t point_filter_hits = 0;
    std::uint64_t group_filter_skips = 0; // point-group pairs pruned
    std::uint64_t iteration = 0;          // 1-based

    WorkCounters& operator+=(const WorkCounters& o) {
        distance_computations += o.distance_computations;
        point_filter_hits += o.point_filter_hits;
        group_filter_skips += o.group_filter_skips;
        return *this;
    }
};

enum class FilterMode { none, point, point_group };
enum class InitMode { random, kmeanspp };
enum class Termination { stable, tol, max_iters };

const char* to_string(FilterMode m);
const char* to_string(InitMode m);
const char* to_string(Termination t);
FilterMode filter_mode_from_string(const std::string& s);
InitMode init_mode_from_string(const std::string& s);

struct EngineConfig {
    std::size_t k = 0;
    std::size_t groups = 0; // 0 = default max(1, ceil(k/10))
    std::size_t lanes = 1;  // degree of parallelism P
    std::size_t max_iters = 100;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    FilterMode filter_mode = FilterMode::point_group;
    InitMode init_mode = InitMode::kmeanspp;
    bool record_objective = false; // per-iteration objective, test instrumentation
};

// Effective group count: mode none/point collapse to a single group.
std::size_t effective_groups(const EngineConfig& config);

struct ClusterResult {
    CentroidSet centroids;
    Assignment assignment;
    std::vector<WorkCounters> counters_per_iteration; // one delta per iteration
    std::vector<double> objective_per_iteration;      // filled when record_objective
    std::size_t iterations = 0;
    Termination termination = Termination::max_iters;
    double wall_seconds = 0.0;
    double objective = 0.0; // final within-cluster sum of squares
    std::uint64_t grouping_distance_computations = 0;

    std::uint64_t total_distance_computations() const {
        std::uint64_t t = 0;
        for (const auto& c : counters_per_iteration) t += c.distance_computations;
        return t;
    }
    std::uint64_t total_point_filter_hits() const {
        std::uint64_t t = 0;
        for (const auto& c : counters_per_iteration) t += c.point_filter_hits;
        return t;
    }
    std::uint64_t total_group_filter_skips() const {
        std::uint64_t t = 0;
        for (const auto& c : counters_per_iteration) t += c.group_filter_skips;
        return t;
    }
};

struct BoundState; // defined in bounds.hpp

// Test/inspection hook fired once per iteration after the assignment step,
// with the centroids that produced the labels. bounds is null for the
// unfiltered engine.
using IterationObserver = std::function<void(std::size_t iteration,
                                             const CentroidSet& centroids,
                                             const Assignment& labels,
                                             const BoundState* bounds)>;

} // namespace tikm
