#pragma once

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace tikm {

// Triangle-inequality bound state for the filtered assignment path.
//
// upper[i] over-estimates the distance from point i to its assigned centroid.
// lower[i][g] under-estimates the distance from point i to the nearest
// centroid in group g other than the assigned one. Groups with no competitor
// hold the sentinel, a value above any achievable distance.
struct BoundState {
    std::size_t n = 0;
    std::size_t G = 0;
    double sentinel = 0.0;
    std::vector<double> upper;  // n
    std::vector<double> lower;  // n * G, row major
    Assignment assigned;        // n

    double& lb(std::size_t i, std::size_t g) { return lower[i * G + g]; }
    double lb(std::size_t i, std::size_t g) const { return lower[i * G + g]; }
};

// Per-centroid drift of the last update plus its per-group maximum.
struct GroupDrift {
    std::vector<double> per_centroid;  // k
    std::vector<double> per_group_max; // G
};

GroupDrift make_group_drift(const std::vector<double>& per_centroid,
                            const std::vector<std::int32_t>& group_of, std::size_t G);

// Ascending member lists per group, derived from centroids.group_of.
std::vector<std::vector<std::int32_t>> group_member_lists(const CentroidSet& centroids,
                                                          std::size_t G);

// Partitions the k centroids into G nonempty groups by clustering the centroid
// vectors themselves (a short fixed-length Lloyd run), then repairing empty
// groups by moving in the centroid farthest from its own group mean.
// Deterministic given seed. distance_count, when given, receives the number of
// distance computations spent on grouping (tracked apart from engine work).
CentroidSet group_centroids(const CentroidSet& centroids, std::size_t G, std::uint64_t seed,
                            std::uint64_t* distance_count = nullptr);

double bounds_sentinel(const Dataset& dataset);

// First-iteration setup: all n*k exact distances, nearest assignment with
// lowest-index ties, exact upper and per-group competitor lower bounds.
std::size_t init_bounds_range(const Dataset& dataset, const CentroidSet& centroids,
                              std::size_t G, BoundState& bounds, std::size_t begin,
                              std::size_t end, WorkCounters& counters);

BoundState init_bounds(const Dataset& dataset, const CentroidSet& centroids,
                       WorkCounters& counters);

// Drift maintenance: upper grows by the assigned centroid's drift, each group
// lower shrinks by the group's max drift, clamped at zero.
void update_bounds_range(BoundState& bounds, const GroupDrift& drift, std::size_t begin,
                         std::size_t end);

void update_bounds(BoundState& bounds, const GroupDrift& drift);

// Filtered assignment over [begin, end): point-level filter, one-shot upper
// tightening, group-level filter, exact scan of surviving groups. The result
// equals assign_full from the same centroids. Returns changed label count.
std::size_t assign_filtered_range(const Dataset& dataset, const CentroidSet& centroids,
                                  const std::vector<std::vector<std::int32_t>>& members,
                                  BoundState& bounds, std::size_t begin, std::size_t end,
                                  WorkCounters& counters);

// Convenience whole-dataset form; builds member lists from centroids.group_of.
Assignment assign_filtered(const Dataset& dataset, const CentroidSet& centroids,
                           BoundState& bounds, WorkCounters& counters);

} // namespace tikm
