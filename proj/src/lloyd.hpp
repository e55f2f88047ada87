#pragma once

#include <utility>

#include "types.hpp"

namespace tikm {

// Unfiltered assignment over a point range [begin, end): every point pays
// exactly k distance computations. Labels are written in place; returns the
// number of labels that changed. Ties go to the lowest centroid index.
std::size_t assign_full_range(const Dataset& dataset, const CentroidSet& centroids,
                              Assignment& labels, std::size_t begin, std::size_t end,
                              WorkCounters& counters);

// Whole-dataset assignment; counters.distance_computations grows by n * k.
Assignment assign_full(const Dataset& dataset, const CentroidSet& centroids,
                       WorkCounters& counters);

// Mean update with cluster sums accumulated in ascending point-index order.
// Empty clusters keep their previous center. Returns the new centers and the
// per-centroid drift distance.
std::pair<CentroidSet, std::vector<double>> update_centroids(const Dataset& dataset,
                                                             const Assignment& assignment,
                                                             const CentroidSet& centroids);

// Exact within-cluster sum of squared distances; bookkeeping only, not counted
// as engine work.
double within_cluster_ss(const Dataset& dataset, const Assignment& assignment,
                         const CentroidSet& centroids);

} // namespace tikm
