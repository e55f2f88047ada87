#include "lloyd.hpp"

#include <cmath>
#include <string>

#include "geometry.hpp"

namespace tikm {

std::size_t assign_full_range(const Dataset& dataset, const CentroidSet& centroids,
                              Assignment& labels, std::size_t begin, std::size_t end,
                              WorkCounters& counters) {
    if (dataset.d != centroids.d) {
        throw DimensionError("dataset dimension " + std::to_string(dataset.d) +
                             " does not match centroid dimension " + std::to_string(centroids.d));
    }
    const std::size_t k = centroids.k;
    std::size_t changed = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const double* point = dataset.data.data() + i * dataset.d;
        double best = std::sqrt(squared_euclidean_raw(point, centroids.center(0).data(), dataset.d));
        std::int32_t best_idx = 0;
        for (std::size_t c = 1; c < k; ++c) {
            const double dist =
                std::sqrt(squared_euclidean_raw(point, centroids.center(c).data(), dataset.d));
            if (dist < best) {
                best = dist;
                best_idx = static_cast<std::int32_t>(c);
            }
        }
        counters.distance_computations += k;
        if (labels[i] != best_idx) {
            labels[i] = best_idx;
            ++changed;
        }
    }
    return changed;
}

Assignment assign_full(const Dataset& dataset, const CentroidSet& centroids,
                       WorkCounters& counters) {
    Assignment labels(dataset.n, -1);
    assign_full_range(dataset, centroids, labels, 0, dataset.n, counters);
    return labels;
}

std::pair<CentroidSet, std::vector<double>> update_centroids(const Dataset& dataset,
                                                             const Assignment& assignment,
                                                             const CentroidSet& centroids) {
    if (assignment.size() != dataset.n) {
        throw StateError("assignment length " + std::to_string(assignment.size()) +
                         " does not match n=" + std::to_string(dataset.n));
    }
    const std::size_t k = centroids.k;
    const std::size_t d = centroids.d;

    std::vector<double> sums(k * d, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const double* point = dataset.data.data() + i * d;
        const auto label = static_cast<std::size_t>(assignment[i]);
        double* sum = sums.data() + label * d;
        for (std::size_t j = 0; j < d; ++j) sum[j] += point[j];
        ++counts[label];
    }

    CentroidSet next = centroids;
    std::vector<double> drift(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue; // keep the stale center, drift stays 0
        double* center = next.center_mut(c);
        const double inv = 1.0 / static_cast<double>(counts[c]);
        const double* sum = sums.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) center[j] = sum[j] * inv;
        drift[c] = euclidean(next.center(c), centroids.center(c));
    }
    return {std::move(next), std::move(drift)};
}

double within_cluster_ss(const Dataset& dataset, const Assignment& assignment,
                         const CentroidSet& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const double* point = dataset.data.data() + i * dataset.d;
        const auto label = static_cast<std::size_t>(assignment[i]);
        total += squared_euclidean_raw(point, centroids.center(label).data(), dataset.d);
    }
    return total;
}

} // namespace tikm
