#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geometry.hpp"
#include "init.hpp"
#include "lloyd.hpp"
#include "rng.hpp"

namespace tikm {

GroupDrift make_group_drift(const std::vector<double>& per_centroid,
                            const std::vector<std::int32_t>& group_of, std::size_t G) {
    GroupDrift drift;
    drift.per_centroid = per_centroid;
    drift.per_group_max.assign(G, 0.0);
    for (std::size_t c = 0; c < per_centroid.size(); ++c) {
        const auto g = static_cast<std::size_t>(group_of[c]);
        if (per_centroid[c] > drift.per_group_max[g]) drift.per_group_max[g] = per_centroid[c];
    }
    return drift;
}

std::vector<std::vector<std::int32_t>> group_member_lists(const CentroidSet& centroids,
                                                          std::size_t G) {
    std::vector<std::vector<std::int32_t>> members(G);
    for (std::size_t c = 0; c < centroids.k; ++c) {
        const auto g = static_cast<std::size_t>(centroids.group_of[c]);
        if (centroids.group_of[c] < 0 || g >= G) {
            throw StateError("centroid " + std::to_string(c) + " has group " +
                             std::to_string(centroids.group_of[c]) + " outside [0, " +
                             std::to_string(G) + ")");
        }
        members[g].push_back(static_cast<std::int32_t>(c));
    }
    return members;
}

CentroidSet group_centroids(const CentroidSet& centroids, std::size_t G, std::uint64_t seed,
                            std::uint64_t* distance_count) {
    const std::size_t k = centroids.k;
    if (G < 1 || G > k) {
        throw ConfigError("group count must satisfy 1 <= G <= k (G=" + std::to_string(G) +
                          ", k=" + std::to_string(k) + ")");
    }

    CentroidSet grouped = centroids;
    if (G == 1) {
        grouped.group_of.assign(k, 0);
        return grouped;
    }

    // Cluster the centroid vectors themselves: 5 Lloyd iterations from a
    // seeded random init. Grouping is computed once per run and not refreshed.
    Dataset meta(k, centroids.d, centroids.centers);
    CentroidSet groups = init_random(meta, G, seed);
    WorkCounters meta_counters;
    Assignment labels(k, -1);
    for (int iter = 0; iter < 5; ++iter) {
        const std::size_t changed =
            assign_full_range(meta, groups, labels, 0, k, meta_counters);
        if (changed == 0) break;
        groups = update_centroids(meta, labels, groups).first;
    }
    if (distance_count != nullptr) {
        *distance_count = meta_counters.distance_computations;
    }

    // Repair: every group must be nonempty. Move the centroid farthest from
    // its own group mean (among groups that can spare one) into each empty
    // group.
    std::vector<std::size_t> sizes(G, 0);
    for (std::size_t c = 0; c < k; ++c) ++sizes[static_cast<std::size_t>(labels[c])];

    for (std::size_t g = 0; g < G; ++g) {
        if (sizes[g] > 0) continue;

        std::vector<double> means(G * centroids.d, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
            const auto lg = static_cast<std::size_t>(labels[c]);
            const double* row = meta.row(c).data();
            double* m = means.data() + lg * centroids.d;
            for (std::size_t j = 0; j < centroids.d; ++j) m[j] += row[j];
        }
        double best_dist = -1.0;
        std::size_t best_c = k;
        for (std::size_t c = 0; c < k; ++c) {
            const auto lg = static_cast<std::size_t>(labels[c]);
            if (sizes[lg] < 2) continue;
            double sq = 0.0;
            const double* row = meta.row(c).data();
            const double* m = means.data() + lg * centroids.d;
            const double inv = 1.0 / static_cast<double>(sizes[lg]);
            for (std::size_t j = 0; j < centroids.d; ++j) {
                const double delta = row[j] - m[j] * inv;
                sq += delta * delta;
            }
            if (sq > best_dist) {
                best_dist = sq;
                best_c = c;
            }
        }
        if (best_c == k) {
            throw InternalError("group repair found no donor group");
        }
        --sizes[static_cast<std::size_t>(labels[best_c])];
        labels[best_c] = static_cast<std::int32_t>(g);
        ++sizes[g];
    }

    grouped.group_of = labels;
    return grouped;
}

double bounds_sentinel(const Dataset& dataset) {
    // Above any achievable point-centroid distance; centroids are convex
    // combinations of rows, so twice the bounding-box diagonal clears it.
    return std::max(2.0 * bounding_box_diagonal(dataset), 1.0);
}

std::size_t init_bounds_range(const Dataset& dataset, const CentroidSet& centroids,
                              std::size_t G, BoundState& bounds, std::size_t begin,
                              std::size_t end, WorkCounters& counters) {
    const std::size_t k = centroids.k;
    const std::size_t d = dataset.d;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> min1(G), min2(G);
    std::vector<std::int32_t> min1_idx(G);
    std::size_t changed = 0;

    for (std::size_t i = begin; i < end; ++i) {
        const double* point = dataset.data.data() + i * d;
        std::fill(min1.begin(), min1.end(), inf);
        std::fill(min2.begin(), min2.end(), inf);
        std::fill(min1_idx.begin(), min1_idx.end(), -1);

        double best = inf;
        std::int32_t best_idx = -1;
        for (std::size_t c = 0; c < k; ++c) {
            const double dist =
                std::sqrt(squared_euclidean_raw(point, centroids.center(c).data(), d));
            const auto g = static_cast<std::size_t>(centroids.group_of[c]);
            if (dist < min1[g]) {
                min2[g] = min1[g];
                min1[g] = dist;
                min1_idx[g] = static_cast<std::int32_t>(c);
            } else if (dist < min2[g]) {
                min2[g] = dist;
            }
            if (dist < best) {
                best = dist;
                best_idx = static_cast<std::int32_t>(c);
            }
        }
        counters.distance_computations += k;

        bounds.upper[i] = best;
        if (bounds.assigned[i] != best_idx) {
            bounds.assigned[i] = best_idx;
            ++changed;
        }
        for (std::size_t g = 0; g < G; ++g) {
            double lb;
            if (min1_idx[g] < 0) {
                lb = bounds.sentinel;
            } else if (min1_idx[g] == best_idx) {
                lb = std::isfinite(min2[g]) ? min2[g] : bounds.sentinel;
            } else {
                lb = min1[g];
            }
            bounds.lb(i, g) = lb;
        }
    }
    return changed;
}

BoundState init_bounds(const Dataset& dataset, const CentroidSet& centroids,
                       WorkCounters& counters) {
    if (dataset.d != centroids.d) {
        throw DimensionError("dataset dimension " + std::to_string(dataset.d) +
                             " does not match centroid dimension " + std::to_string(centroids.d));
    }
    std::size_t G = 0;
    for (const auto g : centroids.group_of) {
        G = std::max(G, static_cast<std::size_t>(g) + 1);
    }
    BoundState bounds;
    bounds.n = dataset.n;
    bounds.G = G;
    bounds.sentinel = bounds_sentinel(dataset);
    bounds.upper.assign(dataset.n, 0.0);
    bounds.lower.assign(dataset.n * G, 0.0);
    bounds.assigned.assign(dataset.n, -1);
    init_bounds_range(dataset, centroids, G, bounds, 0, dataset.n, counters);
    return bounds;
}

void update_bounds_range(BoundState& bounds, const GroupDrift& drift, std::size_t begin,
                         std::size_t end) {
    const std::size_t G = bounds.G;
    for (std::size_t i = begin; i < end; ++i) {
        bounds.upper[i] += drift.per_centroid[static_cast<std::size_t>(bounds.assigned[i])];
        double* lb = bounds.lower.data() + i * G;
        for (std::size_t g = 0; g < G; ++g) {
            lb[g] = std::max(0.0, lb[g] - drift.per_group_max[g]);
        }
    }
}

void update_bounds(BoundState& bounds, const GroupDrift& drift) {
    if (drift.per_group_max.size() != bounds.G ||
        bounds.upper.size() != bounds.n || bounds.lower.size() != bounds.n * bounds.G) {
        throw StateError("bound state sizes do not match drift");
    }
    update_bounds_range(bounds, drift, 0, bounds.n);
}

std::size_t assign_filtered_range(const Dataset& dataset, const CentroidSet& centroids,
                                  const std::vector<std::vector<std::int32_t>>& members,
                                  BoundState& bounds, std::size_t begin, std::size_t end,
                                  WorkCounters& counters) {
    const std::size_t G = bounds.G;
    const std::size_t d = dataset.d;
    const double inf = std::numeric_limits<double>::infinity();

    // Lane-local scratch: per-group best/second-best of the current point.
    std::vector<double> g_min1(G), g_min2(G);
    std::vector<std::int32_t> g_min1_idx(G);
    std::vector<char> scanned(G);

    std::size_t changed = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const auto a = bounds.assigned[i];
        const double* point = dataset.data.data() + i * d;
        double* lb = bounds.lower.data() + i * G;

        double min_lower = lb[0];
        for (std::size_t g = 1; g < G; ++g) min_lower = std::min(min_lower, lb[g]);

        // (1) point-level filter on the maintained upper bound
        if (bounds.upper[i] <= min_lower) {
            ++counters.point_filter_hits;
            continue;
        }

        // (2) tighten the upper bound once and retest
        const double u_exact = std::sqrt(squared_euclidean_raw(
            point, centroids.center(static_cast<std::size_t>(a)).data(), d));
        ++counters.distance_computations;
        bounds.upper[i] = u_exact;
        if (u_exact <= min_lower) {
            ++counters.point_filter_hits;
            continue;
        }

        // (3) group-level filter; surviving groups are scanned exactly. The
        // running best distance is the tightened upper bound, so later groups
        // face the sharpest available test.
        double best = u_exact;
        std::int32_t best_idx = a;
        for (std::size_t g = 0; g < G; ++g) {
            if (lb[g] >= best) {
                scanned[g] = 0;
                ++counters.group_filter_skips;
                continue;
            }
            scanned[g] = 1;
            double min1 = inf, min2 = inf;
            std::int32_t min1_idx = -1;
            for (const std::int32_t c : members[g]) {
                double dist;
                if (c == a) {
                    dist = u_exact;
                } else {
                    dist = std::sqrt(squared_euclidean_raw(
                        point, centroids.center(static_cast<std::size_t>(c)).data(), d));
                    ++counters.distance_computations;
                }
                if (dist < min1) {
                    min2 = min1;
                    min1 = dist;
                    min1_idx = c;
                } else if (dist < min2) {
                    min2 = dist;
                }
            }
            g_min1[g] = min1;
            g_min2[g] = min2;
            g_min1_idx[g] = min1_idx;
            if (min1_idx >= 0 &&
                (min1 < best || (min1 == best && min1_idx < best_idx))) {
                best = min1;
                best_idx = min1_idx;
            }
        }

        // (4) reassign and restore exact competitor minima for scanned groups
        for (std::size_t g = 0; g < G; ++g) {
            if (!scanned[g]) continue;
            double restored;
            if (g_min1_idx[g] < 0) {
                restored = bounds.sentinel;
            } else if (g_min1_idx[g] == best_idx) {
                restored = std::isfinite(g_min2[g]) ? g_min2[g] : bounds.sentinel;
            } else {
                restored = g_min1[g];
            }
            lb[g] = restored;
        }
        bounds.upper[i] = best;
        if (best_idx != a) {
            // The old centroid turns into a competitor; if its group was not
            // scanned the maintained lower bound must absorb its distance.
            const auto g_old = static_cast<std::size_t>(centroids.group_of[static_cast<std::size_t>(a)]);
            if (!scanned[g_old]) {
                lb[g_old] = std::min(lb[g_old], u_exact);
            }
            bounds.assigned[i] = best_idx;
            ++changed;
        }
    }
    return changed;
}

Assignment assign_filtered(const Dataset& dataset, const CentroidSet& centroids,
                           BoundState& bounds, WorkCounters& counters) {
    if (bounds.n != dataset.n || bounds.upper.size() != dataset.n ||
        bounds.lower.size() != dataset.n * bounds.G ||
        bounds.assigned.size() != dataset.n) {
        throw StateError("bound state sizes do not match dataset");
    }
    if (dataset.d != centroids.d) {
        throw DimensionError("dataset dimension " + std::to_string(dataset.d) +
                             " does not match centroid dimension " + std::to_string(centroids.d));
    }
    const auto members = group_member_lists(centroids, bounds.G);
    assign_filtered_range(dataset, centroids, members, bounds, 0, dataset.n, counters);
    return bounds.assigned;
}

} // namespace tikm
