#pragma once

// Brute-force oracles for the test suites. Everything here is written from
// definitions, independent of the library's kernels, so tests compare two
// routes to the same value.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "dataset.hpp"
#include "types.hpp"

namespace oracle {

inline double dist(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(acc);
}

inline double point_center_dist(const tikm::Dataset& data, const tikm::CentroidSet& cs,
                                std::size_t i, std::size_t c) {
    return dist(data.data.data() + i * data.d, cs.centers.data() + c * cs.d, data.d);
}

// Nearest centroid per point, lowest index on ties.
inline tikm::Assignment nearest(const tikm::Dataset& data, const tikm::CentroidSet& cs) {
    tikm::Assignment labels(data.n, 0);
    for (std::size_t i = 0; i < data.n; ++i) {
        double best = point_center_dist(data, cs, i, 0);
        std::int32_t best_idx = 0;
        for (std::size_t c = 1; c < cs.k; ++c) {
            const double dc = point_center_dist(data, cs, i, c);
            if (dc < best) {
                best = dc;
                best_idx = static_cast<std::int32_t>(c);
            }
        }
        labels[i] = best_idx;
    }
    return labels;
}

inline double wcss(const tikm::Dataset& data, const tikm::Assignment& labels,
                   const tikm::CentroidSet& cs) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        const double e = point_center_dist(data, cs, i, static_cast<std::size_t>(labels[i]));
        total += e * e;
    }
    return total;
}

// Min distance from point i to centroids of group g excluding `exclude`;
// +inf when the group has no such member.
inline double competitor_min(const tikm::Dataset& data, const tikm::CentroidSet& cs,
                             std::size_t i, std::int32_t g, std::int32_t exclude) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cs.k; ++c) {
        if (cs.group_of[c] != g || static_cast<std::int32_t>(c) == exclude) continue;
        best = std::min(best, point_center_dist(data, cs, i, c));
    }
    return best;
}

// Verifies both bound directions against brute force with absolute slack.
// Returns an empty string on success, else a description of the violation.
inline std::string check_bounds(const tikm::Dataset& data, const tikm::CentroidSet& cs,
                                const tikm::BoundState& bounds, double slack = 1e-9) {
    for (std::size_t i = 0; i < data.n; ++i) {
        const auto a = bounds.assigned[i];
        const double exact = point_center_dist(data, cs, i, static_cast<std::size_t>(a));
        if (bounds.upper[i] < exact - slack) {
            return "upper[" + std::to_string(i) + "]=" + std::to_string(bounds.upper[i]) +
                   " under-estimates exact " + std::to_string(exact);
        }
        for (std::size_t g = 0; g < bounds.G; ++g) {
            const double cmin = competitor_min(data, cs, i, static_cast<std::int32_t>(g), a);
            if (bounds.lb(i, g) > cmin + slack) {
                return "lower[" + std::to_string(i) + "][" + std::to_string(g) +
                       "]=" + std::to_string(bounds.lb(i, g)) + " over-estimates exact " +
                       std::to_string(cmin);
            }
        }
    }
    return {};
}

// Uniform random dataset in [0, range]^d, independent of the library RNG.
inline tikm::Dataset random_dataset(std::size_t n, std::size_t d, unsigned seed,
                                    double range = 10.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, range);
    std::vector<double> values(n * d);
    for (auto& v : values) v = u(gen);
    return tikm::Dataset(n, d, std::move(values));
}

} // namespace oracle
