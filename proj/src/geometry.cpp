#include "geometry.hpp"

#include <cmath>
#include <string>

namespace tikm {

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("dimension mismatch: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    return squared_euclidean_raw(a.data(), b.data(), a.size());
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_euclidean(a, b));
}

std::vector<double> mean_of(const std::vector<std::vector<double>>& points) {
    if (points.empty()) {
        throw EmptySetError("mean of empty point set");
    }
    const std::size_t d = points.front().size();
    std::vector<double> mean(d, 0.0);
    for (const auto& p : points) {
        if (p.size() != d) {
            throw DimensionError("dimension mismatch in mean: " + std::to_string(p.size()) +
                                 " vs " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) mean[j] += p[j];
    }
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(points.size());
    return mean;
}

} // namespace tikm
