#pragma once

#include <span>
#include <vector>

#include "error.hpp"

namespace tikm {

// Exact distance kernels. Pure functions, double precision throughout so the
// filtered and unfiltered engines see identical values.

double squared_euclidean(std::span<const double> a, std::span<const double> b);
double euclidean(std::span<const double> a, std::span<const double> b);

// Unchecked variant for hot loops where both rows come from matrices of the
// same dimension.
inline double squared_euclidean_raw(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double delta = a[j] - b[j];
        acc += delta * delta;
    }
    return acc;
}

// Coordinate-wise mean of a nonempty set of equal-dimension points.
std::vector<double> mean_of(const std::vector<std::vector<double>>& points);

} // namespace tikm
