#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace tikm {

// Dense row-major n x d matrix of finite feature values.
struct Dataset {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> data; // n * d, row major

    Dataset() = default;
    Dataset(std::size_t n_, std::size_t d_, std::vector<double> values);

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * d, d};
    }

    void validate() const;
};

struct DatasetStats {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> mean; // accumulated in ascending row order
};

DatasetStats dataset_stats(const Dataset& dataset);

// Length of the bounding-box diagonal; zero for a degenerate (single-value) box.
double bounding_box_diagonal(const Dataset& dataset);

// In-place per-dimension min-max scaling to [0, 1]; constant dimensions map to 0.
void minmax_normalize(Dataset& dataset);

} // namespace tikm
