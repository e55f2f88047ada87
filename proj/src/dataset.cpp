#include "dataset.hpp"

#include <cmath>
#include <string>

namespace tikm {

Dataset::Dataset(std::size_t n_, std::size_t d_, std::vector<double> values)
    : n(n_), d(d_), data(std::move(values)) {
    validate();
}

void Dataset::validate() const {
    if (n < 1 || d < 1) {
        throw ConfigError("dataset must have n >= 1 and d >= 1 (got n=" +
                          std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
    if (data.size() != n * d) {
        throw ConfigError("dataset buffer size " + std::to_string(data.size()) +
                          " does not match n*d = " + std::to_string(n * d));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw ConfigError("non-finite value at row " + std::to_string(i / d) +
                              ", column " + std::to_string(i % d));
        }
    }
}

DatasetStats dataset_stats(const Dataset& dataset) {
    DatasetStats s;
    s.n = dataset.n;
    s.d = dataset.d;
    s.min.assign(dataset.d, 0.0);
    s.max.assign(dataset.d, 0.0);
    s.mean.assign(dataset.d, 0.0);
    for (std::size_t j = 0; j < dataset.d; ++j) {
        s.min[j] = s.max[j] = dataset.data[j];
    }
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < dataset.d; ++j) {
            const double v = row[j];
            if (v < s.min[j]) s.min[j] = v;
            if (v > s.max[j]) s.max[j] = v;
            s.mean[j] += v;
        }
    }
    for (std::size_t j = 0; j < dataset.d; ++j) {
        s.mean[j] /= static_cast<double>(dataset.n);
    }
    return s;
}

double bounding_box_diagonal(const Dataset& dataset) {
    const DatasetStats s = dataset_stats(dataset);
    double acc = 0.0;
    for (std::size_t j = 0; j < dataset.d; ++j) {
        const double e = s.max[j] - s.min[j];
        acc += e * e;
    }
    return std::sqrt(acc);
}

void minmax_normalize(Dataset& dataset) {
    const DatasetStats s = dataset_stats(dataset);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        double* row = dataset.data.data() + i * dataset.d;
        for (std::size_t j = 0; j < dataset.d; ++j) {
            const double range = s.max[j] - s.min[j];
            row[j] = range > 0.0 ? (row[j] - s.min[j]) / range : 0.0;
        }
    }
}

} // namespace tikm
