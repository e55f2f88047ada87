#include "init.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "geometry.hpp"
#include "rng.hpp"

namespace tikm {

namespace {

void check_k(const Dataset& dataset, std::size_t k) {
    if (k < 1 || k > dataset.n) {
        throw ConfigError("k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                          ", n=" + std::to_string(dataset.n) + ")");
    }
}

CentroidSet from_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
    CentroidSet cs;
    cs.k = rows.size();
    cs.d = dataset.d;
    cs.centers.reserve(cs.k * cs.d);
    for (std::size_t r : rows) {
        const auto row = dataset.row(r);
        cs.centers.insert(cs.centers.end(), row.begin(), row.end());
    }
    cs.group_of.assign(cs.k, 0);
    return cs;
}

} // namespace

CentroidSet init_random(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
    check_k(dataset, k);
    Rng rng(seed);
    std::vector<std::size_t> indices(dataset.n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.next_below(dataset.n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    return from_rows(dataset, indices);
}

CentroidSet init_kmeanspp(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
    check_k(dataset, k);
    Rng rng(seed);
    const std::size_t n = dataset.n;

    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<bool> is_chosen(n, false);

    const std::size_t first = rng.next_below(n);
    chosen.push_back(first);
    is_chosen[first] = true;

    // weight[i] = squared distance to the nearest chosen center
    std::vector<double> weight(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = squared_euclidean_raw(dataset.row(i).data(), dataset.row(first).data(), dataset.d);
    }

    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += weight[i];

        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.next_unit() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += weight[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
            // Float round-off can leave acc slightly below target at the end;
            // take the last positive-weight index then.
            if (pick == n) {
                for (std::size_t i = n; i-- > 0;) {
                    if (weight[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        if (pick == n) {
            // Degenerate: all remaining candidates coincide with chosen
            // centers. Uniform over unchosen indices keeps the op total.
            std::vector<std::size_t> pool;
            pool.reserve(n - chosen.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (!is_chosen[i]) pool.push_back(i);
            }
            pick = pool[rng.next_below(pool.size())];
        }
        chosen.push_back(pick);
        is_chosen[pick] = true;
        weight[pick] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sq = squared_euclidean_raw(dataset.row(i).data(), dataset.row(pick).data(), dataset.d);
            if (sq < weight[i]) weight[i] = sq;
        }
    }
    return from_rows(dataset, chosen);
}

CentroidSet initialize(const Dataset& dataset, std::size_t k, std::uint64_t seed, InitMode mode) {
    return mode == InitMode::random ? init_random(dataset, k, seed)
                                    : init_kmeanspp(dataset, k, seed);
}

} // namespace tikm
