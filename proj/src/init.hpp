#pragma once

#include <cstdint>

#include "types.hpp"

namespace tikm {

// Both initializers return centroids copied from dataset rows, deterministic
// given (dataset, k, seed). group_of comes back all zeros.

// k distinct row indices by partial Fisher-Yates.
CentroidSet init_random(const Dataset& dataset, std::size_t k, std::uint64_t seed);

// First center uniform; each next center with probability proportional to the
// squared distance to the nearest chosen center. When every remaining weight
// is zero (all candidates duplicate a chosen center) the pick falls back to
// uniform over unchosen indices.
CentroidSet init_kmeanspp(const Dataset& dataset, std::size_t k, std::uint64_t seed);

CentroidSet initialize(const Dataset& dataset, std::size_t k, std::uint64_t seed, InitMode mode);

} // namespace tikm
