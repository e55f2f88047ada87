#pragma once

#include <utility>
#include <vector>

#include "types.hpp"

namespace tikm {

// Contiguous balanced lane intervals over [0, n): the first n % P lanes take
// ceil(n/P) points, the rest floor(n/P). Lanes beyond n come back empty.
struct LanePartition {
    std::vector<std::pair<std::size_t, std::size_t>> ranges; // [begin, end) per lane
};

LanePartition partition(std::size_t n, std::size_t P);

// Standard Lloyd K-means, single lane. The baseline the filtered engine is
// measured against and the exactness oracle it must match.
ClusterResult run_lloyd(const Dataset& dataset, const EngineConfig& config,
                        const IterationObserver& observer = {});

// Multi-level filtered K-means, single lane. Requires a filtering mode.
ClusterResult run_filtered(const Dataset& dataset, const EngineConfig& config,
                           const IterationObserver& observer = {});

// General entry point: dispatches on config.filter_mode and distributes
// per-point work over config.lanes. Results are a pure function of
// (dataset, config minus lanes): per-point transforms run in lanes, while
// every floating-point reduction happens in one fixed ascending-index pass, so
// outputs are bit-identical for every lane count.
ClusterResult run_parallel(const Dataset& dataset, const EngineConfig& config,
                           const IterationObserver& observer = {});

} // namespace tikm
