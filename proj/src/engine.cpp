#include "engine.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>
#include <thread>

#include "bounds.hpp"
#include "init.hpp"
#include "lloyd.hpp"
#include "rng.hpp"

namespace tikm {

LanePartition partition(std::size_t n, std::size_t P) {
    LanePartition part;
    part.ranges.reserve(P);
    const std::size_t base = P > 0 ? n / P : 0;
    const std::size_t extra = P > 0 ? n % P : 0;
    std::size_t begin = 0;
    for (std::size_t lane = 0; lane < P; ++lane) {
        const std::size_t len = base + (lane < extra ? 1 : 0);
        part.ranges.emplace_back(begin, begin + len);
        begin += len;
    }
    return part;
}

namespace {

struct LaneOutcome {
    WorkCounters counters;
    std::size_t changed = 0;
};

// Runs fn(lane, begin, end, counters) per lane and merges outcomes strictly in
// lane-index order. Lane work must be per-point pure (no cross-point writes).
template <typename Fn>
LaneOutcome run_lanes(std::size_t P, std::size_t n, Fn&& fn) {
    const LanePartition part = partition(n, P);
    std::vector<LaneOutcome> outcomes(P);

    if (P == 1) {
        outcomes[0].changed = fn(std::size_t{0}, std::size_t{0}, n, outcomes[0].counters);
    } else {
        std::vector<std::exception_ptr> errors(P);
        std::vector<std::thread> threads;
        threads.reserve(P);
        for (std::size_t lane = 0; lane < P; ++lane) {
            threads.emplace_back([&, lane] {
                try {
                    const auto [begin, end] = part.ranges[lane];
                    outcomes[lane].changed = fn(lane, begin, end, outcomes[lane].counters);
                } catch (...) {
                    errors[lane] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (std::size_t lane = 0; lane < P; ++lane) {
            if (errors[lane]) std::rethrow_exception(errors[lane]);
        }
    }

    LaneOutcome merged;
    for (std::size_t lane = 0; lane < P; ++lane) {
        merged.counters += outcomes[lane].counters;
        merged.changed += outcomes[lane].changed;
    }
    return merged;
}

void validate(const Dataset& dataset, const EngineConfig& config) {
    if (config.k < 1 || config.k > dataset.n) {
        throw ConfigError("k must satisfy 1 <= k <= n (k=" + std::to_string(config.k) +
                          ", n=" + std::to_string(dataset.n) + ")");
    }
    if (config.lanes < 1) {
        throw ConfigError("lanes must be >= 1");
    }
    if (config.tol < 0.0) {
        throw ConfigError("tol must be >= 0");
    }
    const std::size_t G = effective_groups(config);
    if (G < 1 || G > config.k) {
        throw ConfigError("groups must satisfy 1 <= G <= k (G=" + std::to_string(G) +
                          ", k=" + std::to_string(config.k) + ")");
    }
    if (dataset.d < 1) {
        throw ConfigError("dataset dimension must be >= 1");
    }
}

ClusterResult run_engine(const Dataset& dataset, const EngineConfig& config, std::size_t lanes,
                         bool filtered, const IterationObserver& observer) {
    validate(dataset, config);
    const std::size_t n = dataset.n;
    const std::size_t G = filtered ? effective_groups(config) : 1;

    ClusterResult result;
    const auto t0 = std::chrono::steady_clock::now();

    CentroidSet centroids = initialize(dataset, config.k, config.seed, config.init_mode);
    std::vector<std::vector<std::int32_t>> members;
    if (filtered && G > 1) {
        centroids = group_centroids(centroids, G, derive_seed(config.seed, 1),
                                    &result.grouping_distance_computations);
    }
    if (filtered) {
        members = group_member_lists(centroids, G);
    }

    BoundState bounds;
    if (filtered) {
        bounds.n = n;
        bounds.G = G;
        bounds.sentinel = bounds_sentinel(dataset);
        bounds.upper.assign(n, 0.0);
        bounds.lower.assign(n * G, 0.0);
        bounds.assigned.assign(n, -1);
    }
    Assignment labels(n, -1);
    Assignment& live_labels = filtered ? bounds.assigned : labels;

    std::size_t iters = 0;
    Termination termination = Termination::max_iters;
    GroupDrift pending_drift;

    while (iters < config.max_iters) {
        LaneOutcome outcome;
        if (!filtered) {
            outcome = run_lanes(lanes, n,
                                [&](std::size_t, std::size_t begin, std::size_t end,
                                    WorkCounters& counters) {
                                    return assign_full_range(dataset, centroids, labels, begin,
                                                             end, counters);
                                });
        } else if (iters == 0) {
            outcome = run_lanes(lanes, n,
                                [&](std::size_t, std::size_t begin, std::size_t end,
                                    WorkCounters& counters) {
                                    return init_bounds_range(dataset, centroids, G, bounds,
                                                             begin, end, counters);
                                });
        } else {
            outcome = run_lanes(lanes, n,
                                [&](std::size_t, std::size_t begin, std::size_t end,
                                    WorkCounters& counters) {
                                    return assign_filtered_range(dataset, centroids, members,
                                                                 bounds, begin, end, counters);
                                });
        }
        ++iters;
        outcome.counters.iteration = iters;
        result.counters_per_iteration.push_back(outcome.counters);
        if (config.record_objective) {
            result.objective_per_iteration.push_back(
                within_cluster_ss(dataset, live_labels, centroids));
        }
        if (observer) {
            observer(iters, centroids, live_labels, filtered ? &bounds : nullptr);
        }

        if (outcome.changed == 0) {
            termination = Termination::stable;
            break;
        }

        auto [next, drift] = update_centroids(dataset, live_labels, centroids);
        centroids = std::move(next);
        if (filtered) {
            pending_drift = make_group_drift(drift, centroids.group_of, G);
            run_lanes(lanes, n,
                      [&](std::size_t, std::size_t begin, std::size_t end, WorkCounters&) {
                          update_bounds_range(bounds, pending_drift, begin, end);
                          return std::size_t{0};
                      });
        }

        const double max_drift = *std::max_element(drift.begin(), drift.end());
        if (max_drift <= config.tol) {
            termination = Termination::tol;
            break;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    result.centroids = std::move(centroids);
    if (iters == 0) {
        // No assignment step ran; report an all-zero labeling.
        result.assignment.assign(n, 0);
        result.objective = 0.0;
    } else {
        result.assignment = live_labels;
        result.objective = within_cluster_ss(dataset, result.assignment, result.centroids);
    }
    result.iterations = iters;
    result.termination = termination;
    return result;
}

} // namespace

ClusterResult run_lloyd(const Dataset& dataset, const EngineConfig& config,
                        const IterationObserver& observer) {
    return run_engine(dataset, config, 1, false, observer);
}

ClusterResult run_filtered(const Dataset& dataset, const EngineConfig& config,
                           const IterationObserver& observer) {
    if (config.filter_mode == FilterMode::none) {
        throw ConfigError("run_filtered requires filter mode point or group");
    }
    return run_engine(dataset, config, 1, true, observer);
}

ClusterResult run_parallel(const Dataset& dataset, const EngineConfig& config,
                           const IterationObserver& observer) {
    const bool filtered = config.filter_mode != FilterMode::none;
    return run_engine(dataset, config, config.lanes, filtered, observer);
}

} // namespace tikm
