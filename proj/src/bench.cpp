#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "engine.hpp"
#include "rng.hpp"

namespace tikm {

using nlohmann::json;

namespace {

constexpr const char* kEnergyNote =
    "energy_joules requires board-level power instrumentation and is reported as null; "
    "distance_computations is the work proxy used instead";

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    if (values.size() % 2 == 1) return values[m];
    return 0.5 * (values[m - 1] + values[m]);
}

std::string config_key(const std::string& dataset, const EngineConfig& c) {
    std::ostringstream os;
    os << dataset << "|k=" << c.k << "|seed=" << c.seed << "|init=" << to_string(c.init_mode)
       << "|tol=" << c.tol << "|max_iters=" << c.max_iters;
    return os.str();
}

json config_to_json(const EngineConfig& c) {
    return json{{"filter", to_string(c.filter_mode)}, {"k", c.k},
                {"groups", effective_groups(c)},      {"lanes", c.lanes},
                {"init", to_string(c.init_mode)},     {"seed", c.seed},
                {"tol", c.tol},                       {"max_iters", c.max_iters}};
}

EngineConfig config_from_json(const json& j) {
    EngineConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "filter") {
            c.filter_mode = filter_mode_from_string(value.get<std::string>());
        } else if (key == "k") {
            c.k = value.get<std::size_t>();
        } else if (key == "groups") {
            c.groups = value.get<std::size_t>();
        } else if (key == "lanes") {
            c.lanes = value.get<std::size_t>();
        } else if (key == "init") {
            c.init_mode = init_mode_from_string(value.get<std::string>());
        } else if (key == "seed") {
            c.seed = value.get<std::uint64_t>();
        } else if (key == "tol") {
            c.tol = value.get<double>();
        } else if (key == "max_iters") {
            c.max_iters = value.get<std::size_t>();
        } else {
            throw PlanError("unknown config key '" + key + "' in bench plan");
        }
    }
    if (c.k == 0) {
        throw PlanError("bench config is missing k");
    }
    return c;
}

CsvOptions csv_options_from_json(const json& j) {
    CsvOptions opt;
    for (const auto& [key, value] : j.items()) {
        if (key == "delimiter") {
            const auto s = value.get<std::string>();
            if (s.size() != 1) throw PlanError("csv delimiter must be one character");
            opt.delimiter = s[0];
        } else if (key == "skip_header") {
            opt.skip_header = value.get<bool>();
        } else if (key == "drop_columns") {
            for (const auto& c : value) opt.drop_columns.insert(c.get<std::size_t>());
        } else if (key == "na_policy") {
            const auto s = value.get<std::string>();
            if (s == "error") {
                opt.na_policy = NaPolicy::error;
            } else if (s == "drop_row") {
                opt.na_policy = NaPolicy::drop_row;
            } else {
                throw PlanError("unknown na_policy '" + s + "'");
            }
        } else {
            throw PlanError("unknown csv key '" + key + "' in bench plan");
        }
    }
    opt.validate();
    return opt;
}

} // namespace

bool BenchReport::all_exact() const {
    return std::all_of(cells.begin(), cells.end(), [](const BenchCell& c) { return c.exact; });
}

bool BenchReport::all_deterministic() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const BenchCell& c) { return c.counters_deterministic; });
}

void BenchPlan::validate() const {
    if (datasets.empty()) throw PlanError("bench plan has no datasets");
    if (configs.empty()) throw PlanError("bench plan has no configs");
    if (repeats < 1) throw PlanError("bench plan repeats must be >= 1");
    if (format != "json" && format != "csv" && format != "markdown") {
        throw PlanError("bench plan format must be json, csv or markdown (got '" + format + "')");
    }
    // Every filtered config needs its baseline pairing.
    for (const auto& dataset : datasets) {
        for (const auto& config : configs) {
            if (config.filter_mode == FilterMode::none) continue;
            const std::string key = config_key(dataset, config);
            const bool found = std::any_of(
                configs.begin(), configs.end(), [&](const EngineConfig& other) {
                    return other.filter_mode == FilterMode::none &&
                           config_key(dataset, other) == key;
                });
            if (!found) {
                throw PlanError(
                    "no filter=none baseline config matches (k=" + std::to_string(config.k) +
                    ", seed=" + std::to_string(config.seed) + ", init=" +
                    to_string(config.init_mode) + ") for dataset '" + dataset + "'");
            }
        }
    }
}

double work_efficiency(std::uint64_t filtered_distances, std::uint64_t baseline_distances) {
    if (baseline_distances == 0) {
        throw DomainError("work_efficiency requires a positive baseline distance count");
    }
    return 1.0 - static_cast<double>(filtered_distances) / static_cast<double>(baseline_distances);
}

BenchPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open plan '" + path + "' for reading");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("plan '" + path + "' is not valid JSON: " + e.what());
    }

    BenchPlan plan;
    for (const auto& [key, value] : j.items()) {
        if (key == "datasets") {
            for (const auto& item : value) plan.datasets.push_back(item.get<std::string>());
        } else if (key == "configs") {
            for (const auto& item : value) plan.configs.push_back(config_from_json(item));
        } else if (key == "csv") {
            plan.csv = csv_options_from_json(value);
        } else if (key == "repeats") {
            plan.repeats = value.get<std::size_t>();
        } else if (key == "output") {
            plan.output = value.get<std::string>();
        } else if (key == "format") {
            plan.format = value.get<std::string>();
        } else if (key == "concurrent_cells") {
            plan.concurrent_cells = value.get<bool>();
        } else {
            throw PlanError("unknown plan key '" + key + "'");
        }
    }
    plan.validate();
    return plan;
}

BenchReport run_bench(const BenchPlan& plan, const BenchOptions& options) {
    plan.validate();

    BenchReport report;
    report.rng_identity = Rng::identity();
    report.energy_note = kEnergyNote;
    report.concurrent_cells = plan.concurrent_cells;

    struct Job {
        std::size_t cell;
        std::size_t repeat;
    };
    std::vector<Job> jobs;
    std::vector<Dataset> datasets;
    datasets.reserve(plan.datasets.size());
    for (const auto& source : plan.datasets) {
        try {
            datasets.push_back(open_dataset(source, plan.csv));
        } catch (const Error& e) {
            throw Error(e.code(), "dataset '" + source + "': " + e.what());
        }
    }

    std::vector<Assignment> final_assignments;
    for (std::size_t ds = 0; ds < plan.datasets.size(); ++ds) {
        for (const auto& config : plan.configs) {
            BenchCell cell;
            cell.dataset = plan.datasets[ds];
            cell.n = datasets[ds].n;
            cell.d = datasets[ds].d;
            cell.config = config;
            cell.is_baseline = config.filter_mode == FilterMode::none;
            cell.repeats.resize(plan.repeats);
            for (std::size_t r = 0; r < plan.repeats; ++r) {
                jobs.push_back({report.cells.size(), r});
            }
            report.cells.push_back(std::move(cell));
        }
    }
    final_assignments.resize(report.cells.size());

    const auto dataset_of = [&](std::size_t cell_index) -> const Dataset& {
        return datasets[cell_index / plan.configs.size()];
    };

    const auto run_job = [&](const Job& job) {
        BenchCell& cell = report.cells[job.cell];
        const ClusterResult result = run_parallel(dataset_of(job.cell), cell.config);
        BenchRepeat rep;
        rep.iterations = result.iterations;
        rep.termination = result.termination;
        rep.wall_seconds = result.wall_seconds;
        rep.distance_computations = result.total_distance_computations();
        rep.point_filter_hits = result.total_point_filter_hits();
        rep.group_filter_skips = result.total_group_filter_skips();
        rep.grouping_distance_computations = result.grouping_distance_computations;
        rep.per_iteration = result.counters_per_iteration;
        rep.objective = result.objective;
        cell.repeats[job.repeat] = std::move(rep);
        if (job.repeat == 0) {
            final_assignments[job.cell] = result.assignment;
        }
    };

    if (plan.concurrent_cells) {
        // Counter-focused mode: wall times of concurrent cells contend for
        // cores and are not comparable.
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(jobs.size());
        const std::size_t workers =
            std::min<std::size_t>(jobs.size(),
                                  std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t j = next.fetch_add(1);
                    if (j >= jobs.size()) return;
                    try {
                        run_job(jobs[j]);
                    } catch (...) {
                        errors[j] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    } else {
        for (const auto& job : jobs) run_job(job);
    }

    if (options.corrupt_exactness) {
        for (std::size_t c = 0; c < report.cells.size(); ++c) {
            if (!report.cells[c].is_baseline && !final_assignments[c].empty()) {
                auto& label = final_assignments[c][0];
                label = label == 0 ? 1 : 0;
            }
        }
    }

    // Derive medians, determinism, exactness and baseline-paired ratios.
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        BenchCell& cell = report.cells[c];
        std::vector<double> walls;
        for (const auto& rep : cell.repeats) walls.push_back(rep.wall_seconds);
        cell.median_wall_seconds = median(walls);
        for (const auto& rep : cell.repeats) {
            if (rep.distance_computations != cell.repeats[0].distance_computations ||
                rep.point_filter_hits != cell.repeats[0].point_filter_hits ||
                rep.group_filter_skips != cell.repeats[0].group_filter_skips ||
                rep.iterations != cell.repeats[0].iterations) {
                cell.counters_deterministic = false;
            }
        }
    }

    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        BenchCell& cell = report.cells[c];
        if (cell.is_baseline) continue;
        const std::string key = config_key(cell.dataset, cell.config);
        const std::size_t ds = c / plan.configs.size();
        std::size_t base = report.cells.size();
        for (std::size_t other = ds * plan.configs.size();
             other < (ds + 1) * plan.configs.size(); ++other) {
            if (report.cells[other].is_baseline &&
                config_key(report.cells[other].dataset, report.cells[other].config) == key) {
                base = other;
                break;
            }
        }
        if (base == report.cells.size()) {
            throw PlanError("internal: baseline cell vanished for " + key);
        }
        const BenchCell& baseline = report.cells[base];

        cell.exact = final_assignments[c] == final_assignments[base];

        const auto& brep = baseline.repeats[0];
        const auto& frep = cell.repeats[0];
        cell.truncated_comparison = brep.iterations != frep.iterations;
        const std::size_t T = std::min(brep.iterations, frep.iterations);
        std::uint64_t base_dc = 0, filt_dc = 0;
        for (std::size_t t = 0; t < T; ++t) {
            base_dc += brep.per_iteration[t].distance_computations;
            filt_dc += frep.per_iteration[t].distance_computations;
        }
        cell.work_efficiency = work_efficiency(filt_dc, base_dc);
        cell.work_ratio = filt_dc > 0
                              ? static_cast<double>(base_dc) / static_cast<double>(filt_dc)
                              : std::numeric_limits<double>::infinity();
        cell.speedup_wall = cell.median_wall_seconds > 0.0
                                ? baseline.median_wall_seconds / cell.median_wall_seconds
                                : std::numeric_limits<double>::infinity();
    }

    if (!plan.output.empty()) {
        emit_report(report, plan.output, plan.format);
    }
    return report;
}

namespace {

json report_to_json(const BenchReport& report) {
    json cells = json::array();
    for (const auto& cell : report.cells) {
        json repeats = json::array();
        for (const auto& rep : cell.repeats) {
            json per_iter = json::array();
            for (const auto& c : rep.per_iteration) {
                per_iter.push_back({{"iteration", c.iteration},
                                    {"distance_computations", c.distance_computations},
                                    {"point_filter_hits", c.point_filter_hits},
                                    {"group_filter_skips", c.group_filter_skips}});
            }
            repeats.push_back({{"iterations", rep.iterations},
                               {"termination", to_string(rep.termination)},
                               {"wall_seconds", rep.wall_seconds},
                               {"distance_computations", rep.distance_computations},
                               {"point_filter_hits", rep.point_filter_hits},
                               {"group_filter_skips", rep.group_filter_skips},
                               {"grouping_distance_computations",
                                rep.grouping_distance_computations},
                               {"per_iteration", std::move(per_iter)},
                               {"objective", rep.objective},
                               {"energy_joules", nullptr}});
        }
        cells.push_back({{"dataset", cell.dataset},
                         {"n", cell.n},
                         {"d", cell.d},
                         {"config", config_to_json(cell.config)},
                         {"is_baseline", cell.is_baseline},
                         {"repeats", std::move(repeats)},
                         {"median_wall_seconds", cell.median_wall_seconds},
                         {"exactness", cell.exact},
                         {"counters_deterministic", cell.counters_deterministic},
                         {"work_efficiency", cell.work_efficiency},
                         {"work_ratio", cell.work_ratio},
                         {"speedup_wall", cell.speedup_wall},
                         {"truncated_comparison", cell.truncated_comparison}});
    }

    // Aggregate speedups over filtered cells, both ways: the right mean for a
    // ratio is debatable, so report both.
    double wall_sum = 0.0, wall_log_sum = 0.0, work_sum = 0.0, work_log_sum = 0.0;
    std::size_t filtered_count = 0;
    for (const auto& cell : report.cells) {
        if (cell.is_baseline) continue;
        ++filtered_count;
        wall_sum += cell.speedup_wall;
        wall_log_sum += std::log(cell.speedup_wall);
        work_sum += cell.work_ratio;
        work_log_sum += std::log(cell.work_ratio);
    }
    json aggregates;
    if (filtered_count > 0) {
        const auto fc = static_cast<double>(filtered_count);
        aggregates = {{"speedup_wall",
                       {{"arithmetic_mean", wall_sum / fc},
                        {"geometric_mean", std::exp(wall_log_sum / fc)}}},
                      {"work_ratio",
                       {{"arithmetic_mean", work_sum / fc},
                        {"geometric_mean", std::exp(work_log_sum / fc)}}}};
    } else {
        aggregates = json::object();
    }

    return json{{"schema_version", report.schema_version},
                {"rng", report.rng_identity},
                {"energy_note", report.energy_note},
                {"concurrent_cells", report.concurrent_cells},
                {"cells", std::move(cells)},
                {"aggregates", std::move(aggregates)}};
}

std::string double_cell(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string json_to_csv(const json& j) {
    std::ostringstream os;
    os << "dataset,n,d,filter,k,groups,lanes,init,seed,tol,max_iters,repeat,iterations,"
          "termination,wall_seconds,distance_computations,point_filter_hits,"
          "group_filter_skips,objective,exactness,work_efficiency,work_ratio,speedup_wall\n";
    for (const auto& cell : j.at("cells")) {
        const auto& cfg = cell.at("config");
        std::size_t repeat = 0;
        for (const auto& rep : cell.at("repeats")) {
            os << cell.at("dataset").get<std::string>() << ',' << cell.at("n") << ','
               << cell.at("d") << ',' << cfg.at("filter").get<std::string>() << ','
               << cfg.at("k") << ',' << cfg.at("groups") << ',' << cfg.at("lanes") << ','
               << cfg.at("init").get<std::string>() << ',' << cfg.at("seed") << ','
               << cfg.at("tol").get<double>() << ',' << cfg.at("max_iters") << ',' << repeat
               << ',' << rep.at("iterations") << ','
               << rep.at("termination").get<std::string>() << ','
               << double_cell(rep.at("wall_seconds").get<double>()) << ','
               << rep.at("distance_computations") << ',' << rep.at("point_filter_hits") << ','
               << rep.at("group_filter_skips") << ','
               << double_cell(rep.at("objective").get<double>()) << ','
               << (cell.at("exactness").get<bool>() ? "true" : "false") << ','
               << double_cell(cell.at("work_efficiency").get<double>()) << ','
               << double_cell(cell.at("work_ratio").get<double>()) << ','
               << double_cell(cell.at("speedup_wall").get<double>()) << '\n';
            ++repeat;
        }
    }
    return os.str();
}

std::string json_to_markdown(const json& j) {
    std::ostringstream os;
    os << "| dataset | filter | k | G | lanes | init | seed | iters | median wall s | "
          "distances | work eff | work ratio | speedup | exact |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& cell : j.at("cells")) {
        const auto& cfg = cell.at("config");
        const auto& rep0 = cell.at("repeats").empty() ? json(nullptr) : cell.at("repeats")[0];
        os << "| " << cell.at("dataset").get<std::string>() << " | "
           << cfg.at("filter").get<std::string>() << " | " << cfg.at("k") << " | "
           << cfg.at("groups") << " | " << cfg.at("lanes") << " | "
           << cfg.at("init").get<std::string>() << " | " << cfg.at("seed") << " | "
           << (rep0.is_null() ? json(0) : rep0.at("iterations")) << " | "
           << double_cell(cell.at("median_wall_seconds").get<double>()) << " | "
           << (rep0.is_null() ? json(0) : rep0.at("distance_computations")) << " | "
           << double_cell(cell.at("work_efficiency").get<double>()) << " | "
           << double_cell(cell.at("work_ratio").get<double>()) << " | "
           << double_cell(cell.at("speedup_wall").get<double>()) << " | "
           << (cell.at("exactness").get<bool>() ? "true" : "false") << " |\n";
    }
    if (!j.at("aggregates").empty()) {
        const auto& agg = j.at("aggregates");
        os << "\nspeedup_wall mean: arithmetic "
           << double_cell(agg.at("speedup_wall").at("arithmetic_mean").get<double>())
           << ", geometric "
           << double_cell(agg.at("speedup_wall").at("geometric_mean").get<double>())
           << "\nwork_ratio mean: arithmetic "
           << double_cell(agg.at("work_ratio").at("arithmetic_mean").get<double>())
           << ", geometric "
           << double_cell(agg.at("work_ratio").at("geometric_mean").get<double>()) << "\n";
    }
    return os.str();
}

} // namespace

std::string report_to_json_text(const BenchReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string render_report_text(const std::string& json_text, const std::string& format) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != 1) {
        throw ParseError("unsupported report schema_version (expected 1)");
    }
    if (format == "json") return j.dump(2) + "\n";
    if (format == "csv") return json_to_csv(j);
    if (format == "markdown") return json_to_markdown(j);
    throw ConfigError("unknown report format '" + format + "' (expected json|csv|markdown)");
}

void emit_report(const BenchReport& report, const std::string& path, const std::string& format) {
    const std::string text = render_report_text(report_to_json_text(report), format);
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

} // namespace tikm
