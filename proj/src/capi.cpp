#include "tikm/tikm.h"

#include <iostream>
#include <fstream>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "io.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace {

thread_local std::string g_last_error;

tikm_status to_status(tikm::ErrorCode code) {
    using tikm::ErrorCode;
    switch (code) {
        case ErrorCode::config: return TIKM_ERR_CONFIG;
        case ErrorCode::dimension: return TIKM_ERR_DIMENSION;
        case ErrorCode::empty_set: return TIKM_ERR_EMPTY_SET;
        case ErrorCode::parse: return TIKM_ERR_PARSE;
        case ErrorCode::io: return TIKM_ERR_IO;
        case ErrorCode::state: return TIKM_ERR_STATE;
        case ErrorCode::domain: return TIKM_ERR_DOMAIN;
        case ErrorCode::plan: return TIKM_ERR_PLAN;
        case ErrorCode::internal: return TIKM_ERR_INTERNAL;
    }
    return TIKM_ERR_INTERNAL;
}

// Runs fn, translating C++ errors into status codes + the thread-local
// message.
template <typename Fn>
tikm_status guarded(Fn&& fn) {
    try {
        fn();
        return TIKM_OK;
    } catch (const tikm::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TIKM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return TIKM_ERR_INTERNAL;
    }
}

tikm_status arg_error(const char* message) {
    g_last_error = message;
    return TIKM_ERR_CONFIG;
}

tikm::CsvOptions convert_csv_options(const tikm_csv_options* options) {
    tikm::CsvOptions opt;
    if (options == nullptr) return opt;
    opt.delimiter = options->delimiter;
    opt.skip_header = options->skip_header != 0;
    for (size_t i = 0; i < options->drop_column_count; ++i) {
        if (options->drop_columns[i] < 0) {
            throw tikm::ConfigError("drop_columns indices must be >= 0");
        }
        opt.drop_columns.insert(static_cast<std::size_t>(options->drop_columns[i]));
    }
    opt.na_policy =
        options->na_policy == TIKM_NA_DROP_ROW ? tikm::NaPolicy::drop_row : tikm::NaPolicy::error;
    return opt;
}

tikm::EngineConfig convert_config(const tikm_config* config) {
    if (config->k < 1) throw tikm::ConfigError("config.k must be >= 1");
    if (config->groups < 0) throw tikm::ConfigError("config.groups must be >= 0");
    if (config->lanes < 1) throw tikm::ConfigError("config.lanes must be >= 1");
    if (config->max_iters < 0) throw tikm::ConfigError("config.max_iters must be >= 0");
    tikm::EngineConfig c;
    c.k = static_cast<std::size_t>(config->k);
    c.groups = static_cast<std::size_t>(config->groups);
    c.lanes = static_cast<std::size_t>(config->lanes);
    c.max_iters = static_cast<std::size_t>(config->max_iters);
    c.tol = config->tol;
    c.seed = config->seed;
    switch (config->filter_mode) {
        case TIKM_FILTER_NONE: c.filter_mode = tikm::FilterMode::none; break;
        case TIKM_FILTER_POINT: c.filter_mode = tikm::FilterMode::point; break;
        case TIKM_FILTER_GROUP: c.filter_mode = tikm::FilterMode::point_group; break;
        default: throw tikm::ConfigError("invalid filter_mode");
    }
    switch (config->init_mode) {
        case TIKM_INIT_RANDOM: c.init_mode = tikm::InitMode::random; break;
        case TIKM_INIT_KMEANSPP: c.init_mode = tikm::InitMode::kmeanspp; break;
        default: throw tikm::ConfigError("invalid init_mode");
    }
    return c;
}

} // namespace

struct tikm_dataset {
    tikm::Dataset data;
    tikm::Assignment blob_labels; // empty unless generated
};

struct tikm_result {
    tikm::ClusterResult result;
};

extern "C" {

const char* tikm_version(void) { return "1.0.0"; }

const char* tikm_rng_identity(void) { return tikm::Rng::identity(); }

const char* tikm_status_name(tikm_status status) {
    switch (status) {
        case TIKM_OK: return "ok";
        case TIKM_ERR_CONFIG: return "config_error";
        case TIKM_ERR_DIMENSION: return "dimension_error";
        case TIKM_ERR_EMPTY_SET: return "empty_set_error";
        case TIKM_ERR_PARSE: return "parse_error";
        case TIKM_ERR_IO: return "io_error";
        case TIKM_ERR_STATE: return "state_error";
        case TIKM_ERR_DOMAIN: return "domain_error";
        case TIKM_ERR_PLAN: return "plan_error";
        case TIKM_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* tikm_last_error(void) { return g_last_error.c_str(); }

void tikm_csv_options_init(tikm_csv_options* options) {
    if (options == nullptr) return;
    options->delimiter = ',';
    options->skip_header = 0;
    options->drop_columns = nullptr;
    options->drop_column_count = 0;
    options->na_policy = TIKM_NA_ERROR;
}

void tikm_blob_spec_init(tikm_blob_spec* spec) {
    if (spec == nullptr) return;
    spec->n = 0;
    spec->d = 0;
    spec->k_true = 1;
    spec->spread = 1.0;
    spec->separation = 10.0;
    spec->seed = 0;
}

tikm_status tikm_dataset_from_buffer(const double* data, int64_t n, int64_t d,
                                     tikm_dataset** out) {
    if (data == nullptr || out == nullptr) return arg_error("null argument");
    if (n < 1 || d < 1) return arg_error("dataset requires n >= 1 and d >= 1");
    return guarded([&] {
        std::vector<double> values(data, data + static_cast<size_t>(n) * static_cast<size_t>(d));
        auto* handle = new tikm_dataset{
            tikm::Dataset(static_cast<std::size_t>(n), static_cast<std::size_t>(d),
                          std::move(values)),
            {}};
        *out = handle;
    });
}

tikm_status tikm_dataset_open(const char* source, const tikm_csv_options* options,
                              tikm_dataset** out) {
    if (source == nullptr || out == nullptr) return arg_error("null argument");
    return guarded([&] {
        if (tikm::is_blob_source(source)) {
            auto [data, labels] = tikm::gen_blobs(tikm::parse_blob_spec(source));
            *out = new tikm_dataset{std::move(data), std::move(labels)};
        } else {
            *out = new tikm_dataset{tikm::load_csv(source, convert_csv_options(options)), {}};
        }
    });
}

tikm_status tikm_dataset_gen_blobs(const tikm_blob_spec* spec, tikm_dataset** out) {
    if (spec == nullptr || out == nullptr) return arg_error("null argument");
    return guarded([&] {
        if (spec->n < 1 || spec->d < 1 || spec->k_true < 1) {
            throw tikm::ConfigError("blob spec requires n, d, k_true >= 1");
        }
        tikm::BlobSpec bs;
        bs.n = static_cast<std::size_t>(spec->n);
        bs.d = static_cast<std::size_t>(spec->d);
        bs.k_true = static_cast<std::size_t>(spec->k_true);
        bs.spread = spec->spread;
        bs.separation = spec->separation;
        bs.seed = spec->seed;
        auto [data, labels] = tikm::gen_blobs(bs);
        *out = new tikm_dataset{std::move(data), std::move(labels)};
    });
}

void tikm_dataset_destroy(tikm_dataset* dataset) { delete dataset; }

int64_t tikm_dataset_rows(const tikm_dataset* dataset) {
    return dataset == nullptr ? 0 : static_cast<int64_t>(dataset->data.n);
}

int64_t tikm_dataset_cols(const tikm_dataset* dataset) {
    return dataset == nullptr ? 0 : static_cast<int64_t>(dataset->data.d);
}

const double* tikm_dataset_values(const tikm_dataset* dataset) {
    return dataset == nullptr ? nullptr : dataset->data.data.data();
}

const int32_t* tikm_dataset_blob_labels(const tikm_dataset* dataset) {
    if (dataset == nullptr || dataset->blob_labels.empty()) return nullptr;
    return dataset->blob_labels.data();
}

tikm_status tikm_dataset_stats(const tikm_dataset* dataset, double* min_out, double* max_out,
                               double* mean_out) {
    if (dataset == nullptr) return arg_error("null dataset");
    return guarded([&] {
        const tikm::DatasetStats stats = tikm::dataset_stats(dataset->data);
        for (std::size_t j = 0; j < stats.d; ++j) {
            if (min_out != nullptr) min_out[j] = stats.min[j];
            if (max_out != nullptr) max_out[j] = stats.max[j];
            if (mean_out != nullptr) mean_out[j] = stats.mean[j];
        }
    });
}

tikm_status tikm_dataset_normalize(tikm_dataset* dataset) {
    if (dataset == nullptr) return arg_error("null dataset");
    return guarded([&] { tikm::minmax_normalize(dataset->data); });
}

tikm_status tikm_dataset_write_csv(const tikm_dataset* dataset, const char* path) {
    if (dataset == nullptr || path == nullptr) return arg_error("null argument");
    return guarded([&] { tikm::write_csv(dataset->data, path); });
}

tikm_status tikm_dataset_write_blob_labels(const tikm_dataset* dataset, const char* path) {
    if (dataset == nullptr || path == nullptr) return arg_error("null argument");
    return guarded([&] {
        if (dataset->blob_labels.empty()) {
            throw tikm::StateError("dataset has no generating labels");
        }
        tikm::write_labels(dataset->blob_labels, path);
    });
}

void tikm_config_init(tikm_config* config) {
    if (config == nullptr) return;
    config->k = 0;
    config->groups = 0;
    config->lanes = 1;
    config->max_iters = 100;
    config->tol = 1e-9;
    config->seed = 0;
    config->filter_mode = TIKM_FILTER_GROUP;
    config->init_mode = TIKM_INIT_KMEANSPP;
}

tikm_status tikm_run(const tikm_dataset* dataset, const tikm_config* config,
                     tikm_result** out) {
    if (dataset == nullptr || config == nullptr || out == nullptr) {
        return arg_error("null argument");
    }
    return guarded([&] {
        const tikm::EngineConfig c = convert_config(config);
        *out = new tikm_result{tikm::run_parallel(dataset->data, c)};
    });
}

void tikm_result_destroy(tikm_result* result) { delete result; }

int64_t tikm_result_iterations(const tikm_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->result.iterations);
}

tikm_termination tikm_result_termination(const tikm_result* result) {
    if (result == nullptr) return TIKM_TERM_MAX_ITERS;
    switch (result->result.termination) {
        case tikm::Termination::stable: return TIKM_TERM_STABLE;
        case tikm::Termination::tol: return TIKM_TERM_TOL;
        case tikm::Termination::max_iters: return TIKM_TERM_MAX_ITERS;
    }
    return TIKM_TERM_MAX_ITERS;
}

double tikm_result_wall_seconds(const tikm_result* result) {
    return result == nullptr ? 0.0 : result->result.wall_seconds;
}

double tikm_result_objective(const tikm_result* result) {
    return result == nullptr ? 0.0 : result->result.objective;
}

const int32_t* tikm_result_labels(const tikm_result* result) {
    return result == nullptr ? nullptr : result->result.assignment.data();
}

int64_t tikm_result_label_count(const tikm_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->result.assignment.size());
}

const double* tikm_result_centroids(const tikm_result* result) {
    return result == nullptr ? nullptr : result->result.centroids.centers.data();
}

int64_t tikm_result_k(const tikm_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->result.centroids.k);
}

int64_t tikm_result_dim(const tikm_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->result.centroids.d);
}

tikm_status tikm_result_counters_total(const tikm_result* result, tikm_counters* out) {
    if (result == nullptr || out == nullptr) return arg_error("null argument");
    out->distance_computations = result->result.total_distance_computations();
    out->point_filter_hits = result->result.total_point_filter_hits();
    out->group_filter_skips = result->result.total_group_filter_skips();
    return TIKM_OK;
}

tikm_status tikm_result_counters_at(const tikm_result* result, int64_t iteration,
                                    tikm_counters* out) {
    if (result == nullptr || out == nullptr) return arg_error("null argument");
    if (iteration < 1 ||
        iteration > static_cast<int64_t>(result->result.counters_per_iteration.size())) {
        g_last_error = "iteration out of range";
        return TIKM_ERR_STATE;
    }
    const auto& c = result->result.counters_per_iteration[static_cast<std::size_t>(iteration - 1)];
    out->distance_computations = c.distance_computations;
    out->point_filter_hits = c.point_filter_hits;
    out->group_filter_skips = c.group_filter_skips;
    return TIKM_OK;
}

uint64_t tikm_result_grouping_distance_computations(const tikm_result* result) {
    return result == nullptr ? 0 : result->result.grouping_distance_computations;
}

tikm_status tikm_result_write_assignment(const tikm_result* result, const char* path) {
    if (result == nullptr || path == nullptr) return arg_error("null argument");
    return guarded([&] { tikm::write_labels(result->result.assignment, path); });
}

tikm_status tikm_result_write_centroids(const tikm_result* result, const char* path) {
    if (result == nullptr || path == nullptr) return arg_error("null argument");
    return guarded([&] {
        const auto& cs = result->result.centroids;
        tikm::write_csv(tikm::Dataset(cs.k, cs.d, cs.centers), path);
    });
}

tikm_status tikm_bench_run_file(const char* plan_path, const char* output, const char* format,
                                int corrupt_exactness, int* exactness_ok_out) {
    if (plan_path == nullptr) return arg_error("null plan path");
    return guarded([&] {
        tikm::BenchPlan plan = tikm::load_plan(plan_path);
        if (output != nullptr) plan.output = output;
        if (format != nullptr) plan.format = format;
        plan.validate();
        tikm::BenchOptions options;
        options.corrupt_exactness = corrupt_exactness != 0;
        const tikm::BenchReport report = tikm::run_bench(plan, options);
        if (exactness_ok_out != nullptr) {
            *exactness_ok_out = report.all_exact() && report.all_deterministic() ? 1 : 0;
        }
    });
}

tikm_status tikm_report_render(const char* report_path, const char* out_path,
                               const char* format) {
    if (report_path == nullptr || format == nullptr) return arg_error("null argument");
    return guarded([&] {
        std::ifstream in(report_path);
        if (!in) {
            throw tikm::IoError(std::string("cannot open '") + report_path + "' for reading");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const std::string rendered = tikm::render_report_text(buffer.str(), format);
        if (out_path == nullptr) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                throw tikm::IoError(std::string("cannot open '") + out_path + "' for writing");
            }
            out << rendered;
        }
    });
}

} // extern "C"
