// Command-line driver for the tikm shared library. Everything of substance
// happens behind the C API; this file parses flags, forwards them, and
// renders summaries.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tikm/tikm.h"

namespace {

int exit_code_for(tikm_status status) {
    switch (status) {
        case TIKM_OK:
            return 0;
        case TIKM_ERR_CONFIG:
        case TIKM_ERR_DIMENSION:
        case TIKM_ERR_PARSE:
        case TIKM_ERR_IO:
        case TIKM_ERR_DOMAIN:
        case TIKM_ERR_PLAN:
            return 2; // bad input or configuration
        case TIKM_ERR_EMPTY_SET:
        case TIKM_ERR_STATE:
        case TIKM_ERR_INTERNAL:
            return 1; // internal invariant violation
    }
    return 1;
}

int fail(tikm_status status) {
    std::fprintf(stderr, "error (%s): %s\n", tikm_status_name(status), tikm_last_error());
    return exit_code_for(status);
}

struct CsvFlags {
    std::string delimiter = ",";
    bool skip_header = false;
    std::vector<std::int64_t> drop_columns;
    std::string na_policy = "error";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--csv-delimiter", delimiter, "CSV cell delimiter")
            ->option_text("CHAR")
            ->group("CSV input");
        cmd->add_flag("--csv-skip-header", skip_header, "Skip the first line of the file")
            ->group("CSV input");
        cmd->add_option("--csv-drop-cols", drop_columns,
                        "0-based raw column indices to drop (e.g. label columns)")
            ->group("CSV input");
        cmd->add_option("--csv-na", na_policy, "Non-numeric cell policy: error|drop")
            ->check(CLI::IsMember({"error", "drop"}))
            ->group("CSV input");
    }

    bool fill(tikm_csv_options& options) const {
        tikm_csv_options_init(&options);
        if (delimiter.size() != 1) {
            std::fprintf(stderr, "error: --csv-delimiter must be one character\n");
            return false;
        }
        options.delimiter = delimiter[0];
        options.skip_header = skip_header ? 1 : 0;
        options.drop_columns = drop_columns.empty() ? nullptr : drop_columns.data();
        options.drop_column_count = drop_columns.size();
        options.na_policy = na_policy == "drop" ? TIKM_NA_DROP_ROW : TIKM_NA_ERROR;
        return true;
    }
};

struct RunFlags {
    std::string data;
    std::int64_t k = 0;
    std::int64_t groups = 0;
    std::string filter = "group";
    std::int64_t lanes = 1;
    std::string init = "kmeanspp";
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::int64_t max_iters = 100;
    std::string out;
    bool normalize = false;
    CsvFlags csv;
};

int cmd_run(const RunFlags& flags) {
    tikm_csv_options csv_options;
    if (!flags.csv.fill(csv_options)) return 2;

    tikm_dataset* dataset = nullptr;
    tikm_status status = tikm_dataset_open(flags.data.c_str(), &csv_options, &dataset);
    if (status != TIKM_OK) return fail(status);

    if (flags.normalize) {
        status = tikm_dataset_normalize(dataset);
        if (status != TIKM_OK) {
            tikm_dataset_destroy(dataset);
            return fail(status);
        }
    }

    tikm_config config;
    tikm_config_init(&config);
    config.k = flags.k;
    config.groups = flags.groups;
    config.lanes = flags.lanes;
    config.max_iters = flags.max_iters;
    config.tol = flags.tol;
    config.seed = flags.seed;
    config.filter_mode = flags.filter == "none"    ? TIKM_FILTER_NONE
                         : flags.filter == "point" ? TIKM_FILTER_POINT
                                                   : TIKM_FILTER_GROUP;
    config.init_mode = flags.init == "random" ? TIKM_INIT_RANDOM : TIKM_INIT_KMEANSPP;

    tikm_result* result = nullptr;
    status = tikm_run(dataset, &config, &result);
    if (status != TIKM_OK) {
        tikm_dataset_destroy(dataset);
        return fail(status);
    }

    const std::int64_t n = tikm_dataset_rows(dataset);
    const std::int64_t d = tikm_dataset_cols(dataset);
    const std::int64_t shown_groups = flags.filter != "group" ? 1
                                      : flags.groups > 0      ? flags.groups
                                                              : (flags.k + 9) / 10;
    const std::int64_t iters = tikm_result_iterations(result);
    tikm_counters totals;
    tikm_result_counters_total(result, &totals);
    const std::uint64_t unfiltered =
        static_cast<std::uint64_t>(iters) * static_cast<std::uint64_t>(n) *
        static_cast<std::uint64_t>(flags.k);
    const char* term = "max_iters";
    switch (tikm_result_termination(result)) {
        case TIKM_TERM_STABLE: term = "stable"; break;
        case TIKM_TERM_TOL: term = "tol"; break;
        case TIKM_TERM_MAX_ITERS: term = "max_iters"; break;
    }

    std::printf("dataset: %s (n=%" PRId64 ", d=%" PRId64 ")\n", flags.data.c_str(), n, d);
    std::printf("engine: filter=%s k=%" PRId64 " groups=%" PRId64
                " lanes=%" PRId64 " init=%s seed=%" PRIu64 " tol=%g max_iters=%" PRId64 "\n",
                flags.filter.c_str(), flags.k, shown_groups, flags.lanes, flags.init.c_str(),
                flags.seed, flags.tol, flags.max_iters);
    std::printf("iterations: %" PRId64 " (%s)\n", iters, term);
    std::printf("objective: %.6f\n", tikm_result_objective(result));
    std::printf("distance computations: %" PRIu64 " (unfiltered would be %" PRIu64
                ", work efficiency %.4f)\n",
                totals.distance_computations, unfiltered,
                unfiltered > 0
                    ? 1.0 - static_cast<double>(totals.distance_computations) /
                                static_cast<double>(unfiltered)
                    : 0.0);
    std::printf("filter hits: point=%" PRIu64 ", group skips=%" PRIu64
                " (grouping cost %" PRIu64 " distances)\n",
                totals.point_filter_hits, totals.group_filter_skips,
                tikm_result_grouping_distance_computations(result));
    std::printf("wall time: %.6f s\n", tikm_result_wall_seconds(result));

    int code = 0;
    if (!flags.out.empty()) {
        const std::string assign_path = flags.out + ".assign.txt";
        const std::string centroid_path = flags.out + ".centroids.csv";
        status = tikm_result_write_assignment(result, assign_path.c_str());
        if (status == TIKM_OK) {
            status = tikm_result_write_centroids(result, centroid_path.c_str());
        }
        if (status != TIKM_OK) {
            code = fail(status);
        } else {
            std::printf("wrote %s and %s\n", assign_path.c_str(), centroid_path.c_str());
        }
    }

    tikm_result_destroy(result);
    tikm_dataset_destroy(dataset);
    return code;
}

struct BenchFlags {
    std::string plan;
    std::string out;
    std::string format;
    bool corrupt = false;
};

int cmd_bench(const BenchFlags& flags) {
    int exact_ok = 0;
    const tikm_status status = tikm_bench_run_file(
        flags.plan.c_str(), flags.out.empty() ? nullptr : flags.out.c_str(),
        flags.format.empty() ? nullptr : flags.format.c_str(), flags.corrupt ? 1 : 0,
        &exact_ok);
    if (status != TIKM_OK) return fail(status);
    if (exact_ok == 0) {
        std::fprintf(stderr,
                     "error: exactness check failed; a filtered run diverged from its "
                     "baseline (see report)\n");
        return 3;
    }
    std::printf("bench complete; all exactness checks passed\n");
    return 0;
}

struct GenFlags {
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::int64_t k_true = 1;
    double spread = 1.0;
    double separation = 10.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string labels_out;
};

int cmd_gen(const GenFlags& flags) {
    tikm_blob_spec spec;
    tikm_blob_spec_init(&spec);
    spec.n = flags.n;
    spec.d = flags.d;
    spec.k_true = flags.k_true;
    spec.spread = flags.spread;
    spec.separation = flags.separation;
    spec.seed = flags.seed;

    tikm_dataset* dataset = nullptr;
    tikm_status status = tikm_dataset_gen_blobs(&spec, &dataset);
    if (status != TIKM_OK) return fail(status);

    status = tikm_dataset_write_csv(dataset, flags.out.c_str());
    if (status == TIKM_OK && !flags.labels_out.empty()) {
        status = tikm_dataset_write_blob_labels(dataset, flags.labels_out.c_str());
    }
    tikm_dataset_destroy(dataset);
    if (status != TIKM_OK) return fail(status);
    std::printf("wrote %s (n=%" PRId64 ", d=%" PRId64 ")\n", flags.out.c_str(), flags.n,
                flags.d);
    return 0;
}

struct ReportFlags {
    std::string report;
    std::string format = "markdown";
    std::string out;
};

int cmd_report(const ReportFlags& flags) {
    const tikm_status status = tikm_report_render(
        flags.report.c_str(), flags.out.empty() ? nullptr : flags.out.c_str(),
        flags.format.c_str());
    if (status != TIKM_OK) return fail(status);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tikm: exact K-means with multi-level triangle-inequality filtering"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(tikm_version()); });

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Cluster one dataset and print a summary");
    run->add_option("--data", run_flags.data,
                    "CSV path or inline spec blobs:n=..,d=..,k_true=..,spread=..,separation=..,seed=..")
        ->required();
    run->add_option("--k", run_flags.k, "Cluster count")
        ->required()
        ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
    run->add_option("--groups", run_flags.groups,
                    "Centroid group count G (default 0 = ceil(k/10))")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--filter", run_flags.filter, "Filter mode (default group)")
        ->check(CLI::IsMember({"none", "point", "group"}));
    run->add_option("--lanes", run_flags.lanes, "Parallel lane count P (default 1)")
        ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
    run->add_option("--init", run_flags.init, "Initializer (default kmeanspp)")
        ->check(CLI::IsMember({"random", "kmeanspp"}));
    run->add_option("--seed", run_flags.seed, "RNG seed (default 0)");
    run->add_option("--tol", run_flags.tol, "Drift convergence tolerance (default 1e-9)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--max-iters", run_flags.max_iters, "Iteration cap (default 100)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--out", run_flags.out,
                    "Output stem; writes <out>.assign.txt and <out>.centroids.csv");
    run->add_flag("--normalize", run_flags.normalize, "Min-max scale features to [0,1] first");
    run_flags.csv.add_to(run);

    BenchFlags bench_flags;
    auto* bench = app.add_subcommand("bench", "Execute a benchmark plan file");
    bench->add_option("--plan", bench_flags.plan, "JSON plan path")->required();
    bench->add_option("--out", bench_flags.out, "Override the plan's output path");
    bench->add_option("--format", bench_flags.format, "Override the plan's report format")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    bench->add_flag("--test-corrupt-exactness", bench_flags.corrupt,
                    "Test hook: corrupt filtered results to exercise the failure exit path")
        ->group("");

    GenFlags gen_flags;
    auto* gen = app.add_subcommand("gen", "Generate a Gaussian blob dataset CSV");
    const auto positive =
        CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max());
    gen->add_option("--n", gen_flags.n, "Point count")->required()->check(positive);
    gen->add_option("--d", gen_flags.d, "Dimension")->required()->check(positive);
    gen->add_option("--k-true", gen_flags.k_true, "Blob count (default 1)")->check(positive);
    gen->add_option("--spread", gen_flags.spread, "Within-blob standard deviation (default 1)");
    gen->add_option("--separation", gen_flags.separation, "Inter-center scale (default 10)");
    gen->add_option("--seed", gen_flags.seed, "RNG seed (default 0)");
    gen->add_option("--out", gen_flags.out, "Output CSV path")->required();
    gen->add_option("--labels-out", gen_flags.labels_out, "Optional true-label sidecar path");

    ReportFlags report_flags;
    auto* report = app.add_subcommand("report", "Render a JSON report as markdown or CSV");
    report->add_option("--report", report_flags.report, "Report JSON path")->required();
    report->add_option("--format", report_flags.format, "Rendering (default markdown)")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    report->add_option("--out", report_flags.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    if (run->parsed()) return cmd_run(run_flags);
    if (bench->parsed()) return cmd_bench(bench_flags);
    if (gen->parsed()) return cmd_gen(gen_flags);
    if (report->parsed()) return cmd_report(report_flags);
    return 2;
}
