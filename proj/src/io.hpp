#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "types.hpp"

namespace tikm {

enum class NaPolicy { error, drop_row };

struct CsvOptions {
    char delimiter = ',';
    bool skip_header = false;
    std::set<std::size_t> drop_columns; // 0-based indices in the raw file
    NaPolicy na_policy = NaPolicy::error;

    void validate() const;
};

// Parses nonempty lines into d real features after dropping configured
// columns. Rows must agree on d; parse failures name the 1-based physical
// line (and column where it applies). Scientific notation is accepted.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

// Full-precision writer; load_csv(write_csv(ds)) reproduces values exactly.
void write_csv(const Dataset& dataset, const std::string& path);

// One label per line.
void write_labels(const Assignment& labels, const std::string& path);

struct BlobSpec {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t k_true = 1;
    double spread = 1.0;      // within-blob standard deviation
    double separation = 10.0; // inter-center scale
    std::uint64_t seed = 0;

    void validate() const;
};

// Gaussian blobs: k_true centers drawn as separation-scaled normal vectors,
// points drawn around them with the given spread, labels assigned round-robin
// so blob sizes differ by at most one. Deterministic given seed.
std::pair<Dataset, Assignment> gen_blobs(const BlobSpec& spec);

// "blobs:n=100,d=2,k_true=3,spread=1,separation=10,seed=1"
BlobSpec parse_blob_spec(const std::string& spec_text);

bool is_blob_source(const std::string& source);

// Accepts either a CSV path or an inline "blobs:..." spec.
Dataset open_dataset(const std::string& source, const CsvOptions& options = {});

} // namespace tikm
