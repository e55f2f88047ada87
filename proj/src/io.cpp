#include "io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"

namespace tikm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_cell(std::string_view cell) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

} // namespace

void CsvOptions::validate() const {
    if (std::isdigit(static_cast<unsigned char>(delimiter)) || delimiter == '-' ||
        delimiter == '.') {
        throw ConfigError(std::string("csv delimiter may not be a digit, '-' or '.': got '") +
                          delimiter + "'");
    }
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    options.validate();
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }

    std::vector<double> values;
    std::size_t d = 0;
    std::size_t n = 0;
    std::string line;
    std::size_t line_no = 0;
    bool header_skipped = !options.skip_header;
    std::vector<double> row;

    while (std::getline(in, line)) {
        ++line_no;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        if (trim(line).empty()) continue;

        row.clear();
        bool drop_this_row = false;
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(options.delimiter, start);
            const std::string_view cell(line.data() + start, (pos == std::string::npos ? line.size() : pos) - start);
            if (options.drop_columns.count(col) == 0) {
                const auto value = parse_cell(cell);
                if (!value) {
                    if (options.na_policy == NaPolicy::error) {
                        throw ParseError("non-numeric value at line " + std::to_string(line_no) +
                                         ", column " + std::to_string(col + 1) + " of '" + path + "'");
                    }
                    drop_this_row = true;
                } else {
                    row.push_back(*value);
                }
            }
            ++col;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }

        if (n == 0 && !drop_this_row) {
            d = row.size();
            if (d == 0) {
                throw ParseError("line " + std::to_string(line_no) + " of '" + path +
                                 "' has no feature columns after dropping");
            }
        }
        if (!drop_this_row && d != 0 && row.size() != d) {
            throw ParseError("ragged row at line " + std::to_string(line_no) + " of '" + path +
                             "': got " + std::to_string(row.size()) + " columns, expected " +
                             std::to_string(d));
        }
        if (drop_this_row) continue;
        values.insert(values.end(), row.begin(), row.end());
        ++n;
    }

    if (n == 0) {
        throw ParseError("'" + path + "' contains no data rows");
    }
    return Dataset(n, d, std::move(values));
}

void write_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    char buf[64];
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < dataset.d; ++j) {
            const auto res = std::to_chars(buf, buf + sizeof(buf), row[j]);
            if (j > 0) out.put(',');
            out.write(buf, res.ptr - buf);
        }
        out.put('\n');
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void write_labels(const Assignment& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    for (const auto label : labels) {
        out << label << '\n';
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void BlobSpec::validate() const {
    if (k_true < 1 || n < k_true) {
        throw ConfigError("blob spec requires n >= k_true >= 1 (n=" + std::to_string(n) +
                          ", k_true=" + std::to_string(k_true) + ")");
    }
    if (d < 1) {
        throw ConfigError("blob spec requires d >= 1");
    }
    if (!(spread >= 0.0) || !std::isfinite(spread)) {
        throw ConfigError("blob spread must be finite and >= 0");
    }
    if (!(separation >= 0.0) || !std::isfinite(separation)) {
        throw ConfigError("blob separation must be finite and >= 0");
    }
}

std::pair<Dataset, Assignment> gen_blobs(const BlobSpec& spec) {
    spec.validate();
    Rng center_rng(derive_seed(spec.seed, 0));
    Rng point_rng(derive_seed(spec.seed, 1));

    std::vector<double> centers(spec.k_true * spec.d);
    for (auto& v : centers) v = spec.separation * center_rng.next_normal();

    std::vector<double> values(spec.n * spec.d);
    Assignment labels(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t blob = i % spec.k_true;
        labels[i] = static_cast<std::int32_t>(blob);
        const double* center = centers.data() + blob * spec.d;
        double* row = values.data() + i * spec.d;
        for (std::size_t j = 0; j < spec.d; ++j) {
            row[j] = center[j] + spec.spread * point_rng.next_normal();
        }
    }
    return {Dataset(spec.n, spec.d, std::move(values)), std::move(labels)};
}

namespace {

// stoull accepts a leading minus and wraps; sizes and seeds must be plain
// decimal digits.
std::uint64_t parse_unsigned_field(const std::string& key, const std::string& value) {
    if (value.empty() ||
        value.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("invalid value '" + value + "' for blob spec key '" + key + "'");
    }
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw ParseError("invalid value '" + value + "' for blob spec key '" + key + "'");
    }
}

} // namespace

BlobSpec parse_blob_spec(const std::string& spec_text) {
    const std::string prefix = "blobs:";
    if (spec_text.rfind(prefix, 0) != 0) {
        throw ParseError("blob spec must start with 'blobs:': got '" + spec_text + "'");
    }
    BlobSpec spec;
    std::string body = spec_text.substr(prefix.size());
    std::size_t start = 0;
    bool saw_n = false, saw_d = false;
    while (start <= body.size() && !body.empty()) {
        const std::size_t pos = body.find(',', start);
        const std::string item =
            body.substr(start, (pos == std::string::npos ? body.size() : pos) - start);
        if (!item.empty()) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) {
                throw ParseError("blob spec item '" + item + "' is not key=value");
            }
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            if (key == "n") {
                spec.n = parse_unsigned_field(key, value);
                saw_n = true;
            } else if (key == "d") {
                spec.d = parse_unsigned_field(key, value);
                saw_d = true;
            } else if (key == "k_true") {
                spec.k_true = parse_unsigned_field(key, value);
            } else if (key == "seed") {
                spec.seed = parse_unsigned_field(key, value);
            } else if (key == "spread" || key == "separation") {
                const auto parsed = parse_cell(value);
                if (!parsed) {
                    throw ParseError("invalid value '" + value + "' for blob spec key '" +
                                     key + "'");
                }
                (key == "spread" ? spec.spread : spec.separation) = *parsed;
            } else {
                throw ParseError("unknown blob spec key '" + key + "'");
            }
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (!saw_n || !saw_d) {
        throw ParseError("blob spec must set at least n and d: '" + spec_text + "'");
    }
    spec.validate();
    return spec;
}

bool is_blob_source(const std::string& source) {
    return source.rfind("blobs:", 0) == 0;
}

Dataset open_dataset(const std::string& source, const CsvOptions& options) {
    if (is_blob_source(source)) {
        return gen_blobs(parse_blob_spec(source)).first;
    }
    return load_csv(source, options);
}

} // namespace tikm
