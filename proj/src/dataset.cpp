#include <texpyr/dataset.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <system_error>

namespace texpyr {

namespace {

bool has_image_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Uniform draw from [0, bound) by masked rejection; stable across platforms,
// unlike std::uniform_int_distribution.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        const std::uint64_t v = rng() & mask;
        if (v < bound) return v;
    }
}

void fisher_yates(std::vector<std::size_t>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::string& context) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw SchemaMismatch(context + ": cannot parse '" + field + "' as a number");
    }
    return value;
}

void check_no_comma(const std::string& s, const char* what) {
    if (s.find(',') != std::string::npos) {
        throw InvalidArgument(std::string(what) + " must not contain commas: '" + s + "'");
    }
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw InvalidArgument("format_double: value does not fit buffer");
    }
    return std::string(buf, ptr);
}

LabeledCorpus scan_corpus(const std::filesystem::path& root) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec) || ec) {
        throw UnreadableDirectory("scan_corpus: not a readable directory: " +
                                  root.string());
    }

    std::vector<std::string> classes;
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (name.empty() || name[0] == '.') continue;
        classes.push_back(name);
    }
    std::sort(classes.begin(), classes.end());

    LabeledCorpus corpus;
    for (const std::string& label : classes) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(root / label)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (name.empty() || name[0] == '.') continue;
            if (!has_image_extension(entry.path())) continue;
            files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) continue;

        corpus.classes.push_back(label);
        for (const auto& file : files) {
            corpus.items.push_back(
                CorpusItem{file, label, label + "/" + file.filename().string()});
        }
    }

    if (corpus.items.empty()) {
        throw EmptyCorpus("scan_corpus: no class directories with images under " +
                          root.string());
    }
    return corpus;
}

SplitIndices stratified_split(const std::vector<std::string>& labels,
                              double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw InvalidArgument("stratified_split: ratio must lie strictly in (0, 1)");
    }
    if (labels.empty()) {
        throw EmptySet("stratified_split: no labels");
    }

    // map keeps class iteration order deterministic (sorted by label).
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(i);
    }

    std::mt19937_64 rng(seed);
    SplitIndices out;
    for (auto& [label, indices] : by_class) {
        const std::size_t n = indices.size();
        if (n < 2) {
            throw ClassTooSmall("stratified_split: class '" + label +
                                "' has fewer than 2 items");
        }
        auto train_c = static_cast<std::size_t>(
            std::llround(ratio * static_cast<double>(n)));
        train_c = std::clamp<std::size_t>(train_c, 1, n - 1);

        fisher_yates(indices, rng);
        out.train.insert(out.train.end(), indices.begin(), indices.begin() + train_c);
        out.test.insert(out.test.end(), indices.begin() + train_c, indices.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

SplitCorpus split(const LabeledCorpus& corpus, double ratio, std::uint64_t seed) {
    std::vector<std::string> labels;
    labels.reserve(corpus.items.size());
    for (const CorpusItem& item : corpus.items) labels.push_back(item.label);

    const SplitIndices idx = stratified_split(labels, ratio, seed);
    SplitCorpus out;
    out.seed = seed;
    out.ratio = ratio;
    for (std::size_t i : idx.train) out.train.push_back(corpus.items[i]);
    for (std::size_t i : idx.test) out.test.push_back(corpus.items[i]);
    return out;
}

MinMaxStats fit_minmax(const std::vector<std::vector<double>>& train_vectors) {
    if (train_vectors.empty()) {
        throw EmptySet("fit_minmax: no training vectors");
    }
    const std::size_t dims = train_vectors.front().size();
    MinMaxStats stats;
    stats.min = train_vectors.front();
    stats.max = train_vectors.front();
    for (const auto& v : train_vectors) {
        if (v.size() != dims) {
            throw SchemaMismatch("fit_minmax: vectors have inconsistent dimensions");
        }
        for (std::size_t d = 0; d < dims; ++d) {
            stats.min[d] = std::min(stats.min[d], v[d]);
            stats.max[d] = std::max(stats.max[d], v[d]);
        }
    }
    return stats;
}

std::vector<double> apply_minmax(std::span<const double> v, const MinMaxStats& stats) {
    if (v.size() != stats.dims()) {
        throw DimensionMismatch("apply_minmax: vector has " + std::to_string(v.size()) +
                                " dims, stats have " + std::to_string(stats.dims()));
    }
    std::vector<double> out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) {
        const double range = stats.max[d] - stats.min[d];
        out[d] = range > 0.0 ? (v[d] - stats.min[d]) / range : 0.0;
    }
    return out;
}

void write_features_csv(const std::filesystem::path& path, const FeatureTable& table) {
    if (table.ids.size() != table.rows.size() || table.labels.size() != table.rows.size()) {
        throw InvalidArgument("write_features_csv: ids, labels and rows must align");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw UnreadableDirectory("write_features_csv: cannot open " + path.string());
    }

    out << "source_id,label";
    for (const std::string& c : table.columns) {
        check_no_comma(c, "column name");
        out << ',' << c;
    }
    out << '\n';

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.columns.size()) {
            throw SchemaMismatch("write_features_csv: row " + std::to_string(r) +
                                 " has " + std::to_string(table.rows[r].size()) +
                                 " values, expected " + std::to_string(table.columns.size()));
        }
        check_no_comma(table.ids[r], "source_id");
        check_no_comma(table.labels[r], "label");
        out << table.ids[r] << ',' << table.labels[r];
        for (double v : table.rows[r]) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
    if (!out) {
        throw UnreadableDirectory("write_features_csv: short write to " + path.string());
    }
}

FeatureTable read_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableDirectory("read_features_csv: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("read_features_csv: " + path.string() + " is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "source_id" || header[1] != "label") {
        throw SchemaMismatch("read_features_csv: header must start with "
                             "'source_id,label,' in " + path.string());
    }

    FeatureTable table;
    table.columns.assign(header.begin() + 2, header.end());

    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw SchemaMismatch("read_features_csv: row " + std::to_string(row_no) +
                                 " has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(header.size()));
        }
        table.ids.push_back(fields[0]);
        table.labels.push_back(fields[1]);
        std::vector<double> row;
        row.reserve(fields.size() - 2);
        for (std::size_t i = 2; i < fields.size(); ++i) {
            row.push_back(parse_double(fields[i],
                                       "read_features_csv row " + std::to_string(row_no)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_stats_csv(const std::filesystem::path& path, const MinMaxStats& stats,
                     const std::vector<std::string>& columns) {
    if (columns.size() != stats.dims()) {
        throw SchemaMismatch("write_stats_csv: " + std::to_string(columns.size()) +
                             " column names for " + std::to_string(stats.dims()) +
                             " dimensions");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw UnreadableDirectory("write_stats_csv: cannot open " + path.string());
    }
    out << "dim_name,min,max\n";
    for (std::size_t d = 0; d < stats.dims(); ++d) {
        check_no_comma(columns[d], "column name");
        out << columns[d] << ',' << format_double(stats.min[d]) << ','
            << format_double(stats.max[d]) << '\n';
    }
    if (!out) {
        throw UnreadableDirectory("write_stats_csv: short write to " + path.string());
    }
}

MinMaxStats read_stats_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableDirectory("read_stats_csv: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("read_stats_csv: " + path.string() + " is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "dim_name,min,max") {
        throw SchemaMismatch("read_stats_csv: unexpected header '" + line + "'");
    }

    MinMaxStats stats;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw SchemaMismatch("read_stats_csv: row " + std::to_string(row_no) +
                                 " has " + std::to_string(fields.size()) + " fields");
        }
        const std::string ctx = "read_stats_csv row " + std::to_string(row_no);
        stats.min.push_back(parse_double(fields[1], ctx));
        stats.max.push_back(parse_double(fields[2], ctx));
    }
    if (stats.min.empty()) {
        throw SchemaMismatch("read_stats_csv: no rows in " + path.string());
    }
    return stats;
}

} // namespace texpyr
