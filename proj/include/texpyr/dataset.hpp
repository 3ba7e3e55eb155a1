#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <texpyr/errors.hpp>

namespace texpyr {

struct CorpusItem {
    std::filesystem::path path;
    std::string label;
    std::string id;  // "<label>/<filename>"
};

struct LabeledCorpus {
    std::vector<CorpusItem> items;
    std::vector<std::string> classes;  // sorted
};

/// Scans root/<class_name>/*.png|jpg|jpeg into a corpus with deterministic
/// lexicographic ordering. Hidden and non-image files are skipped.
LabeledCorpus scan_corpus(const std::filesystem::path& root);

/// Index partition of a labeled sequence; train and test are sorted and
/// disjoint, and together cover every index.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified shuffle split: per class, round(ratio * n) items go to train
/// (clamped so both sides stay nonempty). Reproducible for equal seeds,
/// across platforms. ratio must lie strictly between 0 and 1 and every
/// class needs at least 2 items.
SplitIndices stratified_split(const std::vector<std::string>& labels,
                              double ratio, std::uint64_t seed);

struct SplitCorpus {
    std::vector<CorpusItem> train;
    std::vector<CorpusItem> test;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

SplitCorpus split(const LabeledCorpus& corpus, double ratio, std::uint64_t seed);

/// Per-dimension min and max fitted on training vectors only.
struct MinMaxStats {
    std::vector<double> min;
    std::vector<double> max;

    std::size_t dims() const { return min.size(); }
};

MinMaxStats fit_minmax(const std::vector<std::vector<double>>& train_vectors);

/// (v - min) / (max - min) per dimension; a constant training column maps to
/// 0. Values outside the training range are not clipped.
std::vector<double> apply_minmax(std::span<const double> v, const MinMaxStats& stats);

/// In-memory feature CSV: header `source_id,label,<columns...>`, one row per
/// image.
struct FeatureTable {
    std::vector<std::string> columns;
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;

    std::size_t size() const { return rows.size(); }
};

/// Values are written in shortest round-trip decimal form (UTF-8, LF).
void write_features_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_features_csv(const std::filesystem::path& path);

void write_stats_csv(const std::filesystem::path& path, const MinMaxStats& stats,
                     const std::vector<std::string>& columns);
MinMaxStats read_stats_csv(const std::filesystem::path& path);

/// Shortest decimal form of a double that parses back to the same bits.
std::string format_double(double v);

} // namespace texpyr
