#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <texpyr/classify.hpp>
#include <texpyr/codec.hpp>
#include <texpyr/dataset.hpp>
#include <texpyr/pipeline.hpp>
#include <texpyr/pyramid.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUnusable = 2;

std::uint64_t seed_fallback() {
    if (const char* env = std::getenv("TEXPYR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric TEXPYR_SEED='" << env << "'\n";
        }
    }
    return 42;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void append_manifest(const fs::path& path, const json& entry) {
    std::ofstream out(path, std::ios::app);
    if (!out) {
        std::cerr << "warning: cannot append manifest " << path << "\n";
        return;
    }
    out << entry.dump() << "\n";
}

std::string sanitize_id(const std::string& id) {
    std::string out = id;
    for (char& c : out) {
        if (c == '/' || c == '\\') c = '_';
    }
    return out;
}

// ---- column subsets -------------------------------------------------------

std::vector<std::size_t> subset_columns(const std::vector<std::string>& columns,
                                        const std::string& subset) {
    std::vector<std::size_t> keep;
    if (subset == "tio") {
        keep.resize(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i) keep[i] = i;
        return keep;
    }
    const std::string prefix = subset + "_";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].rfind(prefix, 0) == 0) keep.push_back(i);
    }
    if (keep.empty()) {
        throw texpyr::SchemaMismatch("no '" + subset + "' columns in the feature table");
    }
    return keep;
}

std::vector<double> take(const std::vector<double>& row,
                         const std::vector<std::size_t>& cols) {
    std::vector<double> out;
    out.reserve(cols.size());
    for (std::size_t c : cols) out.push_back(row[c]);
    return out;
}

// ---- shared train/eval core ----------------------------------------------

struct RunParams {
    std::string subset = "tio";
    std::string classifier = "lda";
    double ratio = 0.7;
    std::uint64_t seed = 42;
    double shrinkage = 0.01;
    int knn_k = 1;
};

struct RunOutcome {
    texpyr::EvalReport report;
    std::size_t dims = 0;
    std::size_t train_count = 0;
    std::size_t test_count = 0;
};

RunOutcome run_once(const texpyr::FeatureTable& table, const RunParams& p,
                    texpyr::LdaModel* model_out = nullptr) {
    const std::vector<std::size_t> cols = subset_columns(table.columns, p.subset);
    const texpyr::SplitIndices idx =
        texpyr::stratified_split(table.labels, p.ratio, p.seed);

    std::vector<std::vector<double>> train_x, test_x;
    std::vector<std::string> train_y, test_y;
    for (std::size_t i : idx.train) {
        train_x.push_back(take(table.rows[i], cols));
        train_y.push_back(table.labels[i]);
    }
    for (std::size_t i : idx.test) {
        test_x.push_back(take(table.rows[i], cols));
        test_y.push_back(table.labels[i]);
    }

    const texpyr::MinMaxStats stats = texpyr::fit_minmax(train_x);
    for (auto& v : train_x) v = texpyr::apply_minmax(v, stats);
    for (auto& v : test_x) v = texpyr::apply_minmax(v, stats);

    RunOutcome out;
    out.dims = cols.size();
    out.train_count = train_x.size();
    out.test_count = test_x.size();

    if (p.classifier == "lda") {
        const texpyr::LdaModel model = texpyr::lda_fit(train_x, train_y, p.shrinkage);
        out.report = texpyr::evaluate(model, test_x, test_y);
        if (model_out) *model_out = model;
    } else {
        std::vector<std::string> predicted;
        predicted.reserve(test_x.size());
        for (const auto& v : test_x) {
            predicted.push_back(texpyr::knn_predict(train_x, train_y, v, p.knn_k));
        }
        std::vector<std::string> classes(train_y);
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        out.report = texpyr::make_report(test_y, predicted, classes);
    }
    out.report.seed = p.seed;
    out.report.ratio = p.ratio;
    return out;
}

json report_to_json(const RunOutcome& out, const RunParams& p) {
    json j;
    j["subset"] = p.subset;
    j["classifier"] = p.classifier;
    j["ratio"] = p.ratio;
    j["seed"] = p.seed;
    j["shrinkage"] = p.shrinkage;
    if (p.classifier == "knn") j["knn_k"] = p.knn_k;
    j["dims"] = out.dims;
    j["train_count"] = out.train_count;
    j["test_count"] = out.test_count;
    j["accuracy"] = out.report.accuracy;
    j["classes"] = out.report.class_labels;
    j["precision"] = out.report.precision;
    j["recall"] = out.report.recall;
    j["confusion"] = out.report.confusion;
    return j;
}

std::string pct(double v) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << 100.0 * v;
    return ss.str();
}

void print_report(const RunOutcome& out, const RunParams& p, bool verbose) {
    std::cout << "| descriptor | classifier | accuracy (%) |\n";
    std::cout << "|---|---|---|\n";
    std::cout << "| " << p.subset << " | " << p.classifier << " | "
              << pct(out.report.accuracy) << " |\n";
    std::cout << "dims=" << out.dims << " train=" << out.train_count
              << " test=" << out.test_count << " seed=" << p.seed
              << " ratio=" << p.ratio;
    if (p.classifier == "lda") std::cout << " shrinkage=" << p.shrinkage;
    if (p.classifier == "knn") std::cout << " k=" << p.knn_k;
    std::cout << "\n";
    if (verbose) {
        std::cout << "per-class (precision / recall):\n";
        for (std::size_t c = 0; c < out.report.class_labels.size(); ++c) {
            std::cout << "  " << out.report.class_labels[c] << ": "
                      << pct(out.report.precision[c]) << " / "
                      << pct(out.report.recall[c]) << "\n";
        }
        std::cout << "confusion (rows = actual):\n";
        for (const auto& row : out.report.confusion) {
            std::cout << " ";
            for (int v : row) std::cout << " " << v;
            std::cout << "\n";
        }
    }
}

// ---- extract ---------------------------------------------------------------

struct ExtractArgs {
    std::string corpus_root;
    std::string out = "features.csv";
    int levels = 3;
    int glcm_levels = 8;
    int distance = 1;
    unsigned jobs = 0;
    std::string dump_pyramid;
};

void dump_pyramid_pngs(const texpyr::RasterImage& img, const texpyr::ExtractionConfig& cfg,
                       const fs::path& dir, const std::string& id) {
    const auto channels = texpyr::split_channels(img);
    std::array<std::vector<texpyr::FloatImage>, 3> gp;
    for (int c = 0; c < 3; ++c) {
        gp[c] = texpyr::build_gaussian_pyramid(texpyr::to_float(channels[c]), cfg.pyramid_levels);
    }
    for (int l = 0; l < cfg.pyramid_levels; ++l) {
        const texpyr::RasterImage level = texpyr::merge_channels(
            texpyr::to_gray8(gp[0][l]), texpyr::to_gray8(gp[1][l]),
            texpyr::to_gray8(gp[2][l]));
        texpyr::save_png(dir / (sanitize_id(id) + "_L" + std::to_string(l) + ".png"),
                         level);
    }
}

int run_extract(const ExtractArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();

    texpyr::ExtractionConfig config;
    config.pyramid_levels = args.levels;
    config.glcm_levels = args.glcm_levels;
    config.glcm_distance = args.distance;

    const texpyr::LabeledCorpus corpus = texpyr::scan_corpus(args.corpus_root);
    const texpyr::FeatureSchema schema = texpyr::FeatureSchema::make(config);

    if (!args.dump_pyramid.empty()) {
        fs::create_directories(args.dump_pyramid);
    }

    struct Slot {
        std::optional<texpyr::FeatureVector> fv;
        std::string error;
    };
    std::vector<Slot> slots(corpus.items.size());
    std::atomic<std::size_t> cursor{0};

    unsigned jobs = args.jobs;
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(corpus.items.size()));

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= corpus.items.size()) return;
            const texpyr::CorpusItem& item = corpus.items[i];
            try {
                const texpyr::RasterImage img = texpyr::load_image(item.path);
                slots[i].fv = texpyr::extract_tio(img, config, item.id);
                if (!args.dump_pyramid.empty()) {
                    dump_pyramid_pngs(img, config, args.dump_pyramid, item.id);
                }
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    texpyr::FeatureTable table;
    table.columns = schema.column_names();
    json failures = json::array();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].fv) {
            table.ids.push_back(corpus.items[i].id);
            table.labels.push_back(corpus.items[i].label);
            table.rows.push_back(std::move(slots[i].fv->values));
        } else {
            failures.push_back({{"id", corpus.items[i].id}, {"error", slots[i].error}});
            std::cerr << "error: " << corpus.items[i].id << ": " << slots[i].error << "\n";
        }
    }

    if (table.rows.empty()) {
        std::cerr << "error: no image could be processed\n";
        return kExitUnusable;
    }

    texpyr::write_features_csv(args.out, table);
    {
        std::ofstream schema_out(args.out + ".schema.txt", std::ios::trunc);
        schema_out << schema.to_text();
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    json manifest = {
        {"utc", utc_now()},
        {"command", "extract"},
        {"config",
         {{"levels", args.levels},
          {"glcm_levels", args.glcm_levels},
          {"distance", args.distance},
          {"jobs", jobs}}},
        {"schema_version", config.schema_version},
        {"inputs", {args.corpus_root}},
        {"outputs", {args.out, args.out + ".schema.txt"}},
        {"rows", table.rows.size()},
        {"dims", schema.total_dims()},
        {"failures", failures},
        {"elapsed_ms", elapsed},
    };
    append_manifest(args.out + ".manifest.jsonl", manifest);

    std::cout << "wrote " << table.rows.size() << " rows x " << schema.total_dims()
              << " dims to " << args.out;
    if (!failures.empty()) std::cout << " (" << failures.size() << " failures)";
    std::cout << " in " << elapsed << " ms\n";

    return failures.empty() ? kExitOk : kExitPartial;
}

// ---- split -----------------------------------------------------------------

struct SplitArgs {
    std::string features;
    std::string out_prefix = "split";
    double ratio = 0.7;
    std::uint64_t seed = 42;
};

int run_split(const SplitArgs& args) {
    const texpyr::FeatureTable table = texpyr::read_features_csv(args.features);
    const texpyr::SplitIndices idx =
        texpyr::stratified_split(table.labels, args.ratio, args.seed);

    texpyr::FeatureTable train, test;
    train.columns = table.columns;
    test.columns = table.columns;
    for (std::size_t i : idx.train) {
        train.ids.push_back(table.ids[i]);
        train.labels.push_back(table.labels[i]);
        train.rows.push_back(table.rows[i]);
    }
    for (std::size_t i : idx.test) {
        test.ids.push_back(table.ids[i]);
        test.labels.push_back(table.labels[i]);
        test.rows.push_back(table.rows[i]);
    }

    const texpyr::MinMaxStats stats = texpyr::fit_minmax(train.rows);

    const std::string train_path = args.out_prefix + "_train.csv";
    const std::string test_path = args.out_prefix + "_test.csv";
    const std::string stats_path = args.out_prefix + "_stats.csv";
    texpyr::write_features_csv(train_path, train);
    texpyr::write_features_csv(test_path, test);
    texpyr::write_stats_csv(stats_path, stats, table.columns);

    json manifest = {
        {"utc", utc_now()},
        {"command", "split"},
        {"config", {{"ratio", args.ratio}, {"seed", args.seed}}},
        {"inputs", {args.features}},
        {"outputs", {train_path, test_path, stats_path}},
        {"train_rows", train.rows.size()},
        {"test_rows", test.rows.size()},
    };
    append_manifest(args.out_prefix + ".manifest.jsonl", manifest);

    std::cout << "train " << train.rows.size() << " rows -> " << train_path << "\n";
    std::cout << "test  " << test.rows.size() << " rows -> " << test_path << "\n";
    std::cout << "stats (fit on train only) -> " << stats_path << "\n";
    return kExitOk;
}

// ---- train-eval --------------------------------------------------------------

struct TrainEvalArgs {
    std::string features;
    RunParams params;
    std::string out;        // JSON report
    std::string model_out;  // LDA coefficient dump
    bool verbose = false;
};

int run_train_eval(const TrainEvalArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const texpyr::FeatureTable table = texpyr::read_features_csv(args.features);

    texpyr::LdaModel model;
    const RunOutcome out = run_once(table, args.params,
                                    args.params.classifier == "lda" ? &model : nullptr);

    print_report(out, args.params, args.verbose);

    if (!args.out.empty()) {
        std::ofstream f(args.out, std::ios::trunc);
        if (!f) {
            std::cerr << "error: cannot write " << args.out << "\n";
            return kExitUnusable;
        }
        f << report_to_json(out, args.params).dump(2) << "\n";
    }
    if (!args.model_out.empty() && args.params.classifier == "lda") {
        texpyr::save_lda(args.model_out, model);
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    json manifest = {
        {"utc", utc_now()},
        {"command", "train-eval"},
        {"config",
         {{"subset", args.params.subset},
          {"classifier", args.params.classifier},
          {"ratio", args.params.ratio},
          {"seed", args.params.seed},
          {"shrinkage", args.params.shrinkage},
          {"knn_k", args.params.knn_k}}},
        {"inputs", {args.features}},
        {"accuracy", out.report.accuracy},
        {"elapsed_ms", elapsed},
    };
    if (!args.out.empty()) manifest["outputs"].push_back(args.out);
    if (!args.model_out.empty()) manifest["outputs"].push_back(args.model_out);
    append_manifest(args.features + ".manifest.jsonl", manifest);
    return kExitOk;
}

// ---- ablate ------------------------------------------------------------------

struct AblateArgs {
    std::string features;
    std::vector<std::string> classifiers = {"lda", "knn"};
    double ratio = 0.7;
    std::uint64_t seed = 42;
    int runs = 1;
    double shrinkage = 0.01;
    int knn_k = 1;
    std::string out;      // markdown
    std::string csv_out;  // CSV
};

int run_ablate(const AblateArgs& args) {
    const texpyr::FeatureTable table = texpyr::read_features_csv(args.features);
    const std::vector<std::string> subsets = {"tio", "bit", "glcm", "haralick", "info"};

    std::ostringstream md, csv;
    md << "| descriptor | dims |";
    csv << "descriptor,dims";
    for (const std::string& c : args.classifiers) {
        md << " " << c << " (%) |";
        csv << "," << c;
    }
    md << "\n|---|---|";
    for (std::size_t i = 0; i < args.classifiers.size(); ++i) md << "---|";
    md << "\n";
    csv << "\n";

    for (const std::string& subset : subsets) {
        std::size_t dims = 0;
        md << "| " << subset << " | ";
        csv << subset;
        std::ostringstream row_md, row_csv;
        for (const std::string& classifier : args.classifiers) {
            double acc_sum = 0.0;
            for (int r = 0; r < args.runs; ++r) {
                RunParams p;
                p.subset = subset;
                p.classifier = classifier;
                p.ratio = args.ratio;
                p.seed = args.seed + static_cast<std::uint64_t>(r);
                p.shrinkage = args.shrinkage;
                p.knn_k = args.knn_k;
                const RunOutcome out = run_once(table, p);
                acc_sum += out.report.accuracy;
                dims = out.dims;
            }
            const double mean = acc_sum / args.runs;
            row_md << " " << pct(mean) << " |";
            row_csv << "," << texpyr::format_double(100.0 * mean);
        }
        md << dims << " |" << row_md.str() << "\n";
        csv << "," << dims << row_csv.str() << "\n";
    }

    std::cout << md.str();
    if (!args.out.empty()) {
        std::ofstream f(args.out, std::ios::trunc);
        f << md.str();
    }
    if (!args.csv_out.empty()) {
        std::ofstream f(args.csv_out, std::ios::trunc);
        f << csv.str();
    }

    json manifest = {
        {"utc", utc_now()},
        {"command", "ablate"},
        {"config",
         {{"classifiers", args.classifiers},
          {"ratio", args.ratio},
          {"seed", args.seed},
          {"runs", args.runs},
          {"shrinkage", args.shrinkage},
          {"knn_k", args.knn_k}}},
        {"inputs", {args.features}},
    };
    append_manifest(args.features + ".manifest.jsonl", manifest);
    return kExitOk;
}

// ---- report ------------------------------------------------------------------

struct ReportArgs {
    std::vector<std::string> files;
    bool details = false;
};

int run_report(const ReportArgs& args) {
    // descriptor x classifier grid with mean accuracy over the loaded reports.
    std::map<std::string, std::map<std::string, std::pair<double, int>>> grid;
    std::vector<std::string> classifiers;

    std::vector<json> loaded;
    for (const std::string& file : args.files) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << "\n";
            return kExitUnusable;
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            std::cerr << "error: " << file << ": " << e.what() << "\n";
            return kExitUnusable;
        }
        if (!j.contains("subset") || !j.contains("classifier") || !j.contains("accuracy")) {
            std::cerr << "error: " << file << ": not a train-eval report\n";
            return kExitUnusable;
        }
        const std::string classifier = j["classifier"];
        auto& cell = grid[j["subset"]][classifier];
        cell.first += j["accuracy"].get<double>();
        cell.second += 1;
        if (std::find(classifiers.begin(), classifiers.end(), classifier) ==
            classifiers.end()) {
            classifiers.push_back(classifier);
        }
        loaded.push_back(std::move(j));
    }

    std::cout << "| descriptor |";
    for (const std::string& c : classifiers) std::cout << " " << c << " (%) |";
    std::cout << "\n|---|";
    for (std::size_t i = 0; i < classifiers.size(); ++i) std::cout << "---|";
    std::cout << "\n";
    for (const auto& [subset, row] : grid) {
        std::cout << "| " << subset << " |";
        for (const std::string& c : classifiers) {
            const auto it = row.find(c);
            if (it == row.end()) {
                std::cout << " - |";
            } else {
                std::cout << " " << pct(it->second.first / it->second.second) << " |";
            }
        }
        std::cout << "\n";
    }

    if (args.details) {
        for (const json& j : loaded) {
            std::cout << "\n" << j["subset"].get<std::string>() << " / "
                      << j["classifier"].get<std::string>() << " seed="
                      << j["seed"] << " accuracy=" << pct(j["accuracy"].get<double>())
                      << "%\n";
            if (j.contains("classes") && j.contains("confusion")) {
                const auto classes = j["classes"].get<std::vector<std::string>>();
                const auto conf = j["confusion"].get<std::vector<std::vector<int>>>();
                for (std::size_t r = 0; r < conf.size(); ++r) {
                    std::cout << "  " << classes[r] << ":";
                    for (int v : conf[r]) std::cout << " " << v;
                    std::cout << "\n";
                }
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiresolution texture descriptors with classical classifiers"};
    app.require_subcommand(1);
    // CLI11 reads config files on the root app only, so keys carry the
    // subcommand name (train-eval.seed=7 or an [train-eval] section).
    // Subcommands fall through so --config may follow the subcommand too.
    app.set_config("--config", "",
                   "key=value config file, keys scoped as <subcommand>.<flag>; "
                   "explicit flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    const std::uint64_t default_seed = seed_fallback();

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand(
        "extract", "Extract feature vectors from a class-per-directory corpus");
    extract->fallthrough();
    extract->add_option("corpus", extract_args.corpus_root, "Corpus root directory")
        ->required();
    extract->add_option("--out", extract_args.out, "Output feature CSV path")
        ->capture_default_str();
    extract->add_option("--levels", extract_args.levels, "Pyramid levels")
        ->capture_default_str()
        ->check(CLI::Range(1, 16));
    extract->add_option("--glcm-levels", extract_args.glcm_levels,
                        "Gray levels for co-occurrence counting")
        ->capture_default_str()
        ->check(CLI::Range(2, 256));
    extract->add_option("--distance", extract_args.distance,
                        "Co-occurrence pixel distance")
        ->capture_default_str()
        ->check(CLI::Range(1, 64));
    extract->add_option("--jobs", extract_args.jobs,
                        "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    extract->add_option("--dump-pyramid", extract_args.dump_pyramid,
                        "Directory for per-level RGB PNG dumps");

    SplitArgs split_args;
    split_args.seed = default_seed;
    CLI::App* split = app.add_subcommand(
        "split", "Write stratified train/test CSVs plus train-only min-max stats");
    split->fallthrough();
    split->add_option("features", split_args.features, "Feature CSV")->required();
    split->add_option("--out-prefix", split_args.out_prefix, "Output path prefix")
        ->capture_default_str();
    split->add_option("--ratio", split_args.ratio, "Train fraction (0, 1)")
        ->capture_default_str();
    split->add_option("--seed", split_args.seed, "Shuffle seed")->capture_default_str();

    TrainEvalArgs te_args;
    te_args.params.seed = default_seed;
    CLI::App* te = app.add_subcommand(
        "train-eval", "Split, normalize, fit a classifier and report test accuracy");
    te->fallthrough();
    te->add_option("features", te_args.features, "Feature CSV")->required();
    te->add_option("--ratio", te_args.params.ratio, "Train fraction (0, 1)")
        ->capture_default_str();
    te->add_option("--seed", te_args.params.seed, "Split seed")->capture_default_str();
    te->add_option("--shrinkage", te_args.params.shrinkage,
                   "Covariance shrinkage in [0, 1]")
        ->capture_default_str();
    te->add_option("--classifier", te_args.params.classifier, "Classifier")
        ->capture_default_str()
        ->check(CLI::IsMember({"lda", "knn"}));
    te->add_option("--descriptor-subset", te_args.params.subset, "Feature family")
        ->capture_default_str()
        ->check(CLI::IsMember({"tio", "bit", "glcm", "haralick", "info"}));
    te->add_option("--knn-k", te_args.params.knn_k, "Neighbours for knn")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 20));
    te->add_option("--out", te_args.out, "Machine-readable JSON report path");
    te->add_option("--model-out", te_args.model_out, "LDA coefficient dump path");
    te->add_flag("--verbose", te_args.verbose, "Print per-class metrics and confusion");

    AblateArgs ab_args;
    ab_args.seed = default_seed;
    CLI::App* ab = app.add_subcommand(
        "ablate", "Accuracy table over descriptor subsets x classifiers");
    ab->fallthrough();
    ab->add_option("features", ab_args.features, "Feature CSV")->required();
    ab->add_option("--classifier", ab_args.classifiers,
                   "Classifiers to run (repeatable or comma-separated)")
        ->capture_default_str()
        ->delimiter(',')
        ->check(CLI::IsMember({"lda", "knn"}));
    ab->add_option("--ratio", ab_args.ratio, "Train fraction (0, 1)")
        ->capture_default_str();
    ab->add_option("--seed", ab_args.seed, "First split seed")->capture_default_str();
    ab->add_option("--runs", ab_args.runs, "Consecutive seeds to average over")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    ab->add_option("--shrinkage", ab_args.shrinkage, "Covariance shrinkage")
        ->capture_default_str();
    ab->add_option("--knn-k", ab_args.knn_k, "Neighbours for knn")
        ->capture_default_str();
    ab->add_option("--out", ab_args.out, "Markdown table path");
    ab->add_option("--csv-out", ab_args.csv_out, "CSV table path");

    ReportArgs rep_args;
    CLI::App* rep = app.add_subcommand(
        "report", "Render train-eval JSON reports as a descriptor x classifier table");
    rep->fallthrough();
    rep->add_option("reports", rep_args.files, "JSON report files")->required();
    rep->add_flag("--details", rep_args.details, "Also print per-report confusion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ConfigError& e) {
        app.exit(e);
        std::cerr << "hint: config keys are scoped per subcommand, "
                     "e.g. train-eval.seed=7 or an [train-eval] section\n";
        return kExitUnusable;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUnusable;
    }

    try {
        if (extract->parsed()) return run_extract(extract_args);
        if (split->parsed()) return run_split(split_args);
        if (te->parsed()) return run_train_eval(te_args);
        if (ab->parsed()) return run_ablate(ab_args);
        if (rep->parsed()) return run_report(rep_args);
    } catch (const texpyr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnusable;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUnusable;
    }
    return kExitUnusable;
}
