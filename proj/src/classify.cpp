#include <texpyr/classify.hpp>

#include <texpyr/dataset.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace texpyr {

namespace {

void check_matrix(const std::vector<std::vector<double>>& vectors,
                  const char* where) {
    if (vectors.empty()) return;
    const std::size_t dims = vectors.front().size();
    if (dims == 0) {
        throw InvalidArgument(std::string(where) + ": zero-dimensional vectors");
    }
    for (const auto& v : vectors) {
        if (v.size() != dims) {
            throw SchemaMismatch(std::string(where) +
                                 ": vectors have inconsistent dimensions");
        }
    }
}

std::vector<std::string> sorted_unique(const std::vector<std::string>& labels) {
    std::vector<std::string> out(labels);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

LdaModel lda_fit(const std::vector<std::vector<double>>& train_vectors,
                 const std::vector<std::string>& labels, double shrinkage) {
    if (train_vectors.empty()) {
        throw EmptyTrainSet("lda_fit: no training vectors");
    }
    if (labels.size() != train_vectors.size()) {
        throw InvalidArgument("lda_fit: " + std::to_string(labels.size()) +
                              " labels for " + std::to_string(train_vectors.size()) +
                              " vectors");
    }
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) {
        throw InvalidArgument("lda_fit: shrinkage must lie in [0, 1]");
    }
    check_matrix(train_vectors, "lda_fit");

    const auto p = static_cast<Eigen::Index>(train_vectors.front().size());
    const auto n = static_cast<Eigen::Index>(train_vectors.size());

    const std::vector<std::string> classes = sorted_unique(labels);
    const auto n_classes = static_cast<Eigen::Index>(classes.size());
    if (n_classes < 2) {
        throw InvalidArgument("lda_fit: need at least 2 classes, got " +
                              std::to_string(classes.size()));
    }

    std::map<std::string, Eigen::Index> class_index;
    for (Eigen::Index c = 0; c < n_classes; ++c) class_index[classes[c]] = c;

    Eigen::MatrixXd x(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index d = 0; d < p; ++d) {
            x(i, d) = train_vectors[static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(d)];
        }
    }

    Eigen::VectorXd class_count = Eigen::VectorXd::Zero(n_classes);
    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(n_classes, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index c = class_index[labels[static_cast<std::size_t>(i)]];
        class_count(c) += 1.0;
        means.row(c) += x.row(i);
    }
    for (Eigen::Index c = 0; c < n_classes; ++c) {
        if (class_count(c) < 2.0) {
            throw DegenerateClass("lda_fit: class '" +
                                  classes[static_cast<std::size_t>(c)] +
                                  "' has fewer than 2 training samples");
        }
        means.row(c) /= class_count(c);
    }

    // Pooled within-class covariance with n - C in the denominator.
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index c = class_index[labels[static_cast<std::size_t>(i)]];
        const Eigen::VectorXd d = (x.row(i) - means.row(c)).transpose();
        pooled.noalias() += d * d.transpose();
    }
    pooled /= static_cast<double>(n - n_classes);

    const double trace_scale = pooled.trace() / static_cast<double>(p);
    Eigen::MatrixXd sigma = (1.0 - shrinkage) * pooled;
    sigma.diagonal().array() += shrinkage * trace_scale;

    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw SingularCovariance(
            "lda_fit: regularized covariance is not positive definite "
            "(try a larger shrinkage)");
    }

    LdaModel model;
    model.class_labels = classes;
    model.dims = static_cast<int>(p);
    model.shrinkage = shrinkage;
    model.covariance.resize(static_cast<std::size_t>(p) * p);
    for (Eigen::Index r = 0; r < p; ++r) {
        for (Eigen::Index col = 0; col < p; ++col) {
            model.covariance[static_cast<std::size_t>(r) * p + col] = sigma(r, col);
        }
    }

    for (Eigen::Index c = 0; c < n_classes; ++c) {
        const Eigen::VectorXd mu = means.row(c).transpose();
        const Eigen::VectorXd w = llt.solve(mu);
        const double prior = class_count(c) / static_cast<double>(n);
        model.class_priors.push_back(prior);
        model.class_means.emplace_back(mu.data(), mu.data() + p);
        model.weights.emplace_back(w.data(), w.data() + p);
        model.biases.push_back(-0.5 * mu.dot(w) + std::log(prior));
    }
    return model;
}

const std::string& lda_predict(const LdaModel& model, std::span<const double> v) {
    if (model.class_labels.empty()) {
        throw InvalidArgument("lda_predict: empty model");
    }
    if (v.size() != static_cast<std::size_t>(model.dims)) {
        throw DimensionMismatch("lda_predict: vector has " + std::to_string(v.size()) +
                                " dims, model expects " + std::to_string(model.dims));
    }
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.class_labels.size(); ++c) {
        double score = model.biases[c];
        const std::vector<double>& w = model.weights[c];
        for (std::size_t d = 0; d < v.size(); ++d) score += w[d] * v[d];
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return model.class_labels[best];
}

std::vector<std::string>
lda_predict_batch(const LdaModel& model,
                  const std::vector<std::vector<double>>& vectors) {
    std::vector<std::string> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) out.push_back(lda_predict(model, v));
    return out;
}

std::string knn_predict(const std::vector<std::vector<double>>& train_vectors,
                        const std::vector<std::string>& labels,
                        std::span<const double> v, int k) {
    if (train_vectors.empty()) {
        throw EmptyTrainSet("knn_predict: no training vectors");
    }
    if (labels.size() != train_vectors.size()) {
        throw InvalidArgument("knn_predict: labels and vectors must align");
    }
    if (k < 1 || static_cast<std::size_t>(k) > train_vectors.size()) {
        throw InvalidArgument("knn_predict: k must lie in [1, " +
                              std::to_string(train_vectors.size()) + "], got " +
                              std::to_string(k));
    }
    check_matrix(train_vectors, "knn_predict");
    if (v.size() != train_vectors.front().size()) {
        throw DimensionMismatch("knn_predict: vector has " + std::to_string(v.size()) +
                                " dims, training data has " +
                                std::to_string(train_vectors.front().size()));
    }

    const std::size_t n = train_vectors.size();
    const std::size_t kk = static_cast<std::size_t>(k);

    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const std::vector<double>& t = train_vectors[i];
        for (std::size_t d = 0; d < v.size(); ++d) {
            const double delta = t[d] - v[d];
            acc += delta * delta;
        }
        dist.emplace_back(std::sqrt(acc), i);
    }
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());

    // Vote; break vote ties by the smaller mean neighbour distance, then by
    // class order.
    const std::vector<std::string> classes = sorted_unique(labels);
    std::map<std::string, std::size_t> class_index;
    for (std::size_t c = 0; c < classes.size(); ++c) class_index[classes[c]] = c;

    std::vector<int> votes(classes.size(), 0);
    std::vector<double> dist_sum(classes.size(), 0.0);
    for (std::size_t i = 0; i < kk; ++i) {
        const std::size_t c = class_index[labels[dist[i].second]];
        ++votes[c];
        dist_sum[c] += dist[i].first;
    }

    std::size_t best = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (votes[c] == 0) continue;
        if (best == classes.size()) {
            best = c;
            continue;
        }
        const double mean_c = dist_sum[c] / votes[c];
        const double mean_b = dist_sum[best] / votes[best];
        if (votes[c] > votes[best] ||
            (votes[c] == votes[best] && mean_c < mean_b)) {
            best = c;
        }
    }
    return classes[best];
}

EvalReport make_report(const std::vector<std::string>& actual,
                       const std::vector<std::string>& predicted,
                       const std::vector<std::string>& class_labels) {
    if (actual.size() != predicted.size()) {
        throw InvalidArgument("make_report: actual and predicted must align");
    }
    if (actual.empty()) {
        throw EmptyTestSet("make_report: no samples");
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < class_labels.size(); ++c) index[class_labels[c]] = c;

    EvalReport report;
    report.class_labels = class_labels;
    report.total = static_cast<int>(actual.size());
    report.confusion.assign(class_labels.size(),
                            std::vector<int>(class_labels.size(), 0));

    int correct = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const auto a = index.find(actual[i]);
        const auto pr = index.find(predicted[i]);
        if (a == index.end() || pr == index.end()) {
            throw InvalidArgument("make_report: label '" +
                                  (a == index.end() ? actual[i] : predicted[i]) +
                                  "' is not in the class list");
        }
        ++report.confusion[a->second][pr->second];
        if (a->second == pr->second) ++correct;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(actual.size());

    for (std::size_t c = 0; c < class_labels.size(); ++c) {
        int row_sum = 0, col_sum = 0;
        for (std::size_t j = 0; j < class_labels.size(); ++j) {
            row_sum += report.confusion[c][j];
            col_sum += report.confusion[j][c];
        }
        const int tp = report.confusion[c][c];
        report.precision.push_back(col_sum > 0 ? static_cast<double>(tp) / col_sum : 0.0);
        report.recall.push_back(row_sum > 0 ? static_cast<double>(tp) / row_sum : 0.0);
    }
    return report;
}

EvalReport evaluate(const LdaModel& model,
                    const std::vector<std::vector<double>>& test_vectors,
                    const std::vector<std::string>& test_labels) {
    if (test_vectors.empty()) {
        throw EmptyTestSet("evaluate: no test vectors");
    }
    if (test_labels.size() != test_vectors.size()) {
        throw InvalidArgument("evaluate: labels and vectors must align");
    }
    return make_report(test_labels, lda_predict_batch(model, test_vectors),
                       model.class_labels);
}

void save_lda(const std::filesystem::path& path, const LdaModel& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw UnreadableDirectory("save_lda: cannot open " + path.string());
    }
    const std::size_t p = static_cast<std::size_t>(model.dims);
    out << "lda-v1\n";
    out << "dims " << model.dims << " classes " << model.class_labels.size()
        << " shrinkage " << format_double(model.shrinkage) << "\n";
    for (std::size_t c = 0; c < model.class_labels.size(); ++c) {
        out << "label " << model.class_labels[c] << "\n";
        out << "prior " << format_double(model.class_priors[c]) << "\n";
        out << "bias " << format_double(model.biases[c]) << "\n";
        out << "mean";
        for (double v : model.class_means[c]) out << ' ' << format_double(v);
        out << "\nweight";
        for (double v : model.weights[c]) out << ' ' << format_double(v);
        out << "\n";
    }
    for (std::size_t r = 0; r < p; ++r) {
        out << "cov";
        for (std::size_t col = 0; col < p; ++col) {
            out << ' ' << format_double(model.covariance[r * p + col]);
        }
        out << "\n";
    }
    out << "end\n";
    if (!out) {
        throw UnreadableDirectory("save_lda: short write to " + path.string());
    }
}

namespace {

std::istringstream expect_line(std::ifstream& in, const char* key,
                               const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("load_lda: truncated file " + path.string());
    }
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head != key) {
        throw SchemaMismatch("load_lda: expected '" + std::string(key) + "', got '" +
                             head + "' in " + path.string());
    }
    return ss;
}

std::vector<double> read_doubles(std::istringstream& ss, std::size_t count,
                                 const char* what,
                                 const std::filesystem::path& path) {
    std::vector<double> out;
    out.reserve(count);
    double v;
    while (ss >> v) out.push_back(v);
    if (out.size() != count) {
        throw SchemaMismatch("load_lda: bad " + std::string(what) + " length in " +
                             path.string());
    }
    return out;
}

} // namespace

LdaModel load_lda(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableDirectory("load_lda: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "lda-v1") {
        throw SchemaMismatch("load_lda: " + path.string() + " is not an lda-v1 file");
    }

    LdaModel model;
    std::size_t n_classes = 0;
    {
        auto ss = expect_line(in, "dims", path);
        std::string key;
        if (!(ss >> model.dims >> key >> n_classes) || key != "classes") {
            throw SchemaMismatch("load_lda: malformed dims line in " + path.string());
        }
        if (!(ss >> key >> model.shrinkage) || key != "shrinkage") {
            throw SchemaMismatch("load_lda: malformed shrinkage field in " +
                                 path.string());
        }
        if (model.dims < 1 || n_classes < 2) {
            throw SchemaMismatch("load_lda: invalid dims/classes in " + path.string());
        }
    }

    const auto p = static_cast<std::size_t>(model.dims);
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto label_ss = expect_line(in, "label", path);
        std::string label;
        std::getline(label_ss, label);
        const std::size_t first = label.find_first_not_of(' ');
        if (first == std::string::npos) {
            throw SchemaMismatch("load_lda: empty class label in " + path.string());
        }
        model.class_labels.push_back(label.substr(first));

        auto prior_ss = expect_line(in, "prior", path);
        model.class_priors.push_back(read_doubles(prior_ss, 1, "prior", path)[0]);
        auto bias_ss = expect_line(in, "bias", path);
        model.biases.push_back(read_doubles(bias_ss, 1, "bias", path)[0]);
        auto mean_ss = expect_line(in, "mean", path);
        model.class_means.push_back(read_doubles(mean_ss, p, "mean", path));
        auto weight_ss = expect_line(in, "weight", path);
        model.weights.push_back(read_doubles(weight_ss, p, "weight", path));
    }

    model.covariance.reserve(p * p);
    for (std::size_t r = 0; r < p; ++r) {
        auto ss = expect_line(in, "cov", path);
        const std::vector<double> row = read_doubles(ss, p, "cov row", path);
        model.covariance.insert(model.covariance.end(), row.begin(), row.end());
    }
    expect_line(in, "end", path);
    return model;
}

} // namespace texpyr
