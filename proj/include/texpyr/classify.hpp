#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <texpyr/errors.hpp>

namespace texpyr {

/// Multiclass LDA with a shared, shrinkage-regularized covariance.
/// The pooled within-class covariance is blended as
/// (1-lambda) * Sigma_pool + lambda * (tr(Sigma_pool)/p) * I, and the
/// discriminant is delta_c(x) = x' Sigma^-1 mu_c - 0.5 mu_c' Sigma^-1 mu_c + ln pi_c.
struct LdaModel {
    std::vector<std::string> class_labels;        // sorted; index order breaks ties
    std::vector<double> class_priors;
    std::vector<std::vector<double>> class_means;
    std::vector<double> covariance;               // p x p row-major, after shrinkage
    std::vector<std::vector<double>> weights;     // Sigma^-1 mu_c per class
    std::vector<double> biases;                   // -0.5 mu_c' w_c + ln pi_c
    int dims = 0;
    double shrinkage = 0.0;
};

LdaModel lda_fit(const std::vector<std::vector<double>>& train_vectors,
                 const std::vector<std::string>& labels, double shrinkage = 0.01);

/// argmax_c delta_c(v); exact ties resolve to the lowest class index.
const std::string& lda_predict(const LdaModel& model, std::span<const double> v);

std::vector<std::string>
lda_predict_batch(const LdaModel& model,
                  const std::vector<std::vector<double>>& vectors);

/// Majority label among the k Euclidean nearest training points. Ties break
/// by smallest mean distance, then by lowest class index.
std::string knn_predict(const std::vector<std::vector<double>>& train_vectors,
                        const std::vector<std::string>& labels,
                        std::span<const double> v, int k);

struct EvalReport {
    double accuracy = 0.0;
    std::vector<std::string> class_labels;
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<std::vector<int>> confusion;  // rows actual, cols predicted
    int total = 0;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

/// Tallies predictions against actual labels over the given class list.
EvalReport make_report(const std::vector<std::string>& actual,
                       const std::vector<std::string>& predicted,
                       const std::vector<std::string>& class_labels);

EvalReport evaluate(const LdaModel& model,
                    const std::vector<std::vector<double>>& test_vectors,
                    const std::vector<std::string>& test_labels);

/// Versioned text dump of every coefficient; round-trips exactly.
void save_lda(const std::filesystem::path& path, const LdaModel& model);
LdaModel load_lda(const std::filesystem::path& path);

} // namespace texpyr
