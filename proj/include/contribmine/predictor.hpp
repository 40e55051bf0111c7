#pragma once
#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "contribmine/model.hpp"

namespace contribmine {

inline constexpr std::size_t kFeatureCount = 5;

// Metadata features for one (article, author) pair.
struct FeatureVector {
    int position = 0;
    int n_tasks_author = 0;
    int team_size = 0;
    int total_tasks_article = 0;
    double share = 0.0;

    std::array<double, kFeatureCount> as_array() const {
        return {static_cast<double>(position), static_cast<double>(n_tasks_author),
                static_cast<double>(team_size), static_cast<double>(total_tasks_article), share};
    }
};

struct LabeledRow {
    std::string article_id;
    FeatureVector features;
    std::array<std::uint8_t, kCategoryCount> labels{};
};

struct ExtractResult {
    std::vector<LabeledRow> rows;
    long skipped_zero_assignment_authors = 0;
};

// One row per (article, author) with at least one assignment; labels are the
// author's assigned categories. Zero-assignment authors are skipped and
// counted.
ExtractResult extract_features(const std::vector<TaskAssignment>& assignments,
                               const std::vector<ArticleRecord>& corpus);

enum class ModelKind { dummy, logistic, boosted_trees };

std::string_view model_kind_name(ModelKind k);

struct TreeNode {
    bool leaf = true;
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    double predict(const std::array<double, kFeatureCount>& x) const;
};

// One-vs-rest binary model for a single category.
struct LabelModel {
    bool constant = false;     // single-class label: constant prediction
    double constant_prob = 0.0;
    std::uint8_t majority = 0;          // dummy
    std::vector<double> weights;        // logistic: kFeatureCount + bias
    double base_score = 0.0;            // boosted
    std::vector<Tree> trees;            // boosted
};

class Model {
public:
    ModelKind kind = ModelKind::dummy;
    std::array<double, kFeatureCount> feature_means{};
    std::array<double, kFeatureCount> feature_stds{};
    std::array<LabelModel, kCategoryCount> labels;

    std::array<double, kCategoryCount> predict_proba(const FeatureVector& f) const;
    std::array<std::uint8_t, kCategoryCount> predict(const FeatureVector& f) const;

    void save(const std::filesystem::path& path) const;
    static Model load(const std::filesystem::path& path);
};

struct TrainDiagnostics {
    std::vector<std::string> warnings;
    // Boosted: per-category training loss after each round.
    std::array<std::vector<double>, kCategoryCount> loss_trace;
};

// Trains a one-vs-rest model per category. Contracts: dummy predicts the
// majority class; logistic is full-batch gradient descent (lr 0.1, 500
// epochs) on standardized features; boosted_trees is gradient boosting with
// logistic loss, depth-3 regression trees, 100 rounds, lr 0.1, greedy exact
// splits. All three are deterministic given (rows, seed).
Model train(const std::vector<LabeledRow>& rows, ModelKind kind, std::uint64_t seed,
            TrainDiagnostics* diagnostics = nullptr);

// Mean negative log-likelihood; rows are raw feature arrays, w holds
// kFeatureCount weights plus a trailing bias. Exposed for the gradient
// checks beside the trainer.
double logistic_loss(const std::vector<std::array<double, kFeatureCount>>& x,
                     const std::vector<double>& y, const std::vector<double>& w);
std::vector<double> logistic_gradient(const std::vector<std::array<double, kFeatureCount>>& x,
                                      const std::vector<double>& y, const std::vector<double>& w);

// Deterministic 80/20 article-level split: a row is held out iff
// hash(article_id, seed) lands in the test bucket.
bool in_test_split(const std::string& article_id, std::uint64_t seed);

struct ModelEvalTable {
    std::array<double, kCategoryCount> accuracy_dummy{};
    std::array<double, kCategoryCount> accuracy_logistic{};
    std::array<double, kCategoryCount> accuracy_boosted{};
    double mean_dummy = 0.0;
    double mean_logistic = 0.0;
    double mean_boosted = 0.0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
};

// Trains all three model kinds on the train split and reports per-category
// held-out accuracy plus the mean over the 14 categories.
ModelEvalTable evaluate_models(const std::vector<LabeledRow>& rows, std::uint64_t seed);

} // namespace contribmine
