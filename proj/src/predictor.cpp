#include "contribmine/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <set>

#include "contribmine/errors.hpp"

namespace contribmine {

namespace {

constexpr double kLearningRate = 0.1;
constexpr int kLogisticEpochs = 500;
constexpr int kBoostRounds = 100;
constexpr int kMaxTreeDepth = 3;
constexpr double kTreeLambda = 1.0;

double sigmoid(double z) {
    if (z >= 0.0) {
        double e = std::exp(-z);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

// Numerically stable -[y log p + (1-y) log(1-p)] with p = sigmoid(z).
double nll_term(double z, double y) {
    double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    return softplus - y * z;
}

std::uint64_t fnv1a_seeded(const std::string& bytes, std::uint64_t seed) {
    std::uint64_t h = 14695981039346656037ULL ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

std::string_view model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::dummy: return "dummy";
        case ModelKind::logistic: return "logistic";
        case ModelKind::boosted_trees: return "boosted_trees";
    }
    return "dummy";
}

ExtractResult extract_features(const std::vector<TaskAssignment>& assignments,
                               const std::vector<ArticleRecord>& corpus) {
    std::map<std::string, const ArticleRecord*> by_id;
    for (const auto& rec : corpus) by_id.emplace(rec.id, &rec);

    // per article: author -> (task count, label mask)
    struct ArticleAcc {
        std::map<int, std::pair<int, std::uint16_t>> authors;
        int total = 0;
    };
    std::map<std::string, ArticleAcc> acc;
    for (const auto& a : assignments) {
        auto rec = by_id.find(a.article_id);
        if (rec == by_id.end()) {
            throw validation_error("assignment references unknown article '" + a.article_id + "'");
        }
        if (a.author_index < 1 || a.author_index > static_cast<int>(rec->second->byline.size())) {
            throw validation_error("assignment author_index out of byline range in article '" +
                                   a.article_id + "'");
        }
        auto& art = acc[a.article_id];
        auto& cell = art.authors[a.author_index];
        cell.first++;
        cell.second |= static_cast<std::uint16_t>(1u << static_cast<int>(a.category));
        art.total++;
    }

    ExtractResult out;
    for (const auto& rec : corpus) {
        auto it = acc.find(rec.id);
        if (it == acc.end()) continue;
        const ArticleAcc& art = it->second;
        out.skipped_zero_assignment_authors +=
            static_cast<long>(rec.byline.size()) - static_cast<long>(art.authors.size());
        for (const auto& [author, cell] : art.authors) {
            LabeledRow row;
            row.article_id = rec.id;
            row.features.position = author;
            row.features.n_tasks_author = cell.first;
            row.features.team_size = static_cast<int>(rec.byline.size());
            row.features.total_tasks_article = art.total;
            row.features.share = static_cast<double>(cell.first) / static_cast<double>(art.total);
            for (std::size_t c = 0; c < kCategoryCount; c++) {
                row.labels[c] = (cell.second & (1u << c)) ? 1 : 0;
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

double Tree::predict(const std::array<double, kFeatureCount>& x) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].leaf) {
        const TreeNode& n = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

namespace {

// Grows one regression tree on (gradient, hessian) pairs with exact greedy
// splits; returns leaf weights -G/(H+lambda).
struct TreeBuilder {
    const std::vector<std::array<double, kFeatureCount>>& x;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    Tree tree;

    int build(std::vector<std::size_t> rows, int depth) {
        double g_sum = 0.0, h_sum = 0.0;
        for (std::size_t r : rows) {
            g_sum += grad[r];
            h_sum += hess[r];
        }
        double parent_score = g_sum * g_sum / (h_sum + kTreeLambda);

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_gain = 1e-12;

        if (depth < kMaxTreeDepth && rows.size() >= 2) {
            for (std::size_t f = 0; f < kFeatureCount; f++) {
                std::vector<double> values;
                values.reserve(rows.size());
                for (std::size_t r : rows) values.push_back(x[r][f]);
                std::sort(values.begin(), values.end());
                values.erase(std::unique(values.begin(), values.end()), values.end());
                for (std::size_t v = 0; v + 1 < values.size(); v++) {
                    double thr = (values[v] + values[v + 1]) / 2.0;
                    double gl = 0.0, hl = 0.0;
                    for (std::size_t r : rows) {
                        if (x[r][f] <= thr) {
                            gl += grad[r];
                            hl += hess[r];
                        }
                    }
                    double gr = g_sum - gl, hr = h_sum - hl;
                    double gain = 0.5 * (gl * gl / (hl + kTreeLambda) + gr * gr / (hr + kTreeLambda) -
                                         parent_score);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = static_cast<int>(f);
                        best_threshold = thr;
                    }
                }
            }
        }

        int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (best_feature < 0) {
            tree.nodes[static_cast<std::size_t>(index)].leaf = true;
            tree.nodes[static_cast<std::size_t>(index)].value = -g_sum / (h_sum + kTreeLambda);
            return index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            (x[r][static_cast<std::size_t>(best_feature)] <= best_threshold ? left_rows : right_rows)
                .push_back(r);
        }
        int left = build(std::move(left_rows), depth + 1);
        int right = build(std::move(right_rows), depth + 1);
        TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
        node.leaf = false;
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        return index;
    }
};

} // namespace

double logistic_loss(const std::vector<std::array<double, kFeatureCount>>& x,
                     const std::vector<double>& y, const std::vector<double>& w) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double z = w[kFeatureCount];
        for (std::size_t f = 0; f < kFeatureCount; f++) z += w[f] * x[i][f];
        loss += nll_term(z, y[i]);
    }
    return loss / static_cast<double>(x.size());
}

std::vector<double> logistic_gradient(const std::vector<std::array<double, kFeatureCount>>& x,
                                      const std::vector<double>& y, const std::vector<double>& w) {
    std::vector<double> grad(kFeatureCount + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); i++) {
        double z = w[kFeatureCount];
        for (std::size_t f = 0; f < kFeatureCount; f++) z += w[f] * x[i][f];
        double err = sigmoid(z) - y[i];
        for (std::size_t f = 0; f < kFeatureCount; f++) grad[f] += err * x[i][f];
        grad[kFeatureCount] += err;
    }
    for (double& g : grad) g /= static_cast<double>(x.size());
    return grad;
}

Model train(const std::vector<LabeledRow>& rows, ModelKind kind, std::uint64_t seed,
            TrainDiagnostics* diagnostics) {
    (void)seed; // no stochastic steps; the seed is part of the contract surface
    if (rows.size() < 2) throw validation_error("train: need at least 2 rows");

    Model model;
    model.kind = kind;

    std::vector<std::array<double, kFeatureCount>> raw;
    raw.reserve(rows.size());
    for (const auto& r : rows) raw.push_back(r.features.as_array());

    // Standardization parameters from the training rows (used by logistic).
    for (std::size_t f = 0; f < kFeatureCount; f++) {
        double mean = 0.0;
        for (const auto& x : raw) mean += x[f];
        mean /= static_cast<double>(raw.size());
        double var = 0.0;
        for (const auto& x : raw) var += (x[f] - mean) * (x[f] - mean);
        var /= static_cast<double>(raw.size());
        model.feature_means[f] = mean;
        model.feature_stds[f] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    std::vector<std::array<double, kFeatureCount>> standardized = raw;
    for (auto& x : standardized) {
        for (std::size_t f = 0; f < kFeatureCount; f++) {
            x[f] = (x[f] - model.feature_means[f]) / model.feature_stds[f];
        }
    }

    for (std::size_t c = 0; c < kCategoryCount; c++) {
        LabelModel& lm = model.labels[c];
        std::vector<double> y;
        y.reserve(rows.size());
        long positives = 0;
        for (const auto& r : rows) {
            y.push_back(r.labels[c]);
            positives += r.labels[c];
        }

        if (positives == 0 || positives == static_cast<long>(rows.size())) {
            lm.constant = true;
            lm.constant_prob = positives == 0 ? 0.0 : 1.0;
            lm.majority = positives == 0 ? 0 : 1;
            if (diagnostics && kind != ModelKind::dummy) {
                diagnostics->warnings.push_back(
                    "label '" + std::string(category_name(static_cast<CreditCategory>(c))) +
                    "' has a single class; using constant prediction");
            }
            continue;
        }

        if (kind == ModelKind::dummy) {
            lm.majority = positives * 2 >= static_cast<long>(rows.size()) ? 1 : 0;
            continue;
        }

        if (kind == ModelKind::logistic) {
            lm.weights.assign(kFeatureCount + 1, 0.0);
            for (int epoch = 0; epoch < kLogisticEpochs; epoch++) {
                std::vector<double> grad = logistic_gradient(standardized, y, lm.weights);
                for (std::size_t f = 0; f < lm.weights.size(); f++) {
                    lm.weights[f] -= kLearningRate * grad[f];
                }
            }
            continue;
        }

        // boosted_trees
        double p_mean = static_cast<double>(positives) / static_cast<double>(rows.size());
        p_mean = std::min(1.0 - 1e-6, std::max(1e-6, p_mean));
        lm.base_score = std::log(p_mean / (1.0 - p_mean));

        std::vector<double> f_score(rows.size(), lm.base_score);
        std::vector<double> grad(rows.size()), hess(rows.size());
        std::vector<std::size_t> all_rows(rows.size());
        for (std::size_t i = 0; i < rows.size(); i++) all_rows[i] = i;

        for (int round = 0; round < kBoostRounds; round++) {
            for (std::size_t i = 0; i < rows.size(); i++) {
                double p = sigmoid(f_score[i]);
                grad[i] = p - y[i];
                hess[i] = std::max(1e-16, p * (1.0 - p));
            }
            TreeBuilder builder{raw, grad, hess, {}};
            builder.build(all_rows, 0);
            Tree tree = std::move(builder.tree);
            for (std::size_t i = 0; i < rows.size(); i++) {
                f_score[i] += kLearningRate * tree.predict(raw[i]);
            }
            lm.trees.push_back(std::move(tree));
            if (diagnostics) {
                double loss = 0.0;
                for (std::size_t i = 0; i < rows.size(); i++) loss += nll_term(f_score[i], y[i]);
                diagnostics->loss_trace[c].push_back(loss / static_cast<double>(rows.size()));
            }
        }
    }
    return model;
}

std::array<double, kCategoryCount> Model::predict_proba(const FeatureVector& f) const {
    std::array<double, kCategoryCount> out{};
    std::array<double, kFeatureCount> raw = f.as_array();
    std::array<double, kFeatureCount> standardized = raw;
    for (std::size_t i = 0; i < kFeatureCount; i++) {
        standardized[i] = (raw[i] - feature_means[i]) / feature_stds[i];
    }
    for (std::size_t c = 0; c < kCategoryCount; c++) {
        const LabelModel& lm = labels[c];
        if (lm.constant) {
            out[c] = lm.constant_prob;
            continue;
        }
        switch (kind) {
            case ModelKind::dummy:
                out[c] = lm.majority ? 1.0 : 0.0;
                break;
            case ModelKind::logistic: {
                double z = lm.weights[kFeatureCount];
                for (std::size_t i = 0; i < kFeatureCount; i++) z += lm.weights[i] * standardized[i];
                out[c] = sigmoid(z);
                break;
            }
            case ModelKind::boosted_trees: {
                double z = lm.base_score;
                for (const auto& tree : lm.trees) z += kLearningRate * tree.predict(raw);
                out[c] = sigmoid(z);
                break;
            }
        }
    }
    return out;
}

std::array<std::uint8_t, kCategoryCount> Model::predict(const FeatureVector& f) const {
    auto proba = predict_proba(f);
    std::array<std::uint8_t, kCategoryCount> out{};
    for (std::size_t c = 0; c < kCategoryCount; c++) out[c] = proba[c] > 0.5 ? 1 : 0;
    return out;
}

namespace {

constexpr char kModelMagic[8] = {'C', 'T', 'R', 'B', 'M', 'D', 'L', '1'};

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void get(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
}

} // namespace

void Model::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open model file for writing: " + path.string());
    out.write(kModelMagic, 8);
    put(out, std::uint32_t{1});
    put(out, static_cast<std::uint8_t>(kind));
    for (double m : feature_means) put(out, m);
    for (double s : feature_stds) put(out, s);
    for (const auto& lm : labels) {
        put(out, static_cast<std::uint8_t>(lm.constant));
        put(out, lm.constant_prob);
        put(out, lm.majority);
        put(out, static_cast<std::uint32_t>(lm.weights.size()));
        for (double w : lm.weights) put(out, w);
        put(out, lm.base_score);
        put(out, static_cast<std::uint32_t>(lm.trees.size()));
        for (const auto& tree : lm.trees) {
            put(out, static_cast<std::uint32_t>(tree.nodes.size()));
            for (const auto& n : tree.nodes) {
                put(out, static_cast<std::uint8_t>(n.leaf));
                put(out, static_cast<std::int32_t>(n.feature));
                put(out, n.threshold);
                put(out, static_cast<std::int32_t>(n.left));
                put(out, static_cast<std::int32_t>(n.right));
                put(out, n.value);
            }
        }
    }
    if (!out) throw io_error("write failed: " + path.string());
}

Model Model::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open model file: " + path.string());
    char magic[8] = {};
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kModelMagic, 8) != 0) {
        throw config_error("not a model file: " + path.string());
    }
    std::uint32_t version = 0;
    get(in, version);
    if (version != 1) throw config_error("unsupported model version " + std::to_string(version));
    std::uint8_t kind_byte = 0;
    get(in, kind_byte);
    Model model;
    model.kind = static_cast<ModelKind>(kind_byte);
    for (auto& m : model.feature_means) get(in, m);
    for (auto& s : model.feature_stds) get(in, s);
    for (auto& lm : model.labels) {
        std::uint8_t flag = 0;
        get(in, flag);
        lm.constant = flag != 0;
        get(in, lm.constant_prob);
        get(in, lm.majority);
        std::uint32_t nw = 0;
        get(in, nw);
        lm.weights.resize(nw);
        for (auto& w : lm.weights) get(in, w);
        get(in, lm.base_score);
        std::uint32_t nt = 0;
        get(in, nt);
        lm.trees.resize(nt);
        for (auto& tree : lm.trees) {
            std::uint32_t nn = 0;
            get(in, nn);
            tree.nodes.resize(nn);
            for (auto& n : tree.nodes) {
                std::uint8_t leaf = 0;
                std::int32_t feature = 0, left = 0, right = 0;
                get(in, leaf);
                get(in, feature);
                get(in, n.threshold);
                get(in, left);
                get(in, right);
                get(in, n.value);
                n.leaf = leaf != 0;
                n.feature = feature;
                n.left = left;
                n.right = right;
            }
        }
    }
    if (!in) throw config_error("truncated model file: " + path.string());
    return model;
}

bool in_test_split(const std::string& article_id, std::uint64_t seed) {
    return fnv1a_seeded(article_id, seed) % 5 == 0;
}

ModelEvalTable evaluate_models(const std::vector<LabeledRow>& rows, std::uint64_t seed) {
    if (rows.size() < 10) throw validation_error("evaluate_models: need at least 10 rows");
    std::vector<LabeledRow> train_rows, test_rows;
    for (const auto& r : rows) {
        (in_test_split(r.article_id, seed) ? test_rows : train_rows).push_back(r);
    }
    if (test_rows.size() < 2) throw validation_error("evaluate_models: fewer than 2 test rows");
    if (train_rows.size() < 2) throw validation_error("evaluate_models: fewer than 2 training rows");

    ModelEvalTable table;
    table.train_rows = train_rows.size();
    table.test_rows = test_rows.size();

    struct Slot {
        ModelKind kind;
        std::array<double, kCategoryCount>* acc;
        double* mean;
    };
    Slot slots[3] = {
        {ModelKind::dummy, &table.accuracy_dummy, &table.mean_dummy},
        {ModelKind::logistic, &table.accuracy_logistic, &table.mean_logistic},
        {ModelKind::boosted_trees, &table.accuracy_boosted, &table.mean_boosted},
    };
    for (auto& slot : slots) {
        Model model = train(train_rows, slot.kind, seed);
        std::array<long, kCategoryCount> correct{};
        for (const auto& row : test_rows) {
            auto pred = model.predict(row.features);
            for (std::size_t c = 0; c < kCategoryCount; c++) {
                if (pred[c] == row.labels[c]) correct[c]++;
            }
        }
        double mean = 0.0;
        for (std::size_t c = 0; c < kCategoryCount; c++) {
            (*slot.acc)[c] = static_cast<double>(correct[c]) / static_cast<double>(test_rows.size());
            mean += (*slot.acc)[c];
        }
        *slot.mean = mean / static_cast<double>(kCategoryCount);
    }
    return table;
}

} // namespace contribmine
