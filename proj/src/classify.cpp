#include "senti/classify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

#include "senti/seed.hpp"

namespace senti {

namespace {

void require_both_classes(const FeatureMatrix& matrix, const char* who) {
    if (matrix.n_documents() == 0) throw std::invalid_argument(std::string(who) + ": empty training set");
    if (matrix.vocabulary == nullptr) throw std::invalid_argument(std::string(who) + ": matrix has no vocabulary");
    if (matrix.vectors.size() != matrix.labels.size())
        throw std::invalid_argument(std::string(who) + ": vectors/labels length mismatch");
    bool pos = false;
    bool neg = false;
    for (SentimentLabel label : matrix.labels) {
        if (label == SentimentLabel::Neutral)
            throw std::invalid_argument(std::string(who) + ": Neutral label in training data");
        (label == SentimentLabel::Positive ? pos : neg) = true;
    }
    if (!pos || !neg) throw std::invalid_argument(std::string(who) + ": both classes must be present");
}

void write_double(std::ostream& out, double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.write(buffer, result.ptr - buffer);
}

double read_double(std::istream& in) {
    std::string token;
    if (!(in >> token)) throw std::runtime_error("model load: unexpected end of stream");
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
        throw std::runtime_error("model load: bad numeric field '" + token + "'");
    return value;
}

void expect_token(std::istream& in, const std::string& expected) {
    std::string token;
    if (!(in >> token) || token != expected)
        throw std::runtime_error("model load: expected '" + expected + "', got '" + token + "'");
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t value = 0;
    if (!(in >> value)) throw std::runtime_error("model load: bad integer field");
    return value;
}

// bounded draw from a raw 64-bit stream; deterministic across platforms
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

template <typename T>
void shuffle_indices(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[bounded(rng, i)]);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Naive Bayes

NBModel train_nb(const FeatureMatrix& matrix, double alpha) {
    require_both_classes(matrix, "train_nb");
    if (alpha <= 0.0) throw std::invalid_argument("train_nb: alpha must be positive");

    const std::size_t vocab_size = matrix.vocabulary->size();
    NBModel model;
    model.smoothing_alpha = alpha;
    model.term_log_likelihoods[kPositive].assign(vocab_size, 0.0);
    model.term_log_likelihoods[kNegative].assign(vocab_size, 0.0);

    std::array<std::vector<double>, 2> term_mass;
    term_mass[kPositive].assign(vocab_size, 0.0);
    term_mass[kNegative].assign(vocab_size, 0.0);
    std::array<double, 2> class_mass{};
    std::array<std::size_t, 2> class_docs{};

    for (std::size_t doc = 0; doc < matrix.n_documents(); ++doc) {
        const std::size_t cls = class_index(matrix.labels[doc]);
        ++class_docs[cls];
        for (const auto& [index, weight] : matrix.vectors[doc].entries) {
            term_mass[cls][index] += weight;
            class_mass[cls] += weight;
        }
    }

    const double total_docs = static_cast<double>(matrix.n_documents());
    for (std::size_t cls = 0; cls < 2; ++cls) {
        model.class_log_priors[cls] = std::log(static_cast<double>(class_docs[cls]) / total_docs);
        const double denominator = class_mass[cls] + alpha * static_cast<double>(vocab_size);
        for (std::size_t term = 0; term < vocab_size; ++term) {
            model.term_log_likelihoods[cls][term] =
                std::log((term_mass[cls][term] + alpha) / denominator);
        }
    }
    return model;
}

Prediction NBModel::predict(const DocVector& vec) const {
    const std::size_t vocab_size = term_log_likelihoods[kPositive].size();
    std::array<double, 2> scores = class_log_priors;
    for (const auto& [index, weight] : vec.entries) {
        if (index >= vocab_size) throw std::invalid_argument("NBModel::predict: index out of range");
        scores[kPositive] += weight * term_log_likelihoods[kPositive][index];
        scores[kNegative] += weight * term_log_likelihoods[kNegative][index];
    }
    const double log_odds = scores[kPositive] - scores[kNegative];
    // exact zero goes Negative
    const SentimentLabel label = log_odds > 0.0 ? SentimentLabel::Positive : SentimentLabel::Negative;
    return {label, log_odds};
}

void NBModel::save(std::ostream& out) const {
    out << "senti-model v1 nb\n";
    out << "vocab " << term_log_likelihoods[kPositive].size() << "\n";
    out << "alpha ";
    write_double(out, smoothing_alpha);
    out << "\npriors ";
    write_double(out, class_log_priors[kPositive]);
    out << ' ';
    write_double(out, class_log_priors[kNegative]);
    out << '\n';
    for (std::size_t cls = 0; cls < 2; ++cls) {
        out << "likelihoods" << cls;
        for (double value : term_log_likelihoods[cls]) {
            out << ' ';
            write_double(out, value);
        }
        out << '\n';
    }
}

NBModel NBModel::load(std::istream& in) {
    expect_token(in, "senti-model");
    expect_token(in, "v1");
    expect_token(in, "nb");
    expect_token(in, "vocab");
    const std::size_t vocab_size = read_u64(in);
    NBModel model;
    expect_token(in, "alpha");
    model.smoothing_alpha = read_double(in);
    expect_token(in, "priors");
    model.class_log_priors[kPositive] = read_double(in);
    model.class_log_priors[kNegative] = read_double(in);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        expect_token(in, "likelihoods" + std::to_string(cls));
        model.term_log_likelihoods[cls].resize(vocab_size);
        for (std::size_t term = 0; term < vocab_size; ++term)
            model.term_log_likelihoods[cls][term] = read_double(in);
    }
    return model;
}

// ---------------------------------------------------------------------------
// Linear SVM

double svm_objective(const std::vector<double>& weights, double bias, double c,
                     const FeatureMatrix& matrix) {
    const double n = static_cast<double>(matrix.n_documents());
    double norm_sq = 0.0;
    for (double w : weights) norm_sq += w * w;
    double hinge_sum = 0.0;
    for (std::size_t doc = 0; doc < matrix.n_documents(); ++doc) {
        const double y = matrix.labels[doc] == SentimentLabel::Positive ? 1.0 : -1.0;
        const double margin = y * (matrix.vectors[doc].dot(weights) + bias);
        hinge_sum += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * norm_sq / (c * n) + hinge_sum / n;
}

SVMModel train_svm(const FeatureMatrix& matrix, double c, std::size_t epochs, std::uint64_t seed) {
    require_both_classes(matrix, "train_svm");
    if (c <= 0.0) throw std::invalid_argument("train_svm: c must be positive");
    if (epochs == 0) throw std::invalid_argument("train_svm: epochs must be >= 1");

    const std::size_t n = matrix.n_documents();
    const std::size_t dim = matrix.vocabulary->size();
    const double lambda = 1.0 / (c * static_cast<double>(n));

    // w is kept as scale * v so the regularization shrink is O(1); the
    // running sum of iterates is maintained lazily per coordinate.
    std::vector<double> v(dim, 0.0);
    double scale = 1.0;
    double bias = 0.0;
    std::vector<double> iterate_sum(dim, 0.0);   // sum over steps of w_j
    std::vector<double> scale_sum_at(dim, 0.0);  // value of scale_sum at last flush of j
    double scale_sum = 0.0;                      // sum over completed steps of scale
    double bias_sum = 0.0;
    std::size_t steps = 0;

    std::vector<double> y(n);
    for (std::size_t doc = 0; doc < n; ++doc)
        y[doc] = matrix.labels[doc] == SentimentLabel::Positive ? 1.0 : -1.0;

    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::mt19937_64 rng(seed);

    SVMModel model;
    model.c = c;
    model.epochs = epochs;
    model.seed = seed;
    double best_objective = std::numeric_limits<double>::infinity();

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        shuffle_indices(order, rng);
        for (std::uint32_t doc : order) {
            ++steps;
            // step size starts near c and decays like 1/t
            const double eta = 1.0 / (lambda * static_cast<double>(steps + n));
            const double margin = y[doc] * (scale * matrix.vectors[doc].dot(v) + bias);
            scale *= 1.0 - eta * lambda;
            if (margin < 1.0) {
                for (const auto& [index, value] : matrix.vectors[doc].entries) {
                    iterate_sum[index] += v[index] * (scale_sum - scale_sum_at[index]);
                    scale_sum_at[index] = scale_sum;
                    v[index] += eta * y[doc] * value / scale;
                }
                bias += eta * y[doc];
            }
            scale_sum += scale;
            bias_sum += bias;
        }

        // epoch checkpoint: averaged iterate, kept only when it lowers the objective
        std::vector<double> averaged(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            averaged[j] = (iterate_sum[j] + v[j] * (scale_sum - scale_sum_at[j])) /
                          static_cast<double>(steps);
        }
        const double averaged_bias = bias_sum / static_cast<double>(steps);
        const double objective = svm_objective(averaged, averaged_bias, c, matrix);
        if (objective < best_objective) {
            best_objective = objective;
            model.weights = std::move(averaged);
            model.bias = averaged_bias;
        }
        model.objective_trace.push_back(best_objective);
    }
    return model;
}

Prediction SVMModel::predict(const DocVector& vec) const {
    for (const auto& [index, weight] : vec.entries) {
        (void)weight;
        if (index >= weights.size()) throw std::invalid_argument("SVMModel::predict: index out of range");
    }
    const double margin = vec.dot(weights) + bias;
    const SentimentLabel label = margin > 0.0 ? SentimentLabel::Positive : SentimentLabel::Negative;
    return {label, margin};
}

void SVMModel::save(std::ostream& out) const {
    out << "senti-model v1 svm\n";
    out << "vocab " << weights.size() << '\n';
    out << "c ";
    write_double(out, c);
    out << "\nepochs " << epochs << '\n';
    out << "seed " << seed << '\n';
    out << "bias ";
    write_double(out, bias);
    out << "\nweights";
    for (double w : weights) {
        out << ' ';
        write_double(out, w);
    }
    out << '\n';
}

SVMModel SVMModel::load(std::istream& in) {
    expect_token(in, "senti-model");
    expect_token(in, "v1");
    expect_token(in, "svm");
    expect_token(in, "vocab");
    const std::size_t vocab_size = read_u64(in);
    SVMModel model;
    expect_token(in, "c");
    model.c = read_double(in);
    expect_token(in, "epochs");
    model.epochs = read_u64(in);
    expect_token(in, "seed");
    model.seed = read_u64(in);
    expect_token(in, "bias");
    model.bias = read_double(in);
    expect_token(in, "weights");
    model.weights.resize(vocab_size);
    for (std::size_t j = 0; j < vocab_size; ++j) model.weights[j] = read_double(in);
    return model;
}

// ---------------------------------------------------------------------------
// Random forest

namespace {

double feature_value(const DocVector& vec, std::uint32_t feature) {
    const auto& entries = vec.entries;
    auto it = std::lower_bound(entries.begin(), entries.end(), feature,
                               [](const auto& entry, std::uint32_t f) { return entry.first < f; });
    return (it != entries.end() && it->first == feature) ? it->second : 0.0;
}

double gini(std::size_t pos, std::size_t neg) {
    const double total = static_cast<double>(pos + neg);
    if (total == 0.0) return 0.0;
    const double p = static_cast<double>(pos) / total;
    const double q = static_cast<double>(neg) / total;
    return 1.0 - p * p - q * q;
}

class TreeBuilder {
public:
    TreeBuilder(const FeatureMatrix& matrix, std::size_t max_features, std::uint64_t seed)
        : matrix_(matrix),
          vocab_size_(matrix.vocabulary->size()),
          max_features_(std::min(max_features, vocab_size_)),
          rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    DecisionTree build(std::vector<std::uint32_t> docs) {
        DecisionTree tree;
        grow(std::move(docs), tree.nodes);
        return tree;
    }

private:
    std::int32_t grow(std::vector<std::uint32_t> docs, std::vector<TreeNode>& nodes) {
        std::size_t pos = 0;
        for (std::uint32_t doc : docs) {
            if (matrix_.labels[doc] == SentimentLabel::Positive) ++pos;
        }
        const std::size_t neg = docs.size() - pos;

        if (docs.size() < 2 || pos == 0 || neg == 0) return make_leaf(nodes, pos, neg);

        const auto split = find_best_split(docs);
        if (!split) return make_leaf(nodes, pos, neg);

        std::vector<std::uint32_t> left_docs;
        std::vector<std::uint32_t> right_docs;
        for (std::uint32_t doc : docs) {
            if (feature_value(matrix_.vectors[doc], split->feature) <= split->threshold) {
                left_docs.push_back(doc);
            } else {
                right_docs.push_back(doc);
            }
        }
        docs.clear();
        docs.shrink_to_fit();

        const std::int32_t node_index = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();
        nodes[node_index].feature = static_cast<std::int32_t>(split->feature);
        nodes[node_index].threshold = split->threshold;
        nodes[node_index].counts = {pos, neg};
        const std::int32_t left = grow(std::move(left_docs), nodes);
        nodes[node_index].left = left;
        const std::int32_t right = grow(std::move(right_docs), nodes);
        nodes[node_index].right = right;
        return node_index;
    }

    std::int32_t make_leaf(std::vector<TreeNode>& nodes, std::size_t pos, std::size_t neg) {
        TreeNode leaf;
        leaf.label = pos > neg ? SentimentLabel::Positive : SentimentLabel::Negative;
        leaf.counts = {pos, neg};
        nodes.push_back(leaf);
        return static_cast<std::int32_t>(nodes.size() - 1);
    }

    struct Split {
        std::uint32_t feature;
        double threshold;
    };

    std::optional<Split> find_best_split(const std::vector<std::uint32_t>& docs) {
        const std::vector<std::uint32_t> candidates = sample_features();
        double best_impurity = std::numeric_limits<double>::infinity();
        std::optional<Split> best;

        std::vector<std::pair<double, bool>> values;  // (value, is_positive)
        for (std::uint32_t feature : candidates) {
            values.clear();
            for (std::uint32_t doc : docs) {
                values.emplace_back(feature_value(matrix_.vectors[doc], feature),
                                    matrix_.labels[doc] == SentimentLabel::Positive);
            }
            std::sort(values.begin(), values.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (values.front().first == values.back().first) continue;  // constant feature

            std::size_t left_pos = 0;
            std::size_t left_total = 0;
            const std::size_t total_pos =
                static_cast<std::size_t>(std::count_if(values.begin(), values.end(),
                                                       [](const auto& v) { return v.second; }));
            const std::size_t total = values.size();
            for (std::size_t i = 0; i + 1 < total; ++i) {
                left_pos += values[i].second ? 1 : 0;
                ++left_total;
                if (values[i].first == values[i + 1].first) continue;
                const std::size_t right_total = total - left_total;
                const std::size_t right_pos = total_pos - left_pos;
                const double impurity =
                    (static_cast<double>(left_total) * gini(left_pos, left_total - left_pos) +
                     static_cast<double>(right_total) * gini(right_pos, right_total - right_pos)) /
                    static_cast<double>(total);
                if (impurity < best_impurity) {
                    best_impurity = impurity;
                    best = Split{feature, (values[i].first + values[i + 1].first) / 2.0};
                }
            }
        }
        return best;
    }

    std::vector<std::uint32_t> sample_features() {
        std::vector<std::uint32_t> pool(vocab_size_);
        for (std::size_t j = 0; j < vocab_size_; ++j) pool[j] = static_cast<std::uint32_t>(j);
        // full-width candidate sets stay in index order and draw no randomness
        if (max_features_ >= vocab_size_) return pool;
        for (std::size_t i = 0; i < max_features_; ++i) {
            const std::size_t pick = i + bounded(rng_, vocab_size_ - i);
            std::swap(pool[i], pool[pick]);
        }
        pool.resize(max_features_);
        return pool;
    }

    const FeatureMatrix& matrix_;
    std::size_t vocab_size_;
    std::size_t max_features_;
    std::mt19937_64 rng_;
};

}  // namespace

SentimentLabel DecisionTree::predict(const DocVector& vec) const {
    std::int32_t index = 0;
    while (nodes[index].feature >= 0) {
        const double value = feature_value(vec, static_cast<std::uint32_t>(nodes[index].feature));
        index = value <= nodes[index].threshold ? nodes[index].left : nodes[index].right;
    }
    return nodes[index].label;
}

RFModel train_rf(const FeatureMatrix& matrix, RFParams params, std::uint64_t seed) {
    require_both_classes(matrix, "train_rf");
    if (params.n_trees == 0) throw std::invalid_argument("train_rf: n_trees must be >= 1");

    const std::size_t vocab_size = matrix.vocabulary->size();
    if (params.max_features == 0) {
        params.max_features =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(vocab_size))));
    }

    RFModel model;
    model.params = params;
    model.seed = seed;
    model.vocab_size = vocab_size;
    model.trees.reserve(params.n_trees);

    const std::size_t n = matrix.n_documents();
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        TreeBuilder builder(matrix, params.max_features, derive_seed(seed, "tree", t));
        std::vector<std::uint32_t> docs(n);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                docs[i] = static_cast<std::uint32_t>(bounded(builder.rng(), n));
        } else {
            for (std::size_t i = 0; i < n; ++i) docs[i] = static_cast<std::uint32_t>(i);
        }
        model.trees.push_back(builder.build(std::move(docs)));
    }
    return model;
}

Prediction RFModel::predict(const DocVector& vec) const {
    for (const auto& [index, weight] : vec.entries) {
        (void)weight;
        if (index >= vocab_size) throw std::invalid_argument("RFModel::predict: index out of range");
    }
    std::size_t positive_votes = 0;
    for (const auto& tree : trees) {
        if (tree.predict(vec) == SentimentLabel::Positive) ++positive_votes;
    }
    const double share = static_cast<double>(positive_votes) / static_cast<double>(trees.size());
    const SentimentLabel label =
        2 * positive_votes > trees.size() ? SentimentLabel::Positive : SentimentLabel::Negative;
    return {label, share};
}

void RFModel::save(std::ostream& out) const {
    out << "senti-model v1 rf\n";
    out << "vocab " << vocab_size << '\n';
    out << "n_trees " << params.n_trees << '\n';
    out << "max_features " << params.max_features << '\n';
    out << "bootstrap " << (params.bootstrap ? 1 : 0) << '\n';
    out << "seed " << seed << '\n';
    for (const auto& tree : trees) {
        out << "tree " << tree.nodes.size() << '\n';
        for (const auto& node : tree.nodes) {
            out << node.feature << ' ';
            write_double(out, node.threshold);
            out << ' ' << node.left << ' ' << node.right << ' '
                << (node.label == SentimentLabel::Positive ? 'p' : 'n') << ' ' << node.counts[0]
                << ' ' << node.counts[1] << '\n';
        }
    }
}

RFModel RFModel::load(std::istream& in) {
    expect_token(in, "senti-model");
    expect_token(in, "v1");
    expect_token(in, "rf");
    expect_token(in, "vocab");
    RFModel model;
    model.vocab_size = read_u64(in);
    expect_token(in, "n_trees");
    model.params.n_trees = read_u64(in);
    expect_token(in, "max_features");
    model.params.max_features = read_u64(in);
    expect_token(in, "bootstrap");
    model.params.bootstrap = read_u64(in) != 0;
    expect_token(in, "seed");
    model.seed = read_u64(in);
    model.trees.reserve(model.params.n_trees);
    for (std::size_t t = 0; t < model.params.n_trees; ++t) {
        expect_token(in, "tree");
        const std::size_t node_count = read_u64(in);
        DecisionTree tree;
        tree.nodes.resize(node_count);
        for (auto& node : tree.nodes) {
            if (!(in >> node.feature)) throw std::runtime_error("model load: bad tree node");
            node.threshold = read_double(in);
            if (!(in >> node.left >> node.right)) throw std::runtime_error("model load: bad tree node");
            std::string label;
            if (!(in >> label)) throw std::runtime_error("model load: bad tree node");
            node.label = label == "p" ? SentimentLabel::Positive : SentimentLabel::Negative;
            node.counts[0] = read_u64(in);
            node.counts[1] = read_u64(in);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace senti
