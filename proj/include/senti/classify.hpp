#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "senti/features.hpp"
#include "senti/types.hpp"

namespace senti {

// Class index convention throughout: 0 = Positive, 1 = Negative.
inline constexpr std::size_t kPositive = 0;
inline constexpr std::size_t kNegative = 1;

inline std::size_t class_index(SentimentLabel label) {
    return label == SentimentLabel::Positive ? kPositive : kNegative;
}

struct Prediction {
    SentimentLabel label = SentimentLabel::Negative;
    double score = 0.0;  // NB: log-odds; SVM: margin; RF: positive-vote fraction
};

// Multinomial Naive Bayes with Laplace-style smoothing.
struct NBModel {
    std::array<double, 2> class_log_priors{};
    std::array<std::vector<double>, 2> term_log_likelihoods;
    double smoothing_alpha = 1.0;

    Prediction predict(const DocVector& vec) const;
    void save(std::ostream& out) const;
    static NBModel load(std::istream& in);
};

NBModel train_nb(const FeatureMatrix& matrix, double alpha = 1.0);

// Soft-margin linear SVM trained by epoch-wise subgradient descent with
// seeded shuffling and iterate averaging. The per-epoch model checkpoint is
// the averaged iterate with the lowest objective seen so far, so
// objective_trace is non-increasing.
struct SVMModel {
    std::vector<double> weights;
    double bias = 0.0;
    double c = 1.0;
    std::size_t epochs = 20;
    std::uint64_t seed = 0;
    std::vector<double> objective_trace;

    Prediction predict(const DocVector& vec) const;
    void save(std::ostream& out) const;
    static SVMModel load(std::istream& in);
};

SVMModel train_svm(const FeatureMatrix& matrix, double c, std::size_t epochs = 20,
                   std::uint64_t seed = 0);

// (1/2)||w||^2 / (c*n) + mean hinge loss over the matrix.
double svm_objective(const std::vector<double>& weights, double bias, double c,
                     const FeatureMatrix& matrix);

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // value <= threshold goes left
    std::int32_t left = -1;
    std::int32_t right = -1;
    SentimentLabel label = SentimentLabel::Negative;
    std::array<std::size_t, 2> counts{};
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    SentimentLabel predict(const DocVector& vec) const;
};

struct RFParams {
    std::size_t n_trees = 100;
    std::size_t max_features = 0;  // 0 -> floor(sqrt(|vocab|))
    bool bootstrap = true;         // all-data mode exists for degenerate-forest checks
};

// Gini random forest over count (or tf-idf) features; thresholds at
// midpoints of observed values. Ties in the vote go to Negative.
struct RFModel {
    std::vector<DecisionTree> trees;
    RFParams params;
    std::uint64_t seed = 0;
    std::size_t vocab_size = 0;

    Prediction predict(const DocVector& vec) const;
    void save(std::ostream& out) const;
    static RFModel load(std::istream& in);
};

RFModel train_rf(const FeatureMatrix& matrix, RFParams params = {}, std::uint64_t seed = 0);

}  // namespace senti
