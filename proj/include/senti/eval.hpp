#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "senti/classify.hpp"
#include "senti/features.hpp"
#include "senti/types.hpp"

namespace senti {

// counts[true][predicted], indexed by class_index()
struct ConfusionMatrix {
    std::array<std::array<std::size_t, 2>, 2> counts{};

    void add(SentimentLabel truth, SentimentLabel predicted) {
        ++counts[class_index(truth)][class_index(predicted)];
    }
    std::size_t total() const {
        return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
    }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    ClassMetrics positive;
    ClassMetrics negative;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double accuracy = 0.0;
};

MetricsReport compute_metrics(const ConfusionMatrix& cm);

// Stratified fold assignment: within each class, indices are
// seeded-shuffled and dealt round-robin, so per-class fold sizes differ by
// at most one.
struct CVPlan {
    std::size_t k = 10;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> fold_of;
};

CVPlan stratified_kfold(const std::vector<SentimentLabel>& labels, std::size_t k,
                        std::uint64_t seed);

enum class Algorithm { NB, SVM, RF };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);
Representation representation_from_string(const std::string& name);

struct ClassifierParams {
    double nb_alpha = 1.0;
    double svm_c = 0.4;
    std::size_t svm_epochs = 20;
    RFParams rf;
    std::uint64_t seed = 0;  // fanned out per fold and per tree
};

// Tokenized, consensus-labeled documents; labels are binary.
struct LabeledCorpus {
    std::vector<std::vector<std::string>> documents;
    std::vector<SentimentLabel> labels;

    std::size_t size() const { return documents.size(); }
};

// Trainer seam: builds a predictor from a training matrix. The predictor
// additionally receives the corpus-level document index so test doubles can
// key on it; real classifiers ignore it.
using Predictor = std::function<SentimentLabel(const DocVector&, std::size_t)>;
using Trainer = std::function<Predictor(const FeatureMatrix&, std::uint64_t)>;

// PerFold rebuilds the vocabulary and document frequencies on the training
// folds only (no held-out leakage); Global freezes them once over the whole
// corpus, kept as a comparison mode.
enum class VocabularyMode { PerFold, Global };

// Per fold: vectorize both splits against the fold vocabulary, train, apply
// to the held-out fold. All held-out predictions pool into one confusion
// matrix.
MetricsReport cross_validate_with(const LabeledCorpus& corpus, const Trainer& trainer,
                                  Representation representation, std::size_t min_freq,
                                  const CVPlan& cv, std::uint64_t train_seed,
                                  VocabularyMode vocab_mode = VocabularyMode::PerFold);

MetricsReport cross_validate(const LabeledCorpus& corpus, Algorithm algorithm,
                             Representation representation, std::size_t min_freq,
                             const ClassifierParams& params, const CVPlan& cv,
                             VocabularyMode vocab_mode = VocabularyMode::PerFold);

struct GridRow {
    Algorithm algorithm = Algorithm::NB;
    Representation representation = Representation::BOW;
    std::size_t min_freq = 1;
    MetricsReport metrics;
    bool ok = false;
    std::string error;
    bool best = false;
};

struct GridResult {
    std::vector<GridRow> rows;
};

// Full Cartesian grid; failed cells are recorded and skipped. Per
// algorithm one row is marked best by macro F1, ties broken toward the
// smaller min_freq, then BOW before TFIDF. `threads` may exceed 1; the
// result is identical to sequential execution.
GridResult grid_search(const LabeledCorpus& corpus, const std::vector<Algorithm>& algorithms,
                       const std::vector<Representation>& representations,
                       std::size_t min_freq_lo, std::size_t min_freq_hi,
                       const ClassifierParams& params, const CVPlan& cv, unsigned threads = 1,
                       VocabularyMode vocab_mode = VocabularyMode::PerFold);

// CSV: dataset,algorithm,representation,min_freq,precision,recall,f1,accuracy,status,best
// (precision/recall/f1 are the macro averages).
void write_grid_csv(const GridResult& grid, const std::string& dataset, std::ostream& out);

// Plain-text table of the per-algorithm best rows.
void render_grid_table(const GridResult& grid, const std::string& title, std::ostream& out);

}  // namespace senti
