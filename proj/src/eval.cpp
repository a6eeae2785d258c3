#include "senti/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "senti/seed.hpp"

namespace senti {

namespace {

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassMetrics m;
    m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = m.precision + m.recall == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

void write_double(std::ostream& out, double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.write(buffer, result.ptr - buffer);
}

}  // namespace

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("compute_metrics: empty confusion matrix");
    MetricsReport report;
    report.positive = class_metrics(cm.counts[kPositive][kPositive],
                                    cm.counts[kNegative][kPositive],
                                    cm.counts[kPositive][kNegative]);
    report.negative = class_metrics(cm.counts[kNegative][kNegative],
                                    cm.counts[kPositive][kNegative],
                                    cm.counts[kNegative][kPositive]);
    report.macro_precision = (report.positive.precision + report.negative.precision) / 2.0;
    report.macro_recall = (report.positive.recall + report.negative.recall) / 2.0;
    report.macro_f1 = (report.positive.f1 + report.negative.f1) / 2.0;
    report.accuracy = static_cast<double>(cm.counts[kPositive][kPositive] +
                                          cm.counts[kNegative][kNegative]) /
                      static_cast<double>(cm.total());
    return report;
}

CVPlan stratified_kfold(const std::vector<SentimentLabel>& labels, std::size_t k,
                        std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
    CVPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.fold_of.assign(labels.size(), 0);

    for (std::size_t cls = 0; cls < 2; ++cls) {
        const SentimentLabel wanted = cls == kPositive ? SentimentLabel::Positive
                                                       : SentimentLabel::Negative;
        std::vector<std::uint32_t> indices;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == wanted) indices.push_back(static_cast<std::uint32_t>(i));
        }
        if (indices.size() < k) {
            throw std::invalid_argument("stratified_kfold: class '" +
                                        std::string(to_string(wanted)) + "' has " +
                                        std::to_string(indices.size()) + " members, needs >= " +
                                        std::to_string(k));
        }
        std::mt19937_64 rng(derive_seed(seed, "fold-shuffle", cls));
        for (std::size_t i = indices.size(); i > 1; --i) {
            std::swap(indices[i - 1], indices[rng() % i]);
        }
        for (std::size_t i = 0; i < indices.size(); ++i) {
            plan.fold_of[indices[i]] = static_cast<std::uint32_t>(i % k);
        }
    }
    return plan;
}

const char* to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::NB: return "nb";
        case Algorithm::SVM: return "svm";
        case Algorithm::RF: return "rf";
    }
    return "nb";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "nb") return Algorithm::NB;
    if (name == "svm") return Algorithm::SVM;
    if (name == "rf") return Algorithm::RF;
    throw std::invalid_argument("unknown algorithm: '" + name + "' (expected nb, svm or rf)");
}

Representation representation_from_string(const std::string& name) {
    if (name == "bow") return Representation::BOW;
    if (name == "tfidf") return Representation::TFIDF;
    throw std::invalid_argument("unknown representation: '" + name + "' (expected bow or tfidf)");
}

MetricsReport cross_validate_with(const LabeledCorpus& corpus, const Trainer& trainer,
                                  Representation representation, std::size_t min_freq,
                                  const CVPlan& cv, std::uint64_t train_seed,
                                  VocabularyMode vocab_mode) {
    if (corpus.documents.size() != corpus.labels.size())
        throw std::invalid_argument("cross_validate: documents/labels length mismatch");
    if (cv.fold_of.size() != corpus.size())
        throw std::invalid_argument("cross_validate: CV plan does not cover the corpus");

    const auto vectorize = [&](const std::vector<std::string>& tokens, const Vocabulary& vocab) {
        return representation == Representation::BOW ? vectorize_bow(tokens, vocab)
                                                     : vectorize_tfidf(tokens, vocab);
    };

    Vocabulary global_vocab;
    if (vocab_mode == VocabularyMode::Global) {
        global_vocab = Vocabulary::build(corpus.documents, min_freq);
        if (global_vocab.empty()) {
            throw std::runtime_error("cross_validate: vocabulary is empty at min_freq=" +
                                     std::to_string(min_freq));
        }
    }

    ConfusionMatrix pooled;
    for (std::uint32_t fold = 0; fold < cv.k; ++fold) {
        std::vector<std::size_t> train_indices;
        std::vector<std::size_t> test_indices;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            (cv.fold_of[i] == fold ? test_indices : train_indices).push_back(i);
        }
        // canonical training order: fold content, not corpus order, decides
        // what seeded trainers see
        std::sort(train_indices.begin(), train_indices.end(), [&](std::size_t a, std::size_t b) {
            if (corpus.documents[a] != corpus.documents[b])
                return corpus.documents[a] < corpus.documents[b];
            return corpus.labels[a] < corpus.labels[b];
        });
        std::vector<std::vector<std::string>> train_docs;
        std::vector<SentimentLabel> train_labels;
        train_docs.reserve(train_indices.size());
        for (std::size_t i : train_indices) {
            train_docs.push_back(corpus.documents[i]);
            train_labels.push_back(corpus.labels[i]);
        }

        Vocabulary fold_vocab;
        if (vocab_mode == VocabularyMode::PerFold)
            fold_vocab = Vocabulary::build(train_docs, min_freq);
        const Vocabulary& vocab =
            vocab_mode == VocabularyMode::Global ? global_vocab : fold_vocab;
        if (vocab.empty()) {
            throw std::runtime_error("cross_validate: vocabulary is empty at min_freq=" +
                                     std::to_string(min_freq));
        }

        FeatureMatrix train;
        train.vocabulary = &vocab;
        train.labels = std::move(train_labels);
        train.vectors.reserve(train_docs.size());
        for (const auto& doc : train_docs) train.vectors.push_back(vectorize(doc, vocab));

        const Predictor predict = trainer(train, derive_seed(train_seed, "cv-fold", fold));
        for (std::size_t i : test_indices) {
            const DocVector vec = vectorize(corpus.documents[i], vocab);
            pooled.add(corpus.labels[i], predict(vec, i));
        }
    }
    return compute_metrics(pooled);
}

MetricsReport cross_validate(const LabeledCorpus& corpus, Algorithm algorithm,
                             Representation representation, std::size_t min_freq,
                             const ClassifierParams& params, const CVPlan& cv,
                             VocabularyMode vocab_mode) {
    Trainer trainer;
    switch (algorithm) {
        case Algorithm::NB:
            trainer = [&params](const FeatureMatrix& train, std::uint64_t) {
                auto model = std::make_shared<NBModel>(train_nb(train, params.nb_alpha));
                return Predictor([model](const DocVector& vec, std::size_t) {
                    return model->predict(vec).label;
                });
            };
            break;
        case Algorithm::SVM:
            trainer = [&params](const FeatureMatrix& train, std::uint64_t seed) {
                auto model = std::make_shared<SVMModel>(
                    train_svm(train, params.svm_c, params.svm_epochs, seed));
                return Predictor([model](const DocVector& vec, std::size_t) {
                    return model->predict(vec).label;
                });
            };
            break;
        case Algorithm::RF:
            trainer = [&params](const FeatureMatrix& train, std::uint64_t seed) {
                auto model = std::make_shared<RFModel>(train_rf(train, params.rf, seed));
                return Predictor([model](const DocVector& vec, std::size_t) {
                    return model->predict(vec).label;
                });
            };
            break;
    }
    return cross_validate_with(corpus, trainer, representation, min_freq, cv, params.seed,
                               vocab_mode);
}

GridResult grid_search(const LabeledCorpus& corpus, const std::vector<Algorithm>& algorithms,
                       const std::vector<Representation>& representations,
                       std::size_t min_freq_lo, std::size_t min_freq_hi,
                       const ClassifierParams& params, const CVPlan& cv, unsigned threads,
                       VocabularyMode vocab_mode) {
    if (min_freq_lo < 1 || min_freq_lo > min_freq_hi)
        throw std::invalid_argument("grid_search: bad min_freq range");
    if (algorithms.empty() || representations.empty())
        throw std::invalid_argument("grid_search: empty algorithm or representation set");

    GridResult result;
    for (Algorithm algorithm : algorithms) {
        for (Representation representation : representations) {
            for (std::size_t mf = min_freq_lo; mf <= min_freq_hi; ++mf) {
                GridRow row;
                row.algorithm = algorithm;
                row.representation = representation;
                row.min_freq = mf;
                result.rows.push_back(row);
            }
        }
    }

    const auto run_cell = [&](GridRow& row) {
        try {
            row.metrics = cross_validate(corpus, row.algorithm, row.representation, row.min_freq,
                                         params, cv, vocab_mode);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    };

    if (threads <= 1) {
        for (auto& row : result.rows) run_cell(row);
    } else {
        // rows are preallocated, so finishing order cannot affect the output
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned worker_count =
            std::min<unsigned>(threads, static_cast<unsigned>(result.rows.size()));
        pool.reserve(worker_count);
        for (unsigned t = 0; t < worker_count; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= result.rows.size()) break;
                    run_cell(result.rows[i]);
                }
            });
        }
        for (auto& worker : pool) worker.join();
    }

    for (Algorithm algorithm : algorithms) {
        std::size_t best_index = result.rows.size();
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const GridRow& row = result.rows[i];
            if (row.algorithm != algorithm || !row.ok) continue;
            if (best_index == result.rows.size()) {
                best_index = i;
                continue;
            }
            const GridRow& best = result.rows[best_index];
            if (row.metrics.macro_f1 > best.metrics.macro_f1 ||
                (row.metrics.macro_f1 == best.metrics.macro_f1 &&
                 (row.min_freq < best.min_freq ||
                  (row.min_freq == best.min_freq &&
                   row.representation == Representation::BOW &&
                   best.representation == Representation::TFIDF)))) {
                best_index = i;
            }
        }
        if (best_index < result.rows.size()) result.rows[best_index].best = true;
    }
    return result;
}

void write_grid_csv(const GridResult& grid, const std::string& dataset, std::ostream& out) {
    out << "dataset,algorithm,representation,min_freq,precision,recall,f1,accuracy,status,best\n";
    for (const auto& row : grid.rows) {
        out << dataset << ',' << to_string(row.algorithm) << ',' << to_string(row.representation)
            << ',' << row.min_freq << ',';
        if (row.ok) {
            write_double(out, row.metrics.macro_precision);
            out << ',';
            write_double(out, row.metrics.macro_recall);
            out << ',';
            write_double(out, row.metrics.macro_f1);
            out << ',';
            write_double(out, row.metrics.accuracy);
            out << ",ok,";
        } else {
            out << ",,,,skipped,";
        }
        out << (row.best ? "best" : "") << '\n';
    }
}

void render_grid_table(const GridResult& grid, const std::string& title, std::ostream& out) {
    out << title << '\n';
    out << std::left << std::setw(6) << "" << std::setw(21) << "Min. word frequency"
        << std::setw(19) << "Precision (macro)" << std::setw(17) << "Recall (macro)"
        << std::setw(17) << "F-score (macro)" << "Accuracy\n";
    for (const auto& row : grid.rows) {
        if (!row.best) continue;
        std::string name = to_string(row.algorithm);
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        out << std::left << std::setw(6) << name << std::setw(21) << row.min_freq << std::fixed
            << std::setprecision(3) << std::setw(19) << row.metrics.macro_precision
            << std::setw(17) << row.metrics.macro_recall << std::setw(17) << row.metrics.macro_f1
            << row.metrics.accuracy << std::defaultfloat << '\n';
    }
}

}  // namespace senti
