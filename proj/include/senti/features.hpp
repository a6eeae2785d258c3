#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "senti/types.hpp"

namespace senti {

// Classifier-side tokenizer: lowercase, split on any character that is
// neither alphanumeric nor an apostrophe, drop empty tokens. Distinct from
// the case-preserving scorer tokenizer in lexsent.
std::vector<std::string> tokenize(const std::string& text);

enum class Representation { BOW, TFIDF };

inline const char* to_string(Representation r) {
    return r == Representation::BOW ? "bow" : "tfidf";
}

// Term index over a training corpus. Terms whose collection frequency falls
// below min_word_frequency are pruned; surviving terms get dense indices in
// lexicographic order, so construction is deterministic.
class Vocabulary {
public:
    Vocabulary() = default;

    static Vocabulary build(const std::vector<std::vector<std::string>>& documents,
                            std::size_t min_word_frequency);

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    std::size_t n_documents() const { return n_documents_; }
    std::size_t min_word_frequency() const { return min_word_frequency_; }

    // -1 when the term is out of vocabulary.
    std::int64_t index_of(const std::string& term) const;
    const std::string& term_at(std::size_t index) const { return terms_.at(index); }
    std::size_t document_frequency(std::size_t index) const { return doc_freq_.at(index); }
    std::size_t collection_frequency(std::size_t index) const { return coll_freq_.at(index); }

    // TSV dump: term, index, doc_freq, coll_freq.
    void dump_tsv(std::ostream& out) const;

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> doc_freq_;
    std::vector<std::size_t> coll_freq_;
    std::size_t n_documents_ = 0;
    std::size_t min_word_frequency_ = 1;
};

// Sparse document vector; entries sorted by term index, weights > 0.
struct DocVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
    Representation representation = Representation::BOW;

    double dot(const std::vector<double>& dense) const;
    std::size_t nnz() const { return entries.size(); }
};

DocVector vectorize_bow(const std::vector<std::string>& tokens, const Vocabulary& vocab);
DocVector vectorize_tfidf(const std::vector<std::string>& tokens, const Vocabulary& vocab);

struct FeatureMatrix {
    std::vector<DocVector> vectors;
    std::vector<SentimentLabel> labels;  // Positive or Negative only
    const Vocabulary* vocabulary = nullptr;

    std::size_t n_documents() const { return vectors.size(); }
};

// Sparse triplet export: doc_index,term_index,weight. Labels go to a
// parallel CSV of doc_index,label.
void export_matrix_csv(const FeatureMatrix& matrix, std::ostream& triplets, std::ostream& labels);

}  // namespace senti
