#include "senti/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace senti {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c) != 0 || c == '\'') {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& documents,
                             std::size_t min_word_frequency) {
    if (documents.empty()) throw std::invalid_argument("Vocabulary::build: no documents");
    if (min_word_frequency < 1) throw std::invalid_argument("Vocabulary::build: min_word_frequency must be >= 1");

    // std::map keeps terms sorted, which fixes the index assignment.
    std::map<std::string, std::pair<std::size_t, std::size_t>> freq;  // term -> (coll, doc)
    std::unordered_map<std::string, std::size_t> local;
    for (const auto& doc : documents) {
        local.clear();
        for (const auto& token : doc) local[token] += 1;
        for (const auto& [term, count] : local) {
            auto& f = freq[term];
            f.first += count;
            f.second += 1;
        }
    }

    Vocabulary vocab;
    vocab.n_documents_ = documents.size();
    vocab.min_word_frequency_ = min_word_frequency;
    for (const auto& [term, counts] : freq) {
        if (counts.first >= min_word_frequency) {
            vocab.index_.emplace(term, vocab.terms_.size());
            vocab.terms_.push_back(term);
            vocab.coll_freq_.push_back(counts.first);
            vocab.doc_freq_.push_back(counts.second);
        }
    }
    return vocab;
}

std::int64_t Vocabulary::index_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void Vocabulary::dump_tsv(std::ostream& out) const {
    out << "term\tindex\tdoc_freq\tcoll_freq\n";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        out << terms_[i] << '\t' << i << '\t' << doc_freq_[i] << '\t' << coll_freq_[i] << '\n';
    }
}

double DocVector::dot(const std::vector<double>& dense) const {
    double sum = 0.0;
    for (const auto& [index, weight] : entries) sum += weight * dense[index];
    return sum;
}

namespace {

std::vector<std::pair<std::uint32_t, double>> term_counts(const std::vector<std::string>& tokens,
                                                          const Vocabulary& vocab) {
    std::unordered_map<std::uint32_t, double> counts;
    for (const auto& token : tokens) {
        const std::int64_t index = vocab.index_of(token);
        if (index >= 0) counts[static_cast<std::uint32_t>(index)] += 1.0;
    }
    std::vector<std::pair<std::uint32_t, double>> entries(counts.begin(), counts.end());
    std::sort(entries.begin(), entries.end());
    return entries;
}

}  // namespace

DocVector vectorize_bow(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    if (vocab.empty()) throw std::invalid_argument("vectorize_bow: empty vocabulary");
    return DocVector{term_counts(tokens, vocab), Representation::BOW};
}

DocVector vectorize_tfidf(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    if (vocab.empty()) throw std::invalid_argument("vectorize_tfidf: empty vocabulary");
    if (vocab.n_documents() == 0) throw std::invalid_argument("vectorize_tfidf: vocabulary has no document statistics");
    DocVector vec{term_counts(tokens, vocab), Representation::TFIDF};
    const double n = static_cast<double>(vocab.n_documents());
    for (auto& [index, weight] : vec.entries) {
        const double df = static_cast<double>(vocab.document_frequency(index));
        weight *= 1.0 + std::log(n / df);
    }
    return vec;
}

void export_matrix_csv(const FeatureMatrix& matrix, std::ostream& triplets, std::ostream& labels) {
    triplets << "doc_index,term_index,weight\n";
    labels << "doc_index,label\n";
    for (std::size_t doc = 0; doc < matrix.vectors.size(); ++doc) {
        for (const auto& [index, weight] : matrix.vectors[doc].entries) {
            triplets << doc << ',' << index << ',' << weight << '\n';
        }
        labels << doc << ',' << to_string(matrix.labels[doc]) << '\n';
    }
}

}  // namespace senti
