#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "senti/corpus.hpp"
#include "senti/lexsent.hpp"

namespace senti {

// Everything a pipeline run needs, loadable from a line-oriented
// `key = value` file with [sections] and re-emittable as one. The echoed
// effective config of any run parses back to the same configuration.
struct PipelineConfig {
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    // [corpus]
    std::string input_dump;
    std::string dataset = "demo";
    LengthBand band;
    std::vector<std::string> keywords = default_covid_keywords();
    std::vector<std::string> bot_blocklist = default_bot_blocklist();
    std::int64_t start_utc = std::numeric_limits<std::int64_t>::min();
    std::int64_t end_utc = std::numeric_limits<std::int64_t>::max();

    // [lexicons]
    std::string valence_lexicon;
    std::string valence_boosters;
    std::string valence_negators;
    std::string polarity_lexicon;
    std::string polarity_negators;

    // [binarize]
    BinarizeThresholds valence_thresholds = BinarizeThresholds::valence_default();
    BinarizeThresholds polarity_thresholds = BinarizeThresholds::polarity_default();

    // [valence]
    ValenceParams valence_params;

    // [classify]
    double nb_alpha = 1.0;
    double svm_c_canada = 0.3;
    double svm_c_uk = 0.4;
    double svm_c_override = 0.0;  // 0 = pick by dataset
    std::size_t svm_epochs = 20;
    std::size_t rf_trees = 100;
    std::size_t rf_max_features = 0;  // 0 = sqrt(|vocab|)

    // [eval]
    std::size_t cv_k = 10;
    std::size_t min_freq_lo = 1;
    std::size_t min_freq_hi = 10;
    std::vector<std::string> algorithms = {"nb", "svm", "rf"};
    std::vector<std::string> representations = {"bow", "tfidf"};
    std::string vocab_mode = "per-fold";  // or "global"
    unsigned threads = 1;

    double svm_c_for(const std::string& dataset_name) const;

    void set(const std::string& section, const std::string& key, const std::string& value);
    static PipelineConfig load(const std::string& path);
    void echo(std::ostream& out) const;
};

std::vector<std::string> split_list(const std::string& value);

}  // namespace senti
