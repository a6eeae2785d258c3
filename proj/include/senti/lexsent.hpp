#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "senti/types.hpp"

namespace senti {

// Rule constants for the valence scorer. Defaults are the published
// constants of the rule set this scorer mirrors; every value can be
// overridden from the pipeline config.
struct ValenceParams {
    double alpha = 15.0;                  // compound normalization
    double caps_boost = 0.733;            // ALL-CAPS emphasis (mixed-case text only)
    double negation_factor = -0.74;       // sign-scaling per preceding negator
    double damp_distance2 = 0.95;         // booster decay two tokens back
    double damp_distance3 = 0.90;         // booster decay three tokens back
    double but_before_weight = 0.5;
    double but_after_weight = 1.5;
    double exclamation_increment = 0.292;  // per '!' in the raw text
    std::size_t max_exclamations = 3;
    double default_booster_increment = 0.293;  // for booster-file lines without a value
};

// term -> valence plus booster increments and negator terms. Keys are stored
// lowercased; lookups are case-insensitive.
struct ValenceLexicon {
    std::unordered_map<std::string, double> entries;
    std::unordered_map<std::string, double> boosters;
    std::unordered_set<std::string> negators;

    bool empty() const { return entries.empty(); }
    // no term may live in more than one of the three tables
    void validate() const;
};

// term -> polarity in [-1, +1] plus negator terms. Keys lowercased.
struct PolarityLexicon {
    std::unordered_map<std::string, double> entries;
    std::unordered_set<std::string> negators;

    bool empty() const { return entries.empty(); }
    void validate() const;
};

// `term<TAB>valence`, UTF-8, '#' comments. Booster lines are `term` (gets
// default_booster_increment) or `term<TAB>increment`; negator files are one
// term per line.
ValenceLexicon load_valence_lexicon(const std::string& entries_path,
                                    const std::string& boosters_path,
                                    const std::string& negators_path,
                                    double default_booster_increment = 0.293);

PolarityLexicon load_polarity_lexicon(const std::string& entries_path,
                                      const std::string& negators_path);

enum class ScorerKind { Valence, Polarity };

struct SentimentScore {
    double value = 0.0;
    ScorerKind scorer = ScorerKind::Valence;
};

// Whitespace-split tokens with leading/trailing punctuation stripped, case
// preserved. The valence rules need the original casing; this is not the
// classifier tokenizer.
std::vector<std::string> scorer_tokenize(const std::string& text);

// Rule-adjusted sum of token valences normalized to (-1, 1). Rules, in
// order per token: ALL-CAPS emphasis, booster increments from up to three
// preceding tokens with distance decay, negation sign-scaling per preceding
// negator within three tokens, then "but"-clause reweighting over the whole
// sentence and exclamation emphasis on the summed score.
SentimentScore score_valence(const std::string& text, const ValenceLexicon& lexicon,
                             const ValenceParams& params = {});

// Mean polarity of matched entries; a negator within the two preceding
// tokens multiplies that entry's polarity by -0.5. No matches -> 0.0.
SentimentScore score_polarity(const std::string& text, const PolarityLexicon& lexicon);

struct BinarizeThresholds {
    double t_pos = 0.05;
    double t_neg = -0.05;

    static BinarizeThresholds valence_default() { return {0.05, -0.05}; }
    // zero is Neutral; any matched polarity mass tips the label
    static BinarizeThresholds polarity_default() { return {1e-9, -1e-9}; }
};

SentimentLabel binarize(const SentimentScore& score, const BinarizeThresholds& thresholds);

// Some(L) iff both labels equal L and L is not Neutral.
std::optional<SentimentLabel> consensus(SentimentLabel label_a, SentimentLabel label_b);

struct ConsensusRecord {
    std::string message_id;
    SentimentLabel label_a = SentimentLabel::Neutral;
    SentimentLabel label_b = SentimentLabel::Neutral;
    std::optional<SentimentLabel> consensus;
};

ConsensusRecord make_consensus_record(std::string message_id, SentimentLabel label_a,
                                      SentimentLabel label_b);

struct AgreementStats {
    std::size_t agreed_positive = 0;
    std::size_t agreed_negative = 0;
    std::size_t inconsistent = 0;
    std::size_t total = 0;
    double agreement_pct = 0.0;      // 100 * (agreed_positive + agreed_negative) / total
    double positive_share_pct = 0.0; // 100 * agreed_positive / total
};

AgreementStats agreement_stats(const std::vector<ConsensusRecord>& records);
AgreementStats agreement_stats_from_counts(std::size_t agreed_positive,
                                           std::size_t agreed_negative, std::size_t total);

// CSV: message_id,label_a,label_b,consensus (blank consensus when none).
void write_consensus_csv(const std::vector<ConsensusRecord>& records, std::ostream& out);
std::vector<ConsensusRecord> read_consensus_csv(std::istream& in);

}  // namespace senti
