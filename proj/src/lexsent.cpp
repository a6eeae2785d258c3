#include "senti/lexsent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "senti/features.hpp"

namespace senti {

namespace {

std::string to_lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

bool is_all_caps(const std::string& token) {
    bool has_alpha = false;
    for (unsigned char c : token) {
        if (std::isalpha(c) != 0) {
            has_alpha = true;
            if (std::islower(c) != 0) return false;
        }
    }
    return has_alpha;
}

// true when some but not all tokens are ALL-CAPS
bool has_mixed_caps(const std::vector<std::string>& tokens) {
    std::size_t caps = 0;
    for (const auto& token : tokens) {
        if (is_all_caps(token)) ++caps;
    }
    return caps > 0 && caps < tokens.size();
}

std::string strip_line(const std::string& line) {
    const auto begin = line.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = line.find_last_not_of(" \t\r\n");
    return line.substr(begin, end - begin + 1);
}

// entries of a `term<TAB>value` TSV; '#' starts a comment line
void load_tsv_entries(const std::string& path, std::unordered_map<std::string, double>& out,
                      const char* what) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error(std::string("cannot open ") + what + " file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = strip_line(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto tab = stripped.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error(std::string(what) + " file " + path + " line " +
                                     std::to_string(line_no) + ": expected term<TAB>value");
        }
        const std::string term = to_lower(strip_line(stripped.substr(0, tab)));
        const std::string value_text = strip_line(stripped.substr(tab + 1));
        if (term.empty()) {
            throw std::runtime_error(std::string(what) + " file " + path + " line " +
                                     std::to_string(line_no) + ": empty term");
        }
        try {
            out[term] = std::stod(value_text);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + " file " + path + " line " +
                                     std::to_string(line_no) + ": bad value '" + value_text + "'");
        }
    }
}

void load_term_list(const std::string& path, std::unordered_set<std::string>& out, const char* what) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error(std::string("cannot open ") + what + " file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = strip_line(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        out.insert(to_lower(stripped));
    }
}

}  // namespace

void ValenceLexicon::validate() const {
    for (const auto& [term, value] : boosters) {
        (void)value;
        if (entries.count(term) != 0)
            throw std::invalid_argument("valence lexicon: '" + term + "' is both entry and booster");
        if (negators.count(term) != 0)
            throw std::invalid_argument("valence lexicon: '" + term + "' is both booster and negator");
    }
    for (const auto& term : negators) {
        if (entries.count(term) != 0)
            throw std::invalid_argument("valence lexicon: '" + term + "' is both entry and negator");
    }
}

void PolarityLexicon::validate() const {
    for (const auto& [term, polarity] : entries) {
        if (polarity < -1.0 || polarity > 1.0)
            throw std::invalid_argument("polarity lexicon: '" + term + "' polarity outside [-1, 1]");
        if (negators.count(term) != 0)
            throw std::invalid_argument("polarity lexicon: '" + term + "' is both entry and negator");
    }
}

ValenceLexicon load_valence_lexicon(const std::string& entries_path,
                                    const std::string& boosters_path,
                                    const std::string& negators_path,
                                    double default_booster_increment) {
    ValenceLexicon lexicon;
    load_tsv_entries(entries_path, lexicon.entries, "valence lexicon");

    std::ifstream in(boosters_path);
    if (!in.is_open()) throw std::runtime_error("cannot open booster file: " + boosters_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = strip_line(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto tab = stripped.find('\t');
        if (tab == std::string::npos) {
            lexicon.boosters[to_lower(stripped)] = default_booster_increment;
        } else {
            const std::string term = to_lower(strip_line(stripped.substr(0, tab)));
            try {
                lexicon.boosters[term] = std::stod(strip_line(stripped.substr(tab + 1)));
            } catch (const std::exception&) {
                throw std::runtime_error("booster file " + boosters_path + " line " +
                                         std::to_string(line_no) + ": bad increment");
            }
        }
    }

    load_term_list(negators_path, lexicon.negators, "negator");
    lexicon.validate();
    return lexicon;
}

PolarityLexicon load_polarity_lexicon(const std::string& entries_path,
                                      const std::string& negators_path) {
    PolarityLexicon lexicon;
    load_tsv_entries(entries_path, lexicon.entries, "polarity lexicon");
    load_term_list(negators_path, lexicon.negators, "polarity negator");
    lexicon.validate();
    return lexicon;
}

std::vector<std::string> scorer_tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string piece;
    auto flush = [&] {
        if (piece.empty()) return;
        std::size_t begin = 0;
        std::size_t end = piece.size();
        while (begin < end && std::ispunct(static_cast<unsigned char>(piece[begin])) != 0) ++begin;
        while (end > begin && std::ispunct(static_cast<unsigned char>(piece[end - 1])) != 0) --end;
        if (end > begin) tokens.push_back(piece.substr(begin, end - begin));
        piece.clear();
    };
    for (unsigned char c : text) {
        if (std::isspace(c) != 0) {
            flush();
        } else {
            piece.push_back(static_cast<char>(c));
        }
    }
    flush();
    return tokens;
}

SentimentScore score_valence(const std::string& text, const ValenceLexicon& lexicon,
                             const ValenceParams& params) {
    if (lexicon.empty()) throw std::invalid_argument("score_valence: empty lexicon");

    const std::vector<std::string> tokens = scorer_tokenize(text);
    std::vector<std::string> lower;
    lower.reserve(tokens.size());
    for (const auto& token : tokens) lower.push_back(to_lower(token));
    const bool mixed_caps = has_mixed_caps(tokens);

    std::vector<double> sentiments(tokens.size(), 0.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto it = lexicon.entries.find(lower[i]);
        if (it == lexicon.entries.end()) continue;
        double valence = it->second;

        if (mixed_caps && is_all_caps(tokens[i])) {
            valence += valence > 0.0 ? params.caps_boost : -params.caps_boost;
        }

        for (std::size_t distance = 1; distance <= 3 && distance <= i; ++distance) {
            const std::string& prec = lower[i - distance];
            // a preceding sentiment token carries its own valence; it
            // neither boosts nor negates this one
            if (lexicon.entries.count(prec) != 0) continue;

            const auto booster = lexicon.boosters.find(prec);
            if (booster != lexicon.boosters.end()) {
                double scalar = booster->second;
                if (valence < 0.0) scalar = -scalar;
                if (mixed_caps && is_all_caps(tokens[i - distance])) {
                    scalar += valence > 0.0 ? params.caps_boost : -params.caps_boost;
                }
                if (distance == 2) scalar *= params.damp_distance2;
                if (distance == 3) scalar *= params.damp_distance3;
                valence += scalar;
            }
            if (lexicon.negators.count(prec) != 0) {
                valence *= params.negation_factor;
            }
        }
        sentiments[i] = valence;
    }

    const auto but = std::find(lower.begin(), lower.end(), "but");
    if (but != lower.end()) {
        const std::size_t but_index = static_cast<std::size_t>(but - lower.begin());
        for (std::size_t i = 0; i < sentiments.size(); ++i) {
            if (i < but_index) sentiments[i] *= params.but_before_weight;
            if (i > but_index) sentiments[i] *= params.but_after_weight;
        }
    }

    double sum = std::accumulate(sentiments.begin(), sentiments.end(), 0.0);

    const std::size_t exclamations =
        std::min<std::size_t>(static_cast<std::size_t>(std::count(text.begin(), text.end(), '!')),
                              params.max_exclamations);
    const double emphasis = static_cast<double>(exclamations) * params.exclamation_increment;
    if (sum > 0.0) {
        sum += emphasis;
    } else if (sum < 0.0) {
        sum -= emphasis;
    }

    double compound = sum / std::sqrt(sum * sum + params.alpha);
    compound = std::clamp(compound, -1.0, 1.0);
    return SentimentScore{compound, ScorerKind::Valence};
}

SentimentScore score_polarity(const std::string& text, const PolarityLexicon& lexicon) {
    if (lexicon.empty()) throw std::invalid_argument("score_polarity: empty lexicon");

    const std::vector<std::string> tokens = tokenize(text);
    double sum = 0.0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto it = lexicon.entries.find(tokens[i]);
        if (it == lexicon.entries.end()) continue;
        double polarity = it->second;
        for (std::size_t distance = 1; distance <= 2 && distance <= i; ++distance) {
            if (lexicon.negators.count(tokens[i - distance]) != 0) {
                polarity *= -0.5;
                break;
            }
        }
        sum += polarity;
        ++matched;
    }
    const double value = matched == 0 ? 0.0 : sum / static_cast<double>(matched);
    return SentimentScore{value, ScorerKind::Polarity};
}

SentimentLabel binarize(const SentimentScore& score, const BinarizeThresholds& thresholds) {
    if (thresholds.t_neg > thresholds.t_pos)
        throw std::invalid_argument("binarize: t_neg must not exceed t_pos");
    if (score.value >= thresholds.t_pos) return SentimentLabel::Positive;
    if (score.value <= thresholds.t_neg) return SentimentLabel::Negative;
    return SentimentLabel::Neutral;
}

std::optional<SentimentLabel> consensus(SentimentLabel label_a, SentimentLabel label_b) {
    if (label_a == label_b && label_a != SentimentLabel::Neutral) return label_a;
    return std::nullopt;
}

ConsensusRecord make_consensus_record(std::string message_id, SentimentLabel label_a,
                                      SentimentLabel label_b) {
    ConsensusRecord record;
    record.message_id = std::move(message_id);
    record.label_a = label_a;
    record.label_b = label_b;
    record.consensus = consensus(label_a, label_b);
    return record;
}

AgreementStats agreement_stats(const std::vector<ConsensusRecord>& records) {
    if (records.empty()) throw std::invalid_argument("agreement_stats: no records");
    std::size_t agreed_positive = 0;
    std::size_t agreed_negative = 0;
    for (const auto& record : records) {
        if (record.consensus == SentimentLabel::Positive) ++agreed_positive;
        if (record.consensus == SentimentLabel::Negative) ++agreed_negative;
    }
    return agreement_stats_from_counts(agreed_positive, agreed_negative, records.size());
}

AgreementStats agreement_stats_from_counts(std::size_t agreed_positive,
                                           std::size_t agreed_negative, std::size_t total) {
    if (total == 0) throw std::invalid_argument("agreement_stats: total is zero");
    if (agreed_positive + agreed_negative > total)
        throw std::invalid_argument("agreement_stats: agreed counts exceed total");
    AgreementStats stats;
    stats.agreed_positive = agreed_positive;
    stats.agreed_negative = agreed_negative;
    stats.total = total;
    stats.inconsistent = total - agreed_positive - agreed_negative;
    stats.agreement_pct =
        100.0 * static_cast<double>(agreed_positive + agreed_negative) / static_cast<double>(total);
    stats.positive_share_pct =
        100.0 * static_cast<double>(agreed_positive) / static_cast<double>(total);
    return stats;
}

void write_consensus_csv(const std::vector<ConsensusRecord>& records, std::ostream& out) {
    out << "message_id,label_a,label_b,consensus\n";
    for (const auto& record : records) {
        out << record.message_id << ',' << to_string(record.label_a) << ','
            << to_string(record.label_b) << ',';
        if (record.consensus) out << to_string(*record.consensus);
        out << '\n';
    }
}

std::vector<ConsensusRecord> read_consensus_csv(std::istream& in) {
    std::vector<ConsensusRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("message_id,", 0) == 0) continue;
        }
        std::stringstream ss(line);
        std::string id, a, b, c;
        if (!std::getline(ss, id, ',') || !std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw std::runtime_error("consensus CSV: malformed line: " + line);
        std::getline(ss, c, ',');
        ConsensusRecord record = make_consensus_record(id, sentiment_label_from_string(a),
                                                       sentiment_label_from_string(b));
        if (record.consensus.has_value() != !c.empty()) {
            throw std::runtime_error("consensus CSV: consensus column inconsistent for id " + id);
        }
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace senti
