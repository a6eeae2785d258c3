#include "senti/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "senti/features.hpp"

namespace senti {

namespace {

std::string to_lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

}  // namespace

Message make_message(const RawComment& raw) {
    return Message{raw.id, raw.body, word_count(raw.body), Source::from_subreddit(raw.subreddit)};
}

void LengthBand::validate() const {
    if (min_words > max_words) throw std::invalid_argument("length band: min_words > max_words");
}

DumpReader::DumpReader(const std::string& path) : in_(path), path_(path) {
    if (!in_.is_open()) throw std::runtime_error("cannot open dump file: " + path);
}

std::optional<RawComment> DumpReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        // parse without exceptions; invalid UTF-8 also lands here
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            ++skipped_;
            continue;
        }
        if (!record.contains("id") || !record["id"].is_string() || !record.contains("body") ||
            !record["body"].is_string()) {
            ++skipped_;
            continue;
        }
        RawComment raw;
        raw.id = record["id"].get<std::string>();
        raw.body = record["body"].get<std::string>();
        if (raw.id.empty() || !seen_ids_.insert(raw.id).second) {
            ++skipped_;
            continue;
        }
        if (record.contains("author") && record["author"].is_string())
            raw.author = record["author"].get<std::string>();
        if (record.contains("created_utc") && record["created_utc"].is_number())
            raw.created_utc = record["created_utc"].get<std::int64_t>();
        if (record.contains("subreddit") && record["subreddit"].is_string())
            raw.subreddit = record["subreddit"].get<std::string>();
        return raw;
    }
    return std::nullopt;
}

std::size_t word_count(const std::string& body) {
    std::size_t count = 0;
    bool in_word = false;
    for (unsigned char c : body) {
        if (std::isspace(c) != 0) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

const std::vector<std::string>& default_covid_keywords() {
    static const std::vector<std::string> keywords = {
        "lockdown",   "pandemic",    "coronavirus", "quarantine", "covid",
        "vaccine",    "first dose",  "second dose", "third dose", "booster",
        "vaccination", "first shot", "second shot", "third shot",
    };
    return keywords;
}

bool is_covid_related(const std::string& body, const std::vector<std::string>& keywords) {
    if (keywords.empty()) throw std::invalid_argument("is_covid_related: empty keyword list");
    if (body.empty()) return false;
    const std::vector<std::string> tokens = tokenize(body);
    if (tokens.empty()) return false;
    for (const auto& keyword : keywords) {
        const std::vector<std::string> phrase = tokenize(keyword);
        if (phrase.empty()) continue;
        if (phrase.size() == 1) {
            for (const auto& token : tokens) {
                if (token.starts_with(phrase[0])) return true;
            }
        } else if (phrase.size() <= tokens.size()) {
            for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
                if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + i)) return true;
            }
        }
    }
    return false;
}

const std::vector<std::string>& default_bot_blocklist() {
    static const std::vector<std::string> blocklist = {"AutoModerator"};
    return blocklist;
}

bool is_bot(const std::string& author, const std::string& body,
            const std::vector<std::string>& blocklist) {
    const std::string author_lower = to_lower(author);
    if (author_lower.ends_with("bot")) return true;
    for (const auto& blocked : blocklist) {
        if (author_lower == to_lower(blocked)) return true;
    }
    // strip markdown emphasis so "^I ^am ^a ^bot" self-declarations match
    std::string normalized;
    normalized.reserve(body.size());
    bool in_space = false;
    for (unsigned char c : body) {
        if (c == '^' || c == '*' || c == '_') continue;
        if (std::isspace(c) != 0) {
            if (!in_space && !normalized.empty()) normalized.push_back(' ');
            in_space = true;
        } else {
            in_space = false;
            normalized.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    static const std::string phrase = "i am a bot";
    for (std::size_t pos = normalized.find(phrase); pos != std::string::npos;
         pos = normalized.find(phrase, pos + 1)) {
        const std::size_t end = pos + phrase.size();
        const bool start_ok = pos == 0 || std::isalnum(static_cast<unsigned char>(normalized[pos - 1])) == 0;
        const bool end_ok =
            end == normalized.size() || std::isalnum(static_cast<unsigned char>(normalized[end])) == 0;
        if (start_ok && end_ok) return true;
    }
    return false;
}

LengthFilterResult filter_by_length(const std::vector<Message>& messages, LengthBand band) {
    band.validate();
    LengthFilterResult result;
    for (const auto& message : messages) {
        if (message.word_count < band.min_words) {
            ++result.dropped_short;
        } else if (message.word_count > band.max_words) {
            ++result.dropped_long;
        } else {
            result.retained.push_back(message);
        }
    }
    return result;
}

void CorpusStatsBuilder::add_raw(const RawComment& raw) {
    authors_.insert(raw.author);
    ++stats_.messages_posted;
}

void CorpusStatsBuilder::add_covid(const Message& message, LengthBand band) {
    ++stats_.covid_related;
    if (message.word_count < band.min_words) {
        ++stats_.below_band;
    } else if (message.word_count > band.max_words) {
        ++stats_.above_band;
    } else {
        ++stats_.in_band;
    }
}

void CorpusStatsBuilder::merge(const CorpusStatsBuilder& other) {
    authors_.insert(other.authors_.begin(), other.authors_.end());
    stats_.messages_posted += other.stats_.messages_posted;
    stats_.covid_related += other.stats_.covid_related;
    stats_.below_band += other.stats_.below_band;
    stats_.above_band += other.stats_.above_band;
    stats_.in_band += other.stats_.in_band;
}

CorpusStats CorpusStatsBuilder::finish() const {
    CorpusStats stats = stats_;
    stats.contributors = authors_.size();
    return stats;
}

CorpusStats corpus_stats(const std::vector<RawComment>& raw, const std::vector<Message>& covid,
                         LengthBand band) {
    band.validate();
    CorpusStatsBuilder builder;
    for (const auto& comment : raw) builder.add_raw(comment);
    for (const auto& message : covid) builder.add_covid(message, band);
    return builder.finish();
}

void write_stats_csv(const CorpusStats& stats, std::ostream& out) {
    out << "name,count\n";
    out << "contributors," << stats.contributors << '\n';
    out << "messages_posted," << stats.messages_posted << '\n';
    out << "covid_related," << stats.covid_related << '\n';
    out << "below_band," << stats.below_band << '\n';
    out << "above_band," << stats.above_band << '\n';
    out << "in_band," << stats.in_band << '\n';
}

void write_dump_line(const RawComment& raw, std::ostream& out) {
    nlohmann::json record{
        {"id", raw.id},
        {"author", raw.author},
        {"body", raw.body},
        {"created_utc", raw.created_utc},
        {"subreddit", raw.subreddit},
    };
    out << record.dump() << '\n';
}

}  // namespace senti
