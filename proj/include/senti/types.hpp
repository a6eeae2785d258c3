#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace senti {

enum class SentimentLabel { Positive, Negative, Neutral };

inline const char* to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive: return "positive";
        case SentimentLabel::Negative: return "negative";
        case SentimentLabel::Neutral: return "neutral";
    }
    return "neutral";
}

inline SentimentLabel sentiment_label_from_string(const std::string& s) {
    if (s == "positive") return SentimentLabel::Positive;
    if (s == "negative") return SentimentLabel::Negative;
    if (s == "neutral") return SentimentLabel::Neutral;
    throw std::invalid_argument("unknown sentiment label: '" + s + "'");
}

// Subreddit provenance. Anything that is not one of the two study
// subreddits keeps its name in `other`.
struct Source {
    enum class Kind { Canada, UK, Other };

    Kind kind = Kind::Other;
    std::string other;

    static Source from_subreddit(const std::string& subreddit);
    std::string name() const;

    bool operator==(const Source& rhs) const = default;
};

inline Source Source::from_subreddit(const std::string& subreddit) {
    std::string lower;
    lower.reserve(subreddit.size());
    for (char c : subreddit) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "canada") return {Kind::Canada, {}};
    if (lower == "unitedkingdom") return {Kind::UK, {}};
    return {Kind::Other, subreddit};
}

inline std::string Source::name() const {
    switch (kind) {
        case Kind::Canada: return "canada";
        case Kind::UK: return "uk";
        case Kind::Other: return other;
    }
    return other;
}

}  // namespace senti
