#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "senti/types.hpp"

namespace senti {

// One record of a comment dump, as found on disk.
struct RawComment {
    std::string id;
    std::string author;
    std::string body;
    std::int64_t created_utc = 0;
    std::string subreddit;
};

// The unit that flows through every later stage.
struct Message {
    std::string id;
    std::string body;
    std::size_t word_count = 0;
    Source source;
};

Message make_message(const RawComment& raw);

// Inclusive retention band on whitespace-delimited word counts.
struct LengthBand {
    std::size_t min_words = 11;
    std::size_t max_words = 249;

    bool contains(std::size_t word_count) const {
        return word_count >= min_words && word_count <= max_words;
    }
    void validate() const;
};

struct CorpusStats {
    std::size_t contributors = 0;
    std::size_t messages_posted = 0;
    std::size_t covid_related = 0;
    std::size_t below_band = 0;
    std::size_t above_band = 0;
    std::size_t in_band = 0;
};

// Streaming reader over a line-delimited dump: one JSON object per line with
// fields id, author, body, created_utc, subreddit (extra fields ignored).
// Malformed lines (bad JSON, invalid UTF-8, missing/empty id or body, and
// duplicated ids) are counted and skipped, never fatal. An unreadable file is.
class DumpReader {
public:
    explicit DumpReader(const std::string& path);

    std::optional<RawComment> next();
    std::size_t skipped() const { return skipped_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t skipped_ = 0;
    std::unordered_set<std::string> seen_ids_;
};

std::size_t word_count(const std::string& body);

// The default pandemic keyword phrases.
const std::vector<std::string>& default_covid_keywords();

// True iff some keyword phrase occurs in the body as a contiguous token
// sequence (tokenized like the classifier side, lowercased). Single-word
// keywords match by token prefix, so "vaccine" also matches "vaccines".
bool is_covid_related(const std::string& body, const std::vector<std::string>& keywords);

const std::vector<std::string>& default_bot_blocklist();

// Author ends in "bot" (case-insensitive), author is blocklisted, or the
// body self-declares ("i am a bot", matched after stripping markdown
// emphasis characters).
bool is_bot(const std::string& author, const std::string& body,
            const std::vector<std::string>& blocklist = default_bot_blocklist());

struct LengthFilterResult {
    std::vector<Message> retained;
    std::size_t dropped_short = 0;
    std::size_t dropped_long = 0;
};

LengthFilterResult filter_by_length(const std::vector<Message>& messages, LengthBand band);

// Folds dump records and covid-filtered messages into CorpusStats.
// Mergeable, so disjoint shards can be folded independently.
class CorpusStatsBuilder {
public:
    void add_raw(const RawComment& raw);
    void add_covid(const Message& message, LengthBand band);
    void merge(const CorpusStatsBuilder& other);
    CorpusStats finish() const;

private:
    std::unordered_set<std::string> authors_;
    CorpusStats stats_;
};

CorpusStats corpus_stats(const std::vector<RawComment>& raw, const std::vector<Message>& covid,
                         LengthBand band);

// CSV report, one row per bucket: name,count.
void write_stats_csv(const CorpusStats& stats, std::ostream& out);

// Re-emits a comment in the dump's line-delimited format.
void write_dump_line(const RawComment& raw, std::ostream& out);

}  // namespace senti
