#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "senti/corpus.hpp"
#include "senti/types.hpp"

namespace senti {

// A fixed group of messages handed to every annotator of one task.
struct AnnotationTask {
    std::string task_id;
    std::vector<std::string> message_ids;
    std::string source_filter;  // informational, e.g. "tool-consensus=negative"
    std::uint64_t seed = 0;
};

// Uniform sample without replacement over the messages passing `filter`,
// deterministic given the seed.
AnnotationTask sample_messages(const std::vector<Message>& corpus, std::size_t n,
                               std::uint64_t seed,
                               const std::function<bool(const Message&)>& filter = {},
                               std::string task_id = {}, std::string source_filter = {});

void write_task(const AnnotationTask& task, std::ostream& out);
AnnotationTask read_task(std::istream& in);

struct AnnotationRecord {
    std::string task_id;
    std::string message_id;
    std::string annotator_id;
    SentimentLabel label = SentimentLabel::Negative;  // binary: Positive or Negative
    std::int64_t timestamp = 0;
};

// Append-only record store, one CSV per (task, annotator):
// task_id,message_id,annotator_id,label,timestamp
void append_annotation_record(const AnnotationRecord& record, const std::string& path);
std::vector<AnnotationRecord> read_annotation_records(const std::string& path);

struct SessionResult {
    std::vector<AnnotationRecord> records;  // all records for (task, annotator)
    bool completed = false;                 // false when quit or input ran out
};

// Blind interactive labeling: shows each message body in task order, prompts
// `label [p/n]:`, accepts p/n ('q' saves and quits), writes each record to
// `records_path` as soon as it is entered. Already-recorded messages are
// skipped, so an interrupted session resumes at the first unlabeled one.
// The transcript never contains tool labels or another annotator's labels.
SessionResult run_session(const AnnotationTask& task,
                          const std::unordered_map<std::string, std::string>& bodies,
                          const std::string& annotator_id, std::istream& in, std::ostream& out,
                          const std::string& records_path,
                          const std::function<std::int64_t()>& clock = {});

struct AgreementReport {
    std::size_t group_size = 0;
    std::size_t both_positive = 0;
    std::size_t both_negative = 0;
    std::size_t disagreed = 0;
    double agreement = 0.0;  // (both_positive + both_negative) / group_size
};

// Raw two-annotator agreement over a shared message group. Both record sets
// must cover exactly the same message ids.
AgreementReport inter_annotator_agreement(const std::vector<AnnotationRecord>& records_a,
                                          const std::vector<AnnotationRecord>& records_b);

struct ValidityReport {
    AgreementReport agreement;
    std::size_t both_match_tool = 0;       // both annotators agree with the tool label
    std::size_t both_contradict_tool = 0;  // both agree on the opposite label
};

// Annotator agreement plus how the agreed labels fall against the tool
// consensus labels for the same messages.
ValidityReport validity_report(const std::vector<AnnotationRecord>& records_a,
                               const std::vector<AnnotationRecord>& records_b,
                               const std::unordered_map<std::string, SentimentLabel>& tool_labels);

// Plain-text agreement block for annotation reports.
void render_agreement(const AgreementReport& report, const std::string& title, std::ostream& out);

}  // namespace senti
