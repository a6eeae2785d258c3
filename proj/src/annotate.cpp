#include "senti/annotate.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace senti {

AnnotationTask sample_messages(const std::vector<Message>& corpus, std::size_t n,
                               std::uint64_t seed,
                               const std::function<bool(const Message&)>& filter,
                               std::string task_id, std::string source_filter) {
    std::vector<const Message*> eligible;
    for (const auto& message : corpus) {
        if (!filter || filter(message)) eligible.push_back(&message);
    }
    if (eligible.size() < n) {
        throw std::invalid_argument("sample_messages: requested " + std::to_string(n) +
                                    " messages but only " + std::to_string(eligible.size()) +
                                    " are available");
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = i + static_cast<std::size_t>(rng() % (eligible.size() - i));
        std::swap(eligible[i], eligible[pick]);
    }

    AnnotationTask task;
    task.task_id = task_id.empty() ? "task-" + std::to_string(seed) : std::move(task_id);
    task.seed = seed;
    task.source_filter = std::move(source_filter);
    task.message_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) task.message_ids.push_back(eligible[i]->id);
    return task;
}

void write_task(const AnnotationTask& task, std::ostream& out) {
    out << "task_id\t" << task.task_id << '\n';
    out << "seed\t" << task.seed << '\n';
    out << "source_filter\t" << task.source_filter << '\n';
    for (const auto& id : task.message_ids) out << id << '\n';
}

AnnotationTask read_task(std::istream& in) {
    AnnotationTask task;
    std::string line;
    std::size_t header_lines = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header_lines < 3) {
            const auto tab = line.find('\t');
            if (tab == std::string::npos) throw std::runtime_error("task file: malformed header");
            const std::string key = line.substr(0, tab);
            const std::string value = line.substr(tab + 1);
            if (key == "task_id") task.task_id = value;
            else if (key == "seed") task.seed = std::stoull(value);
            else if (key == "source_filter") task.source_filter = value;
            else throw std::runtime_error("task file: unknown header key '" + key + "'");
            ++header_lines;
        } else {
            task.message_ids.push_back(line);
        }
    }
    if (task.task_id.empty()) throw std::runtime_error("task file: missing task_id");
    return task;
}

void append_annotation_record(const AnnotationRecord& record, const std::string& path) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream out(path, std::ios::app);
    if (!out.is_open()) throw std::runtime_error("cannot open annotation file: " + path);
    if (fresh) out << "task_id,message_id,annotator_id,label,timestamp\n";
    out << record.task_id << ',' << record.message_id << ',' << record.annotator_id << ','
        << to_string(record.label) << ',' << record.timestamp << '\n';
    out.flush();
}

std::vector<AnnotationRecord> read_annotation_records(const std::string& path) {
    std::vector<AnnotationRecord> records;
    std::ifstream in(path);
    if (!in.is_open()) return records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("task_id,", 0) == 0) continue;
        }
        std::stringstream ss(line);
        AnnotationRecord record;
        std::string label, timestamp;
        if (!std::getline(ss, record.task_id, ',') || !std::getline(ss, record.message_id, ',') ||
            !std::getline(ss, record.annotator_id, ',') || !std::getline(ss, label, ',') ||
            !std::getline(ss, timestamp)) {
            throw std::runtime_error("annotation file " + path + ": malformed line: " + line);
        }
        record.label = sentiment_label_from_string(label);
        if (record.label == SentimentLabel::Neutral)
            throw std::runtime_error("annotation file " + path + ": neutral label for " +
                                     record.message_id);
        record.timestamp = std::stoll(timestamp);
        records.push_back(std::move(record));
    }
    return records;
}

SessionResult run_session(const AnnotationTask& task,
                          const std::unordered_map<std::string, std::string>& bodies,
                          const std::string& annotator_id, std::istream& in, std::ostream& out,
                          const std::string& records_path,
                          const std::function<std::int64_t()>& clock) {
    if (annotator_id.empty()) throw std::invalid_argument("run_session: empty annotator id");
    const auto now = clock ? clock : []() -> std::int64_t {
        return std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
    };

    SessionResult result;
    std::unordered_set<std::string> already_labeled;
    for (const auto& record : read_annotation_records(records_path)) {
        if (record.task_id != task.task_id || record.annotator_id != annotator_id) continue;
        already_labeled.insert(record.message_id);
        result.records.push_back(record);
    }

    for (const auto& message_id : task.message_ids) {
        if (already_labeled.count(message_id) != 0) continue;
        const auto body = bodies.find(message_id);
        if (body == bodies.end())
            throw std::runtime_error("run_session: message " + message_id + " not in corpus");

        out << "--- message " << message_id << " ---\n" << body->second << '\n';
        SentimentLabel label;
        while (true) {
            out << "label [p/n]: " << std::flush;
            std::string answer;
            if (!std::getline(in, answer)) return result;  // input gone; partial records stand
            while (!answer.empty() && (answer.back() == '\r' || answer.back() == ' '))
                answer.pop_back();
            if (answer == "q") {
                out << "saved " << result.records.size() << " labels, quitting\n";
                return result;
            }
            if (answer == "p") {
                label = SentimentLabel::Positive;
                break;
            }
            if (answer == "n") {
                label = SentimentLabel::Negative;
                break;
            }
            out << "please answer p, n or q\n";
        }

        AnnotationRecord record{task.task_id, message_id, annotator_id, label, now()};
        append_annotation_record(record, records_path);
        result.records.push_back(std::move(record));
    }
    result.completed = true;
    return result;
}

namespace {

std::unordered_map<std::string, SentimentLabel> by_message(
    const std::vector<AnnotationRecord>& records, const char* who) {
    std::unordered_map<std::string, SentimentLabel> labels;
    for (const auto& record : records) {
        if (!labels.emplace(record.message_id, record.label).second)
            throw std::invalid_argument(std::string(who) + ": duplicate record for message " +
                                        record.message_id);
    }
    return labels;
}

void require_same_ids(const std::unordered_map<std::string, SentimentLabel>& a,
                      const std::unordered_map<std::string, SentimentLabel>& b,
                      const char* who) {
    std::set<std::string> only_a;
    std::set<std::string> only_b;
    for (const auto& [id, label] : a) {
        (void)label;
        if (b.count(id) == 0) only_a.insert(id);
    }
    for (const auto& [id, label] : b) {
        (void)label;
        if (a.count(id) == 0) only_b.insert(id);
    }
    if (only_a.empty() && only_b.empty()) return;
    std::string message = std::string(who) + ": message id sets differ;";
    for (const auto& id : only_a) message += " only-first:" + id;
    for (const auto& id : only_b) message += " only-second:" + id;
    throw std::invalid_argument(message);
}

}  // namespace

AgreementReport inter_annotator_agreement(const std::vector<AnnotationRecord>& records_a,
                                          const std::vector<AnnotationRecord>& records_b) {
    if (records_a.empty()) throw std::invalid_argument("inter_annotator_agreement: no records");
    const auto labels_a = by_message(records_a, "inter_annotator_agreement");
    const auto labels_b = by_message(records_b, "inter_annotator_agreement");
    require_same_ids(labels_a, labels_b, "inter_annotator_agreement");

    AgreementReport report;
    report.group_size = labels_a.size();
    for (const auto& [id, label] : labels_a) {
        const SentimentLabel other = labels_b.at(id);
        if (label == other) {
            if (label == SentimentLabel::Positive) ++report.both_positive;
            else ++report.both_negative;
        } else {
            ++report.disagreed;
        }
    }
    report.agreement = static_cast<double>(report.both_positive + report.both_negative) /
                       static_cast<double>(report.group_size);
    return report;
}

ValidityReport validity_report(
    const std::vector<AnnotationRecord>& records_a, const std::vector<AnnotationRecord>& records_b,
    const std::unordered_map<std::string, SentimentLabel>& tool_labels) {
    ValidityReport report;
    report.agreement = inter_annotator_agreement(records_a, records_b);

    const auto labels_a = by_message(records_a, "validity_report");
    const auto labels_b = by_message(records_b, "validity_report");
    std::set<std::string> missing;
    for (const auto& [id, label] : labels_a) {
        (void)label;
        if (tool_labels.count(id) == 0) missing.insert(id);
    }
    if (!missing.empty()) {
        std::string message = "validity_report: tool labels missing for:";
        for (const auto& id : missing) message += ' ' + id;
        throw std::invalid_argument(message);
    }

    for (const auto& [id, label] : labels_a) {
        const SentimentLabel other = labels_b.at(id);
        if (label != other) continue;
        if (label == tool_labels.at(id)) ++report.both_match_tool;
        else ++report.both_contradict_tool;
    }
    return report;
}

void render_agreement(const AgreementReport& report, const std::string& title, std::ostream& out) {
    out << title << " - " << report.group_size << " messages\n";
    out << "Both agree:  positive " << report.both_positive << "  negative "
        << report.both_negative << "  (disagreed " << report.disagreed << ")\n";
    out << "Agreement    " << std::fixed << std::setprecision(3) << report.agreement
        << std::defaultfloat << '\n';
}

}  // namespace senti
