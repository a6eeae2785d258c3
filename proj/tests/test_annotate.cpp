#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <unordered_set>

#include "senti/annotate.hpp"
#include "senti/lexsent.hpp"

using namespace senti;

namespace {

std::vector<Message> numbered_corpus(std::size_t n) {
    std::vector<Message> corpus;
    for (std::size_t i = 0; i < n; ++i) {
        RawComment raw;
        raw.id = "m" + std::to_string(i);
        raw.body = "message body number " + std::to_string(i);
        raw.subreddit = i % 2 == 0 ? "canada" : "unitedkingdom";
        corpus.push_back(make_message(raw));
    }
    return corpus;
}

std::unordered_map<std::string, std::string> bodies_of(const std::vector<Message>& corpus) {
    std::unordered_map<std::string, std::string> bodies;
    for (const auto& message : corpus) bodies.emplace(message.id, message.body);
    return bodies;
}

// counts realized as record pairs: first `both_pos` agree positive, then
// `both_neg` agree negative, then `split` disagree
std::pair<std::vector<AnnotationRecord>, std::vector<AnnotationRecord>> records_with_counts(
    std::size_t both_pos, std::size_t both_neg, std::size_t split) {
    std::vector<AnnotationRecord> a;
    std::vector<AnnotationRecord> b;
    std::size_t next = 0;
    auto push = [&](SentimentLabel la, SentimentLabel lb) {
        const std::string id = "m" + std::to_string(next++);
        a.push_back({"t", id, "ann-a", la, 0});
        b.push_back({"t", id, "ann-b", lb, 0});
    };
    for (std::size_t i = 0; i < both_pos; ++i) push(SentimentLabel::Positive, SentimentLabel::Positive);
    for (std::size_t i = 0; i < both_neg; ++i) push(SentimentLabel::Negative, SentimentLabel::Negative);
    for (std::size_t i = 0; i < split; ++i) {
        push(i % 2 == 0 ? SentimentLabel::Positive : SentimentLabel::Negative,
             i % 2 == 0 ? SentimentLabel::Negative : SentimentLabel::Positive);
    }
    return {a, b};
}

struct TempRecordFile {
    std::filesystem::path path;
    TempRecordFile() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("senti_ann_" + std::to_string(++counter) + ".csv");
        std::filesystem::remove(path);
    }
    ~TempRecordFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("sample_messages") {
    const std::vector<Message> corpus = numbered_corpus(60);

    SUBCASE("exhaustive sample returns all ids, shuffled") {
        const std::vector<Message> small = numbered_corpus(30);
        const AnnotationTask task = sample_messages(small, 30, 7);
        CHECK(task.message_ids.size() == 30);
        std::unordered_set<std::string> distinct(task.message_ids.begin(), task.message_ids.end());
        CHECK(distinct.size() == 30);
    }
    SUBCASE("same seed gives the identical id list") {
        const AnnotationTask a = sample_messages(corpus, 20, 99);
        const AnnotationTask b = sample_messages(corpus, 20, 99);
        CHECK(a.message_ids == b.message_ids);
        const AnnotationTask c = sample_messages(corpus, 20, 100);
        CHECK(a.message_ids != c.message_ids);
    }
    SUBCASE("insufficient messages name the available count") {
        try {
            sample_messages(corpus, 61, 1);
            FAIL("expected an error");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("60") != std::string::npos);
        }
    }
    SUBCASE("filtered sampling returns only matching messages") {
        // a tool-consensus=negative style filter over even-numbered ids
        std::unordered_map<std::string, SentimentLabel> tool_labels;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            tool_labels[corpus[i].id] =
                i % 2 == 0 ? SentimentLabel::Negative : SentimentLabel::Positive;
        }
        const auto filter = [&tool_labels](const Message& message) {
            return tool_labels.at(message.id) == SentimentLabel::Negative;
        };
        const AnnotationTask task = sample_messages(corpus, 25, 3, filter, "neg-task");
        CHECK(task.message_ids.size() == 25);
        std::unordered_set<std::string> seen;
        for (const auto& id : task.message_ids) {
            CHECK(tool_labels.at(id) == SentimentLabel::Negative);  // brute-force filter check
            CHECK(seen.insert(id).second);
        }
    }
    SUBCASE("task file round trip") {
        const AnnotationTask task = sample_messages(corpus, 10, 5, {}, "round", "none");
        std::stringstream stream;
        write_task(task, stream);
        const AnnotationTask back = read_task(stream);
        CHECK(back.task_id == task.task_id);
        CHECK(back.seed == task.seed);
        CHECK(back.source_filter == task.source_filter);
        CHECK(back.message_ids == task.message_ids);
    }
}

TEST_CASE("annotation session") {
    const std::vector<Message> corpus = numbered_corpus(3);
    const auto bodies = bodies_of(corpus);
    AnnotationTask task;
    task.task_id = "t1";
    task.message_ids = {"m0", "m1", "m2"};
    const auto clock = []() -> std::int64_t { return 1610000000; };

    SUBCASE("scripted p,n,p yields three records in task order") {
        TempRecordFile file;
        std::istringstream in("p\nn\np\n");
        std::ostringstream out;
        const SessionResult result =
            run_session(task, bodies, "alice", in, out, file.path.string(), clock);
        CHECK(result.completed);
        REQUIRE(result.records.size() == 3);
        CHECK(result.records[0].message_id == "m0");
        CHECK(result.records[0].label == SentimentLabel::Positive);
        CHECK(result.records[1].label == SentimentLabel::Negative);
        CHECK(result.records[2].label == SentimentLabel::Positive);

        const auto persisted = read_annotation_records(file.path.string());
        CHECK(persisted.size() == 3);
        CHECK(persisted[2].annotator_id == "alice");
        CHECK(persisted[2].timestamp == 1610000000);
    }
    SUBCASE("interrupted session resumes at the first unlabeled message") {
        TempRecordFile file;
        {
            std::istringstream in("p\nn\n");  // input ends after two labels
            std::ostringstream out;
            const SessionResult partial =
                run_session(task, bodies, "alice", in, out, file.path.string(), clock);
            CHECK_FALSE(partial.completed);
            CHECK(partial.records.size() == 2);
        }
        std::istringstream in("p\n");
        std::ostringstream out;
        const SessionResult resumed =
            run_session(task, bodies, "alice", in, out, file.path.string(), clock);
        CHECK(resumed.completed);
        REQUIRE(resumed.records.size() == 3);
        // transcript shows only the remaining message
        CHECK(out.str().find("m2") != std::string::npos);
        CHECK(out.str().find("message body number 0") == std::string::npos);

        // resume equals one uninterrupted session with the same scripted input
        TempRecordFile uninterrupted;
        std::istringstream full_in("p\nn\np\n");
        std::ostringstream full_out;
        const SessionResult full =
            run_session(task, bodies, "alice", full_in, full_out, uninterrupted.path.string(), clock);
        REQUIRE(full.records.size() == resumed.records.size());
        for (std::size_t i = 0; i < full.records.size(); ++i) {
            CHECK(full.records[i].message_id == resumed.records[i].message_id);
            CHECK(full.records[i].label == resumed.records[i].label);
        }
    }
    SUBCASE("invalid keystrokes reprompt without writing a record") {
        TempRecordFile file;
        std::istringstream in("x\nmaybe\np\nn\np\n");
        std::ostringstream out;
        const SessionResult result =
            run_session(task, bodies, "alice", in, out, file.path.string(), clock);
        CHECK(result.completed);
        CHECK(result.records.size() == 3);
        CHECK(out.str().find("please answer") != std::string::npos);
    }
    SUBCASE("q saves and quits") {
        TempRecordFile file;
        std::istringstream in("p\nq\n");
        std::ostringstream out;
        const SessionResult result =
            run_session(task, bodies, "alice", in, out, file.path.string(), clock);
        CHECK_FALSE(result.completed);
        CHECK(result.records.size() == 1);
        CHECK(read_annotation_records(file.path.string()).size() == 1);
    }
    SUBCASE("the transcript is blind") {
        // other-annotator records for the same task exist in a separate store;
        // the session transcript must never show labels of any kind
        TempRecordFile other;
        append_annotation_record({"t1", "m0", "bob", SentimentLabel::Negative, 5}, other.path.string());

        TempRecordFile file;
        std::istringstream in("p\nn\np\n");
        std::ostringstream out;
        run_session(task, bodies, "alice", in, out, file.path.string(), clock);
        const std::string transcript = out.str();
        CHECK(transcript.find("bob") == std::string::npos);
        CHECK(transcript.find("positive") == std::string::npos);
        CHECK(transcript.find("negative") == std::string::npos);
        CHECK(transcript.find("consensus") == std::string::npos);
        for (const auto& message : corpus) {
            CHECK(transcript.find(message.body) != std::string::npos);
        }
    }
    SUBCASE("missing body is an error") {
        TempRecordFile file;
        AnnotationTask bad = task;
        bad.message_ids.push_back("ghost");
        std::istringstream in("p\np\np\np\n");
        std::ostringstream out;
        CHECK_THROWS_AS(run_session(bad, bodies, "alice", in, out, file.path.string(), clock),
                        std::runtime_error);
    }
    SUBCASE("empty annotator id is an error") {
        TempRecordFile file;
        std::istringstream in("p\n");
        std::ostringstream out;
        CHECK_THROWS_AS(run_session(task, bodies, "", in, out, file.path.string(), clock),
                        std::invalid_argument);
    }
}

TEST_CASE("inter-annotator agreement") {
    SUBCASE("published unlabeled-group arithmetic") {
        const auto [a1, b1] = records_with_counts(5, 14, 11);  // 30 messages
        const AgreementReport canada = inter_annotator_agreement(a1, b1);
        CHECK(canada.group_size == 30);
        CHECK(canada.both_positive == 5);
        CHECK(canada.both_negative == 14);
        CHECK(canada.disagreed == 11);
        CHECK(std::fabs(canada.agreement - 19.0 / 30.0) < 1e-12);
        std::ostringstream out;
        render_agreement(canada, "Canada", out);
        CHECK(out.str().find("0.633") != std::string::npos);

        const auto [a2, b2] = records_with_counts(6, 18, 6);  // 30 messages
        const AgreementReport uk = inter_annotator_agreement(a2, b2);
        CHECK(std::fabs(uk.agreement - 0.8) < 1e-12);
        std::ostringstream out2;
        render_agreement(uk, "UK", out2);
        CHECK(out2.str().find("0.800") != std::string::npos);
    }
    SUBCASE("identical record sets agree fully, and only then") {
        const auto [a, b] = records_with_counts(4, 5, 0);
        CHECK(inter_annotator_agreement(a, b).agreement == 1.0);
        const auto [c, d] = records_with_counts(4, 5, 1);
        CHECK(inter_annotator_agreement(c, d).agreement < 1.0);
    }
    SUBCASE("agreement is symmetric and order-invariant") {
        auto [a, b] = records_with_counts(7, 3, 5);
        const AgreementReport forward = inter_annotator_agreement(a, b);
        const AgreementReport backward = inter_annotator_agreement(b, a);
        CHECK(forward.agreement == backward.agreement);
        CHECK(forward.both_positive == backward.both_positive);

        std::mt19937_64 rng(3);
        for (std::size_t i = a.size(); i > 1; --i) std::swap(a[i - 1], a[rng() % i]);
        const AgreementReport shuffled = inter_annotator_agreement(a, b);
        CHECK(shuffled.agreement == forward.agreement);
        CHECK(shuffled.both_positive + shuffled.both_negative + shuffled.disagreed ==
              shuffled.group_size);
    }
    SUBCASE("mismatched id sets list the symmetric difference") {
        auto [a, b] = records_with_counts(2, 2, 0);
        b.back().message_id = "zz-only-second";
        try {
            inter_annotator_agreement(a, b);
            FAIL("expected an error");
        } catch (const std::invalid_argument& e) {
            const std::string message = e.what();
            CHECK(message.find("zz-only-second") != std::string::npos);
            CHECK(message.find("m3") != std::string::npos);
        }
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(inter_annotator_agreement({}, {}), std::invalid_argument);
    }
}

TEST_CASE("validity against tool labels") {
    SUBCASE("published tool-negative group arithmetic") {
        // UK middle block: 50 tool-negative messages, both annotators agree
        // negative on 46, none agree positive
        const auto [a, b] = records_with_counts(0, 46, 4);
        std::unordered_map<std::string, SentimentLabel> tool;
        for (const auto& record : a) tool[record.message_id] = SentimentLabel::Negative;
        const ValidityReport report = validity_report(a, b, tool);
        CHECK(report.agreement.group_size == 50);
        CHECK(std::fabs(report.agreement.agreement - 0.92) < 1e-12);
        CHECK(report.both_match_tool == 46);
        CHECK(report.both_contradict_tool == 0);
    }
    SUBCASE("band-restricted recount reproduces the bottom-block ratio") {
        const auto [a, b] = records_with_counts(0, 46, 4);
        // keep 46 of the 50: drop three disagreements and one agreement
        std::unordered_set<std::string> keep;
        for (std::size_t i = 0; i < 43; ++i) keep.insert("m" + std::to_string(i));
        keep.insert("m46");
        keep.insert("m47");
        keep.insert("m48");
        auto restrict = [&keep](std::vector<AnnotationRecord> records) {
            std::erase_if(records, [&](const AnnotationRecord& r) {
                return keep.count(r.message_id) == 0;
            });
            return records;
        };
        const AgreementReport report =
            inter_annotator_agreement(restrict(a), restrict(b));
        CHECK(report.group_size == 46);
        CHECK(report.both_negative == 43);
        CHECK(std::fabs(report.agreement - 43.0 / 46.0) < 1e-12);
        // three displayed decimals; the two-decimal print in the source
        // tables comes from rounding that again
        CHECK(std::round(report.agreement * 1000.0) / 1000.0 == 0.935);
        CHECK(std::round(std::round(report.agreement * 1000.0) / 10.0) / 100.0 == 0.94);
    }
    SUBCASE("annotators unanimously contradicting the tool still agree fully") {
        const auto [a, b] = records_with_counts(10, 0, 0);
        std::unordered_map<std::string, SentimentLabel> tool;
        for (const auto& record : a) tool[record.message_id] = SentimentLabel::Negative;
        const ValidityReport report = validity_report(a, b, tool);
        CHECK(report.agreement.agreement == 1.0);
        CHECK(report.agreement.both_positive == 10);
        CHECK(report.both_contradict_tool == 10);
        CHECK(report.both_match_tool == 0);
    }
    SUBCASE("missing tool coverage is an error") {
        const auto [a, b] = records_with_counts(1, 1, 0);
        CHECK_THROWS_AS(validity_report(a, b, {}), std::invalid_argument);
    }
}

TEST_CASE("annotation record csv") {
    TempRecordFile file;
    append_annotation_record({"t", "m1", "alice", SentimentLabel::Positive, 123},
                             file.path.string());
    append_annotation_record({"t", "m2", "alice", SentimentLabel::Negative, 124},
                             file.path.string());
    const auto records = read_annotation_records(file.path.string());
    REQUIRE(records.size() == 2);
    CHECK(records[0].message_id == "m1");
    CHECK(records[0].label == SentimentLabel::Positive);
    CHECK(records[1].timestamp == 124);
    CHECK(read_annotation_records("/nonexistent/records.csv").empty());
}
