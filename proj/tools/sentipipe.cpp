// Pipeline driver: ingest -> label -> (annotate/agree) -> eval -> report.
// Exit codes: 0 success, 1 internal error, 2 usage or input error.

#include <charconv>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <CLI11.hpp>

#include "senti/annotate.hpp"
#include "senti/classify.hpp"
#include "senti/config.hpp"
#include "senti/corpus.hpp"
#include "senti/eval.hpp"
#include "senti/features.hpp"
#include "senti/lexsent.hpp"
#include "senti/seed.hpp"
#include "senti/types.hpp"

namespace fs = std::filesystem;
using namespace senti;

namespace {

// distinguishes bad input (exit 2) from internal failures (exit 1)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_num(std::ostream& out, double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.write(buffer, result.ptr - buffer);
}

// display-only rounding; report files keep full precision
std::string rounded(const std::string& number, int decimals) {
    try {
        std::size_t used = 0;
        const double value = std::stod(number, &used);
        if (used != number.size()) return number;
        std::ostringstream out;
        out << std::fixed << std::setprecision(decimals) << value;
        return out.str();
    } catch (const std::exception&) {
        return number;
    }
}

std::vector<RawComment> read_corpus_file(const std::string& path, std::size_t* skipped = nullptr) {
    if (!fs::exists(path)) throw UsageError("input file does not exist: " + path);
    DumpReader reader(path);
    std::vector<RawComment> comments;
    while (auto comment = reader.next()) comments.push_back(std::move(*comment));
    if (skipped != nullptr) *skipped = reader.skipped();
    return comments;
}

void echo_config(const PipelineConfig& config, const std::string& command) {
    fs::create_directories(config.out_dir);
    std::ofstream out(fs::path(config.out_dir) / ("effective-" + command + ".conf"));
    config.echo(out);
}

ValenceLexicon load_valence(const PipelineConfig& config) {
    if (config.valence_lexicon.empty() || config.valence_boosters.empty() ||
        config.valence_negators.empty()) {
        throw UsageError("valence lexicon paths are not configured (lexicons.valence/boosters/negators)");
    }
    for (const std::string& path :
         {config.valence_lexicon, config.valence_boosters, config.valence_negators}) {
        if (!fs::exists(path)) throw UsageError("lexicon file does not exist: " + path);
    }
    return load_valence_lexicon(config.valence_lexicon, config.valence_boosters,
                                config.valence_negators,
                                config.valence_params.default_booster_increment);
}

PolarityLexicon load_polarity(const PipelineConfig& config) {
    if (config.polarity_lexicon.empty() || config.polarity_negators.empty()) {
        throw UsageError("polarity lexicon paths are not configured (lexicons.polarity/polarity_negators)");
    }
    for (const std::string& path : {config.polarity_lexicon, config.polarity_negators}) {
        if (!fs::exists(path)) throw UsageError("lexicon file does not exist: " + path);
    }
    return load_polarity_lexicon(config.polarity_lexicon, config.polarity_negators);
}

// ---------------------------------------------------------------------------
// ingest

int cmd_ingest(const PipelineConfig& config) {
    if (config.input_dump.empty()) throw UsageError("no input dump configured (corpus.input or --input)");

    std::size_t skipped = 0;
    const std::vector<RawComment> raw = read_corpus_file(config.input_dump, &skipped);

    fs::create_directories(config.out_dir);
    std::ofstream all_out(fs::path(config.out_dir) / "covid_all.jsonl");
    std::ofstream inband_out(fs::path(config.out_dir) / "covid_inband.jsonl");

    CorpusStatsBuilder stats;
    for (const auto& comment : raw) {
        if (comment.created_utc < config.start_utc || comment.created_utc > config.end_utc) continue;
        stats.add_raw(comment);
        if (!is_covid_related(comment.body, config.keywords)) continue;
        if (is_bot(comment.author, comment.body, config.bot_blocklist)) continue;
        const Message message = make_message(comment);
        stats.add_covid(message, config.band);
        write_dump_line(comment, all_out);
        if (config.band.contains(message.word_count)) write_dump_line(comment, inband_out);
    }

    const CorpusStats final_stats = stats.finish();
    std::ofstream stats_out(fs::path(config.out_dir) / "stats.csv");
    write_stats_csv(final_stats, stats_out);
    echo_config(config, "ingest");

    std::cout << "dataset " << config.dataset << ": " << final_stats.messages_posted
              << " messages from " << final_stats.contributors << " contributors, "
              << final_stats.covid_related << " covid-related ("
              << final_stats.in_band << " in band " << config.band.min_words << '-'
              << config.band.max_words << ", " << final_stats.below_band << " short, "
              << final_stats.above_band << " long, " << skipped << " malformed lines skipped)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// label

struct LabelOutcome {
    std::vector<ConsensusRecord> records;
    AgreementStats stats;
};

LabelOutcome label_corpus(const std::vector<RawComment>& comments, const ValenceLexicon& valence,
                          const PolarityLexicon& polarity, const PipelineConfig& config) {
    LabelOutcome outcome;
    outcome.records.reserve(comments.size());
    for (const auto& comment : comments) {
        const SentimentLabel a =
            binarize(score_valence(comment.body, valence, config.valence_params),
                     config.valence_thresholds);
        const SentimentLabel b =
            binarize(score_polarity(comment.body, polarity), config.polarity_thresholds);
        outcome.records.push_back(make_consensus_record(comment.id, a, b));
    }
    outcome.stats = agreement_stats(outcome.records);
    return outcome;
}

void write_agreement_row(std::ostream& out, const std::string& name, const AgreementStats& stats) {
    out << name << ',' << stats.agreed_positive << ',' << stats.agreed_negative << ','
        << stats.inconsistent << ',' << stats.total << ',';
    write_num(out, stats.agreement_pct);
    out << ',';
    write_num(out, stats.positive_share_pct);
    out << '\n';
}

int cmd_label(const PipelineConfig& config, std::string corpus_all, std::string corpus_inband) {
    if (corpus_all.empty()) corpus_all = (fs::path(config.out_dir) / "covid_all.jsonl").string();
    if (corpus_inband.empty())
        corpus_inband = (fs::path(config.out_dir) / "covid_inband.jsonl").string();

    const ValenceLexicon valence = load_valence(config);
    const PolarityLexicon polarity = load_polarity(config);

    fs::create_directories(config.out_dir);
    std::ofstream agreement_out(fs::path(config.out_dir) / "agreement.csv");
    agreement_out << "corpus,agreed_positive,agreed_negative,inconsistent,total,"
                     "agreement_pct,positive_share_pct\n";

    for (const auto& [name, path] :
         {std::pair{std::string("all"), corpus_all}, {std::string("inband"), corpus_inband}}) {
        const std::vector<RawComment> comments = read_corpus_file(path);
        if (comments.empty()) {
            std::cout << name << ": corpus is empty, skipping\n";
            continue;
        }
        const LabelOutcome outcome = label_corpus(comments, valence, polarity, config);
        std::ofstream labels_out(fs::path(config.out_dir) / ("labels_" + name + ".csv"));
        write_consensus_csv(outcome.records, labels_out);
        write_agreement_row(agreement_out, name, outcome.stats);
        std::cout << name << ": " << outcome.stats.total << " messages, agreement " << std::fixed
                  << std::setprecision(2) << outcome.stats.agreement_pct << "% (positive share "
                  << outcome.stats.positive_share_pct << "%)" << std::defaultfloat << '\n';
    }
    echo_config(config, "label");
    return 0;
}

// ---------------------------------------------------------------------------
// annotate / agree

std::unordered_map<std::string, SentimentLabel> tool_labels_from_csv(const std::string& path) {
    if (!fs::exists(path)) throw UsageError("labels file does not exist: " + path);
    std::ifstream in(path);
    std::unordered_map<std::string, SentimentLabel> labels;
    for (const auto& record : read_consensus_csv(in)) {
        if (record.consensus) labels.emplace(record.message_id, *record.consensus);
    }
    return labels;
}

int cmd_annotate(const PipelineConfig& config, const std::string& corpus_path,
                 const std::string& task_id, std::size_t n, const std::string& annotator,
                 const std::string& consensus_filter, const std::string& labels_path) {
    if (task_id.empty()) throw UsageError("annotate: --task-id is required");
    if (annotator.empty()) throw UsageError("annotate: --annotator is required");

    const std::string corpus_file =
        corpus_path.empty() ? (fs::path(config.out_dir) / "covid_inband.jsonl").string()
                            : corpus_path;
    const std::vector<RawComment> comments = read_corpus_file(corpus_file);
    std::vector<Message> messages;
    std::unordered_map<std::string, std::string> bodies;
    messages.reserve(comments.size());
    for (const auto& comment : comments) {
        messages.push_back(make_message(comment));
        bodies.emplace(comment.id, comment.body);
    }

    const fs::path tasks_dir = fs::path(config.out_dir) / "tasks";
    const fs::path task_path = tasks_dir / (task_id + ".task");
    AnnotationTask task;
    if (fs::exists(task_path)) {
        std::ifstream in(task_path);
        task = read_task(in);
    } else {
        std::function<bool(const Message&)> filter;
        std::string filter_name;
        if (!consensus_filter.empty()) {
            if (labels_path.empty())
                throw UsageError("annotate: --consensus-filter needs --labels");
            const SentimentLabel wanted = sentiment_label_from_string(consensus_filter);
            auto tool_labels = std::make_shared<std::unordered_map<std::string, SentimentLabel>>(
                tool_labels_from_csv(labels_path));
            filter = [tool_labels, wanted](const Message& message) {
                const auto it = tool_labels->find(message.id);
                return it != tool_labels->end() && it->second == wanted;
            };
            filter_name = "tool-consensus=" + consensus_filter;
        }
        try {
            task = sample_messages(messages, n, derive_seed(config.seed, "sample-" + task_id),
                                   filter, task_id, filter_name);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        fs::create_directories(tasks_dir);
        std::ofstream out(task_path);
        write_task(task, out);
        std::cout << "created task " << task_id << " with " << task.message_ids.size()
                  << " messages\n";
    }
    echo_config(config, "annotate");

    const fs::path records_dir = fs::path(config.out_dir) / "annotations";
    fs::create_directories(records_dir);
    const std::string records_path = (records_dir / (task_id + "__" + annotator + ".csv")).string();

    const SessionResult result =
        run_session(task, bodies, annotator, std::cin, std::cout, records_path);
    std::cout << (result.completed ? "session complete: " : "session interrupted: ")
              << result.records.size() << '/' << task.message_ids.size() << " labeled\n";
    return 0;
}

int cmd_agree(const PipelineConfig& config, const std::string& task_id,
              const std::string& annotator_a, const std::string& annotator_b,
              const std::string& tool_labels_path, bool band_only,
              const std::string& corpus_path) {
    if (task_id.empty() || annotator_a.empty() || annotator_b.empty())
        throw UsageError("agree: --task-id, --annotator-a and --annotator-b are required");

    const fs::path records_dir = fs::path(config.out_dir) / "annotations";
    auto load = [&](const std::string& annotator) {
        const std::string path = (records_dir / (task_id + "__" + annotator + ".csv")).string();
        if (!fs::exists(path)) throw UsageError("no annotation records at " + path);
        std::vector<AnnotationRecord> records;
        for (auto& record : read_annotation_records(path)) {
            if (record.task_id == task_id && record.annotator_id == annotator)
                records.push_back(std::move(record));
        }
        return records;
    };
    std::vector<AnnotationRecord> records_a = load(annotator_a);
    std::vector<AnnotationRecord> records_b = load(annotator_b);

    std::string scope = "all sampled messages";
    if (band_only) {
        const std::string corpus_file =
            corpus_path.empty() ? (fs::path(config.out_dir) / "covid_all.jsonl").string()
                                : corpus_path;
        std::unordered_set<std::string> in_band;
        for (const auto& comment : read_corpus_file(corpus_file)) {
            const Message message = make_message(comment);
            if (config.band.contains(message.word_count)) in_band.insert(message.id);
        }
        auto restrict = [&](std::vector<AnnotationRecord>& records) {
            std::erase_if(records,
                          [&](const AnnotationRecord& r) { return in_band.count(r.message_id) == 0; });
        };
        restrict(records_a);
        restrict(records_b);
        scope = "messages " + std::to_string(config.band.min_words) + "-" +
                std::to_string(config.band.max_words) + " words";
    }

    try {
        if (tool_labels_path.empty()) {
            const AgreementReport report = inter_annotator_agreement(records_a, records_b);
            render_agreement(report, "Task " + task_id + " (" + scope + ")", std::cout);
        } else {
            const ValidityReport report =
                validity_report(records_a, records_b, tool_labels_from_csv(tool_labels_path));
            render_agreement(report.agreement, "Task " + task_id + " (" + scope + ")", std::cout);
            std::cout << "Against tool labels: both-match " << report.both_match_tool
                      << "  both-contradict " << report.both_contradict_tool << '\n';
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// eval

LabeledCorpus join_labeled(const std::vector<RawComment>& comments,
                           const std::vector<ConsensusRecord>& records) {
    std::unordered_map<std::string, SentimentLabel> labels;
    for (const auto& record : records) {
        if (record.consensus) labels.emplace(record.message_id, *record.consensus);
    }
    LabeledCorpus corpus;
    for (const auto& comment : comments) {
        const auto it = labels.find(comment.id);
        if (it == labels.end()) continue;
        corpus.documents.push_back(tokenize(comment.body));
        corpus.labels.push_back(it->second);
    }
    return corpus;
}

struct EvalInputs {
    std::string corpus_all;
    std::string corpus_inband;
    std::string labels_all;
    std::string labels_inband;
    bool dump_features = false;
};

int cmd_eval(const PipelineConfig& config, EvalInputs inputs) {
    if (inputs.corpus_all.empty())
        inputs.corpus_all = (fs::path(config.out_dir) / "covid_all.jsonl").string();
    if (inputs.corpus_inband.empty())
        inputs.corpus_inband = (fs::path(config.out_dir) / "covid_inband.jsonl").string();
    if (inputs.labels_all.empty())
        inputs.labels_all = (fs::path(config.out_dir) / "labels_all.csv").string();
    if (inputs.labels_inband.empty())
        inputs.labels_inband = (fs::path(config.out_dir) / "labels_inband.csv").string();

    std::vector<Algorithm> algorithms;
    for (const auto& name : config.algorithms) algorithms.push_back(algorithm_from_string(name));
    std::vector<Representation> representations;
    for (const auto& name : config.representations)
        representations.push_back(representation_from_string(name));

    ClassifierParams params;
    params.nb_alpha = config.nb_alpha;
    params.svm_c = config.svm_c_for(config.dataset);
    params.svm_epochs = config.svm_epochs;
    params.rf.n_trees = config.rf_trees;
    params.rf.max_features = config.rf_max_features;
    params.seed = derive_seed(config.seed, "train", 0);

    fs::create_directories(config.out_dir);
    std::map<std::string, GridResult> grids;

    for (const auto& [name, corpus_path, labels_path] :
         {std::tuple{std::string("all"), inputs.corpus_all, inputs.labels_all},
          {std::string("inband"), inputs.corpus_inband, inputs.labels_inband}}) {
        if (!fs::exists(labels_path)) throw UsageError("labels file does not exist: " + labels_path);
        const std::vector<RawComment> comments = read_corpus_file(corpus_path);
        std::ifstream labels_in(labels_path);
        std::vector<ConsensusRecord> records;
        try {
            records = read_consensus_csv(labels_in);
        } catch (const std::exception& e) {
            throw UsageError(std::string("cannot parse ") + labels_path + ": " + e.what());
        }
        const LabeledCorpus corpus = join_labeled(comments, records);
        if (corpus.size() == 0) throw UsageError("no consensus-labeled messages in " + corpus_path);

        if (inputs.dump_features) {
            // audit dump over the whole variant corpus at the grid's lowest
            // pruning threshold
            const Vocabulary vocab = Vocabulary::build(corpus.documents, config.min_freq_lo);
            FeatureMatrix matrix;
            matrix.vocabulary = &vocab;
            matrix.labels = corpus.labels;
            for (const auto& doc : corpus.documents)
                matrix.vectors.push_back(vectorize_bow(doc, vocab));
            std::ofstream vocab_out(fs::path(config.out_dir) / ("vocab_" + name + ".tsv"));
            vocab.dump_tsv(vocab_out);
            std::ofstream triplets(fs::path(config.out_dir) / ("features_" + name + ".csv"));
            std::ofstream feature_labels(fs::path(config.out_dir) /
                                         ("feature_labels_" + name + ".csv"));
            export_matrix_csv(matrix, triplets, feature_labels);
        }

        CVPlan cv;
        try {
            cv = stratified_kfold(corpus.labels, config.cv_k, derive_seed(config.seed, "folds", 0));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("cannot build folds for ") + name + ": " + e.what());
        }

        const VocabularyMode vocab_mode = config.vocab_mode == "global"
                                              ? VocabularyMode::Global
                                              : VocabularyMode::PerFold;
        const GridResult grid =
            grid_search(corpus, algorithms, representations, config.min_freq_lo,
                        config.min_freq_hi, params, cv, config.threads, vocab_mode);
        std::ofstream grid_out(fs::path(config.out_dir) / ("grid_" + name + ".csv"));
        write_grid_csv(grid, config.dataset + "-" + name, grid_out);
        render_grid_table(grid,
                          config.dataset + ", " + (name == "all" ? "all covid-related messages"
                                                                 : "in-band messages") +
                              " (" + std::to_string(corpus.size()) + " consensus-labeled)",
                          std::cout);
        std::cout << '\n';
        grids.emplace(name, grid);
    }

    // per-algorithm delta between the two corpora, best rows by macro F1
    std::ofstream delta_out(fs::path(config.out_dir) / "delta.csv");
    delta_out << "algorithm,f1_all,f1_inband,delta\n";
    std::cout << "F-score delta (in-band minus all):\n";
    for (Algorithm algorithm : algorithms) {
        std::optional<double> f1_all;
        std::optional<double> f1_inband;
        for (const auto& row : grids.at("all").rows) {
            if (row.best && row.algorithm == algorithm) f1_all = row.metrics.macro_f1;
        }
        for (const auto& row : grids.at("inband").rows) {
            if (row.best && row.algorithm == algorithm) f1_inband = row.metrics.macro_f1;
        }
        if (!f1_all || !f1_inband) continue;
        delta_out << to_string(algorithm) << ',';
        write_num(delta_out, *f1_all);
        delta_out << ',';
        write_num(delta_out, *f1_inband);
        delta_out << ',';
        write_num(delta_out, *f1_inband - *f1_all);
        delta_out << '\n';
        std::cout << "  " << to_string(algorithm) << ": " << std::fixed << std::setprecision(3)
                  << *f1_inband - *f1_all << std::defaultfloat << '\n';
    }
    echo_config(config, "eval");
    return 0;
}

// ---------------------------------------------------------------------------
// report

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw UsageError("cannot open report input: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (ss.eof() && !line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

int cmd_report(const PipelineConfig& config) {
    const fs::path dir(config.out_dir);

    const fs::path stats_path = dir / "stats.csv";
    if (fs::exists(stats_path)) {
        std::cout << "Corpus statistics (" << config.dataset << ")\n";
        for (const auto& row : read_csv(stats_path.string())) {
            if (row.size() < 2 || row[0] == "name") continue;
            std::cout << "  " << row[0] << ": " << row[1] << '\n';
        }
        std::cout << '\n';
    }

    const fs::path agreement_path = dir / "agreement.csv";
    if (fs::exists(agreement_path)) {
        std::cout << "Scorer agreement\n";
        for (const auto& row : read_csv(agreement_path.string())) {
            if (row.size() < 7 || row[0] == "corpus") continue;
            std::cout << "  " << row[0] << ": agreed positive " << row[1] << ", agreed negative "
                      << row[2] << ", inconsistent " << row[3] << " of " << row[4]
                      << " (agreement " << rounded(row[5], 2) << "%, positive share "
                      << rounded(row[6], 2) << "%)\n";
        }
        std::cout << '\n';
    }

    for (const auto& [file, title] :
         {std::pair{std::string("grid_all.csv"), std::string("all covid-related messages")},
          {std::string("grid_inband.csv"), std::string("in-band messages")}}) {
        const fs::path grid_path = dir / file;
        if (!fs::exists(grid_path)) continue;
        std::cout << "Best classification results, " << title << " (" << config.dataset << ")\n";
        std::cout << "  algorithm  representation  min_freq  precision  recall  f1  accuracy\n";
        for (const auto& row : read_csv(grid_path.string())) {
            if (row.size() < 10 || row[0] == "dataset" || row[9] != "best") continue;
            std::cout << "  " << row[1] << "  " << row[2] << "  " << row[3] << "  "
                      << rounded(row[4], 3) << "  " << rounded(row[5], 3) << "  "
                      << rounded(row[6], 3) << "  " << rounded(row[7], 3) << '\n';
        }
        std::cout << '\n';
    }

    const fs::path delta_path = dir / "delta.csv";
    if (fs::exists(delta_path)) {
        std::cout << "F-score delta (in-band minus all)\n";
        for (const auto& row : read_csv(delta_path.string())) {
            if (row.size() < 4 || row[0] == "algorithm") continue;
            std::cout << "  " << row[0] << ": " << rounded(row[3], 3) << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covid subreddit sentiment pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::string out_flag;
    app.add_option("--config", config_path, "pipeline config file");
    app.add_option("--seed", seed_flag, "master seed (overrides config)");
    app.add_option("--out", out_flag, "output directory (overrides config)");

    auto* ingest = app.add_subcommand("ingest", "filter a dump into covid corpora + stats");
    std::string input_flag, dataset_flag, band_flag, keywords_flag;
    ingest->add_option("--input", input_flag, "dump file (jsonl)");
    ingest->add_option("--dataset", dataset_flag, "dataset name");
    ingest->add_option("--band", band_flag, "retention band min:max");
    ingest->add_option("--keywords", keywords_flag, "comma-separated keyword phrases");

    auto* label = app.add_subcommand("label", "score corpora with both scorers and take consensus");
    std::string label_corpus_all, label_corpus_inband, label_thresholds;
    label->add_option("--corpus-all", label_corpus_all, "all-covid corpus (jsonl)");
    label->add_option("--corpus-inband", label_corpus_inband, "in-band corpus (jsonl)");
    label->add_option("--thresholds", label_thresholds,
                      "valence binarize thresholds t_pos:t_neg");

    auto* annotate = app.add_subcommand("annotate", "blind interactive annotation session");
    std::string ann_corpus, ann_task, ann_annotator, ann_filter, ann_labels;
    std::size_t ann_n = 30;
    annotate->add_option("--corpus", ann_corpus, "corpus to sample from (jsonl)");
    annotate->add_option("--task-id", ann_task, "task id (shared by both annotators)");
    annotate->add_option("--n", ann_n, "sample size");
    annotate->add_option("--annotator", ann_annotator, "annotator id");
    annotate->add_option("--consensus-filter", ann_filter,
                         "restrict sampling to a tool consensus label (positive/negative)");
    annotate->add_option("--labels", ann_labels, "consensus label csv for --consensus-filter");

    auto* agree = app.add_subcommand("agree", "inter-annotator agreement report");
    std::string agr_task, agr_a, agr_b, agr_tool, agr_corpus;
    bool agr_band_only = false;
    agree->add_option("--task-id", agr_task, "task id");
    agree->add_option("--annotator-a", agr_a, "first annotator id");
    agree->add_option("--annotator-b", agr_b, "second annotator id");
    agree->add_option("--tool-labels", agr_tool, "consensus label csv for validity counts");
    agree->add_flag("--band-only", agr_band_only, "restrict to in-band messages");
    agree->add_option("--corpus", agr_corpus, "corpus used for --band-only word counts");

    auto* eval = app.add_subcommand("eval", "cross-validated grid search over both corpora");
    EvalInputs eval_inputs;
    std::string eval_algorithms, eval_representations, eval_min_freq;
    unsigned eval_threads = 0;
    eval->add_option("--corpus-all", eval_inputs.corpus_all, "all-covid corpus (jsonl)");
    eval->add_option("--corpus-inband", eval_inputs.corpus_inband, "in-band corpus (jsonl)");
    eval->add_option("--labels-all", eval_inputs.labels_all, "labels for the all corpus");
    eval->add_option("--labels-inband", eval_inputs.labels_inband, "labels for the in-band corpus");
    eval->add_option("--algorithms", eval_algorithms, "subset of nb,svm,rf");
    eval->add_option("--representations", eval_representations, "subset of bow,tfidf");
    eval->add_option("--min-freq", eval_min_freq, "min word frequency grid lo:hi");
    std::string eval_vocab_mode;
    eval->add_option("--vocab-mode", eval_vocab_mode,
                     "vocabulary statistics scope: per-fold (default) or global");
    eval->add_option("--threads", eval_threads, "grid worker threads");
    eval->add_flag("--dump-features", eval_inputs.dump_features,
                   "write vocabulary and sparse-matrix audit files");

    auto* report = app.add_subcommand("report", "render reports from a pipeline output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        PipelineConfig config;
        if (!config_path.empty()) config = PipelineConfig::load(config_path);
        if (seed_flag) config.seed = *seed_flag;
        if (!out_flag.empty()) config.out_dir = out_flag;

        if (*ingest) {
            if (!input_flag.empty()) config.set("corpus", "input", input_flag);
            if (!dataset_flag.empty()) config.set("corpus", "dataset", dataset_flag);
            if (!band_flag.empty()) config.set("corpus", "band", band_flag);
            if (!keywords_flag.empty()) config.set("corpus", "keywords", keywords_flag);
            return cmd_ingest(config);
        }
        if (*label) {
            if (!label_thresholds.empty()) {
                const auto colon = label_thresholds.find(':');
                if (colon == std::string::npos)
                    throw UsageError("--thresholds expects t_pos:t_neg");
                config.set("binarize", "valence_pos", label_thresholds.substr(0, colon));
                config.set("binarize", "valence_neg", label_thresholds.substr(colon + 1));
            }
            return cmd_label(config, label_corpus_all, label_corpus_inband);
        }
        if (*annotate)
            return cmd_annotate(config, ann_corpus, ann_task, ann_n, ann_annotator, ann_filter,
                                ann_labels);
        if (*agree)
            return cmd_agree(config, agr_task, agr_a, agr_b, agr_tool, agr_band_only, agr_corpus);
        if (*eval) {
            if (!eval_algorithms.empty()) config.set("eval", "algorithms", eval_algorithms);
            if (!eval_representations.empty())
                config.set("eval", "representations", eval_representations);
            if (!eval_min_freq.empty()) config.set("eval", "min_freq", eval_min_freq);
            if (!eval_vocab_mode.empty()) config.set("eval", "vocab_mode", eval_vocab_mode);
            if (eval_threads != 0) config.threads = eval_threads;
            return cmd_eval(config, eval_inputs);
        }
        if (*report) return cmd_report(config);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
