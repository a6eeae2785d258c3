// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria marked with their runtime budgets; elapsed time is
// printed for each.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "senti/annotate.hpp"
#include "senti/classify.hpp"
#include "senti/corpus.hpp"
#include "senti/eval.hpp"
#include "senti/features.hpp"
#include "senti/lexsent.hpp"
#include "senti/seed.hpp"
#include "senti/types.hpp"

namespace fs = std::filesystem;
using namespace senti;

namespace {

const std::string kData = SENTI_TEST_DATA_DIR;
const std::string kCli = SENTI_CLI_PATH;

int g_failures = 0;

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

void run_criterion(int number, const std::string& name, const std::function<void(Check&)>& body) {
    Check check;
    check.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::cout << (check.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name << " ("
              << elapsed << " ms)";
    if (!check.ok) {
        std::cout << " -- " << check.detail;
        ++g_failures;
    }
    std::cout << '\n';
}

double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

// record pairs realizing both-positive / both-negative / disagreement counts
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
    for (std::size_t i = 0; i < both_pos; ++i)
        push(SentimentLabel::Positive, SentimentLabel::Positive);
    for (std::size_t i = 0; i < both_neg; ++i)
        push(SentimentLabel::Negative, SentimentLabel::Negative);
    for (std::size_t i = 0; i < split; ++i) {
        push(i % 2 == 0 ? SentimentLabel::Positive : SentimentLabel::Negative,
             i % 2 == 0 ? SentimentLabel::Negative : SentimentLabel::Positive);
    }
    return {a, b};
}

std::string make_body(std::size_t words, const std::string& word = "w") {
    std::string body;
    for (std::size_t i = 0; i < words; ++i) {
        if (i != 0) body.push_back(' ');
        body += word;
    }
    return body;
}

// ---------------------------------------------------------------------------
// planted-signal corpus for the end-to-end criterion

struct PlantedCorpus {
    std::vector<RawComment> comments;
};

PlantedCorpus build_planted_corpus(std::uint64_t seed) {
    const std::vector<std::string> positive_pool = {"good", "great", "happy",   "amazing",
                                                    "nice", "glad",  "grateful", "excellent"};
    const std::vector<std::string> negative_pool = {"bad", "terrible", "sad",    "awful",
                                                    "angry", "scared", "painful", "horrible"};
    const std::vector<std::string> filler = {"the",  "a",    "of",   "to",    "and",  "it",
                                             "day",  "week", "plan", "city",  "home", "case",
                                             "time", "way",  "part", "point", "side", "news"};
    const std::vector<std::string> keywords = {"covid", "vaccine", "lockdown", "pandemic",
                                               "booster"};
    std::mt19937_64 rng(seed);
    auto pick = [&rng](const std::vector<std::string>& pool) { return pool[rng() % pool.size()]; };

    PlantedCorpus corpus;
    std::size_t next_id = 0;
    auto add = [&](std::string body) {
        RawComment comment;
        comment.id = "p" + std::to_string(next_id++);
        comment.author = "writer" + std::to_string(rng() % 400);
        comment.body = std::move(body);
        comment.created_utc = 1609459200 + static_cast<std::int64_t>(rng() % 15000000);
        comment.subreddit = rng() % 2 == 0 ? "canada" : "unitedkingdom";
        corpus.comments.push_back(std::move(comment));
    };

    // 1800 in-band messages with a clean planted signal
    for (int i = 0; i < 1800; ++i) {
        const bool positive = i % 2 == 0;
        const auto& pool = positive ? positive_pool : negative_pool;
        std::vector<std::string> words;
        const std::size_t n_filler = 20 + rng() % 60;
        for (std::size_t j = 0; j < n_filler; ++j) words.push_back(pick(filler));
        for (int j = 0; j < 4; ++j) words.push_back(pick(pool));
        words.push_back(pick(keywords));
        for (std::size_t j = words.size(); j > 1; --j) std::swap(words[j - 1], words[rng() % j]);
        std::string body;
        for (const auto& word : words) {
            if (!body.empty()) body.push_back(' ');
            body += word;
        }
        add(body);
    }

    // 200 length-outliers (10%) whose mixed-polarity phrasing splits the two
    // scorers: the valence rules see the negation three tokens back, the
    // polarity window does not reach it
    for (int i = 0; i < 100; ++i) {
        add("not really very " + pick(positive_pool) + " covid");
    }
    for (int i = 0; i < 100; ++i) {
        std::string body;
        for (int j = 0; j < 3; ++j) body += "not really very " + pick(positive_pool) + " ";
        const std::size_t pad = 250 + rng() % 30;
        for (std::size_t j = 0; j < pad; ++j) body += pick(filler) + " ";
        body += pick(keywords);
        add(body);
    }
    return corpus;
}

// ---------------------------------------------------------------------------
// shell helpers for the determinism criterion

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) return "<missing:" + path.string() + ">";
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    run_criterion(1, "inter-annotator agreement ratios", [](Check& c) {
        struct Case {
            std::size_t both_pos, both_neg, group;
            double display3;
        };
        const Case cases[] = {
            {5, 14, 30, 0.633}, {6, 18, 30, 0.800}, {2, 43, 50, 0.900},
            {0, 46, 50, 0.920}, {0, 43, 46, 0.935},
        };
        for (const auto& t : cases) {
            const auto [a, b] = records_with_counts(t.both_pos, t.both_neg,
                                                    t.group - t.both_pos - t.both_neg);
            const AgreementReport report = inter_annotator_agreement(a, b);
            c.require(report.group_size == t.group, "wrong group size");
            c.require(round_to(report.agreement, 3) == t.display3,
                      "3-decimal display mismatch for " + std::to_string(t.both_pos) + "+" +
                          std::to_string(t.both_neg) + "/" + std::to_string(t.group));
        }
        // the printed two-decimal figures follow from rounding the display
        const auto [a, b] = records_with_counts(0, 43, 3);
        const AgreementReport uk_band = inter_annotator_agreement(a, b);
        c.require(round_to(round_to(uk_band.agreement, 3), 2) == 0.94,
                  "two-decimal rounding of 43/46 should print 0.94");
    });

    run_criterion(2, "scorer agreement arithmetic", [](Check& c) {
        const AgreementStats uk_all = agreement_stats_from_counts(1570, 1001, 4218);
        c.require(std::fabs(uk_all.agreement_pct - 60.95) <= 0.01,
                  "UK agreement " + std::to_string(uk_all.agreement_pct));
        const AgreementStats uk_band = agreement_stats_from_counts(1390, 956, 3886);
        c.require(std::fabs(uk_band.positive_share_pct - 35.77) <= 0.01,
                  "UK positive share " + std::to_string(uk_band.positive_share_pct));
        const AgreementStats ca_band = agreement_stats_from_counts(3444, 1704, 8336);
        c.require(std::fabs(ca_band.positive_share_pct - 41.32) <= 0.02,
                  "Canada positive share " + std::to_string(ca_band.positive_share_pct));
    });

    run_criterion(3, "corpus stats band arithmetic", [](Check& c) {
        std::vector<RawComment> raw;
        std::vector<Message> covid;
        auto add = [&](std::size_t count, std::size_t words) {
            for (std::size_t i = 0; i < count; ++i) {
                RawComment comment;
                comment.id = "m" + std::to_string(raw.size());
                comment.author = "a" + std::to_string(raw.size() % 500);
                comment.body = make_body(words);
                raw.push_back(comment);
                covid.push_back(make_message(comment));
            }
        };
        add(95, 7);
        add(237, 280);
        add(3886, 90);
        const CorpusStats stats = corpus_stats(raw, covid, LengthBand{});
        c.require(stats.covid_related == 4218, "covid_related");
        c.require(stats.below_band == 95, "below_band");
        c.require(stats.above_band == 237, "above_band");
        c.require(stats.in_band == 3886, "in_band");
        c.require(stats.covid_related - stats.below_band - stats.above_band == stats.in_band,
                  "band identity");
    });

    run_criterion(4, "length filter partition properties (1000 corpora)", [](Check& c) {
        std::mt19937_64 rng(404);
        for (int round = 0; round < 1000; ++round) {
            std::vector<Message> messages;
            const std::size_t n = rng() % 120;
            for (std::size_t i = 0; i < n; ++i) {
                Message message;
                message.id = "m" + std::to_string(i);
                message.word_count = rng() % 400;
                messages.push_back(std::move(message));
            }
            const std::size_t lo = rng() % 30;
            const LengthBand band{lo, lo + rng() % 300};

            const LengthFilterResult once = filter_by_length(messages, band);
            c.require(once.retained.size() + once.dropped_short + once.dropped_long ==
                          messages.size(),
                      "partition violated");

            const LengthFilterResult twice = filter_by_length(once.retained, band);
            c.require(twice.retained.size() == once.retained.size() && twice.dropped_short == 0 &&
                          twice.dropped_long == 0,
                      "idempotence violated");

            const LengthBand wider{band.min_words == 0 ? 0 : band.min_words - 1,
                                   band.max_words + 1 + rng() % 20};
            c.require(filter_by_length(messages, wider).retained.size() >= once.retained.size(),
                      "monotonicity violated");
            if (!c.ok) return;
        }
    });

    run_criterion(5, "scorer golden-file equivalence", [](Check& c) {
        const ValenceLexicon valence =
            load_valence_lexicon(kData + "/valence_demo.tsv", kData + "/boosters_demo.tsv",
                                 kData + "/negators_demo.txt");
        const PolarityLexicon polarity = load_polarity_lexicon(
            kData + "/polarity_demo.tsv", kData + "/polarity_negators_demo.txt");

        auto check_golden = [&c](const std::string& path,
                                 const std::function<double(const std::string&)>& score) {
            std::ifstream in(path);
            c.require(in.is_open(), "cannot open golden file " + path);
            std::string line;
            std::size_t count = 0;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const auto tab = line.find('\t');
                const double expected = std::stod(line.substr(0, tab));
                const std::string text = line.substr(tab + 1);
                const double got = score(text);
                c.require(std::fabs(got - expected) <= 1e-4,
                          "mismatch on '" + text + "': " + std::to_string(got) + " vs " +
                              std::to_string(expected));
                ++count;
            }
            c.require(count >= 50, "golden suite smaller than 50 texts");
        };
        const ValenceParams params;
        check_golden(kData + "/valence_golden.tsv", [&](const std::string& text) {
            return score_valence(text, valence, params).value;
        });
        check_golden(kData + "/polarity_golden.tsv", [&](const std::string& text) {
            return score_polarity(text, polarity).value;
        });
    });

    run_criterion(6, "naive bayes closed-form oracle", [](Check& c) {
        const std::vector<std::vector<std::string>> docs = {
            {"a", "a", "b"}, {"a", "c"}, {"b", "b", "c"}, {"c"}};
        const Vocabulary vocab = Vocabulary::build(docs, 1);
        FeatureMatrix matrix;
        matrix.vocabulary = &vocab;
        for (const auto& doc : docs) matrix.vectors.push_back(vectorize_bow(doc, vocab));
        matrix.labels = {SentimentLabel::Positive, SentimentLabel::Positive,
                         SentimentLabel::Negative, SentimentLabel::Negative};
        const double alpha = 1.0;
        const NBModel model = train_nb(matrix, alpha);

        const double pos_counts[3] = {3, 1, 1};
        const double neg_counts[3] = {0, 2, 2};
        const double pos_mass = 5;
        const double neg_mass = 4;
        for (std::size_t t = 0; t < 3; ++t) {
            const double expect_pos = std::log((pos_counts[t] + alpha) / (pos_mass + 3 * alpha));
            const double expect_neg = std::log((neg_counts[t] + alpha) / (neg_mass + 3 * alpha));
            c.require(std::fabs(model.term_log_likelihoods[kPositive][t] - expect_pos) <= 1e-12,
                      "positive likelihood " + std::to_string(t));
            c.require(std::fabs(model.term_log_likelihoods[kNegative][t] - expect_neg) <= 1e-12,
                      "negative likelihood " + std::to_string(t));
        }
        // posteriors for every document in the fixture
        for (std::size_t d = 0; d < docs.size(); ++d) {
            double pos = std::log(0.5);
            double neg = std::log(0.5);
            for (const auto& token : docs[d]) {
                const std::size_t t = static_cast<std::size_t>(vocab.index_of(token));
                pos += std::log((pos_counts[t] + alpha) / (pos_mass + 3 * alpha));
                neg += std::log((neg_counts[t] + alpha) / (neg_mass + 3 * alpha));
            }
            const Prediction prediction = model.predict(matrix.vectors[d]);
            c.require(std::fabs(prediction.score - (pos - neg)) <= 1e-12,
                      "posterior log-odds doc " + std::to_string(d));
        }
    });

    run_criterion(7, "metrics brute-force oracle (25 random matrices)", [](Check& c) {
        std::mt19937_64 rng(707);
        for (int round = 0; round < 25; ++round) {
            const std::size_t tp = rng() % 60;
            const std::size_t fn = rng() % 60;
            const std::size_t fp = rng() % 60;
            const std::size_t tn = 1 + rng() % 60;
            ConfusionMatrix cm;
            cm.counts[kPositive][kPositive] = tp;
            cm.counts[kPositive][kNegative] = fn;
            cm.counts[kNegative][kPositive] = fp;
            cm.counts[kNegative][kNegative] = tn;
            const MetricsReport report = compute_metrics(cm);

            const double pp = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
            const double pr = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
            const double pf = pp + pr == 0 ? 0.0 : 2 * pp * pr / (pp + pr);
            const double np = tn + fn == 0 ? 0.0 : double(tn) / double(tn + fn);
            const double nr = tn + fp == 0 ? 0.0 : double(tn) / double(tn + fp);
            const double nf = np + nr == 0 ? 0.0 : 2 * np * nr / (np + nr);
            c.require(std::fabs(report.macro_precision - (pp + np) / 2) <= 1e-12, "macro precision");
            c.require(std::fabs(report.macro_recall - (pr + nr) / 2) <= 1e-12, "macro recall");
            c.require(std::fabs(report.macro_f1 - (pf + nf) / 2) <= 1e-12, "macro f1");
            c.require(std::fabs(report.accuracy - double(tp + tn) / double(tp + fn + fp + tn)) <=
                          1e-12,
                      "accuracy");

            ConfusionMatrix swapped;
            swapped.counts[kPositive][kPositive] = tn;
            swapped.counts[kPositive][kNegative] = fp;
            swapped.counts[kNegative][kPositive] = fn;
            swapped.counts[kNegative][kNegative] = tp;
            const MetricsReport mirrored = compute_metrics(swapped);
            c.require(std::fabs(report.macro_f1 - mirrored.macro_f1) <= 1e-12 &&
                          std::fabs(report.macro_precision - mirrored.macro_precision) <= 1e-12 &&
                          std::fabs(report.accuracy - mirrored.accuracy) <= 1e-12,
                      "class-swap symmetry");
            if (!c.ok) return;
        }
    });

    run_criterion(8, "stratified CV partition (100 label vectors)", [](Check& c) {
        std::mt19937_64 rng(808);
        for (int round = 0; round < 100; ++round) {
            const std::size_t k = 2 + rng() % 9;
            const std::size_t pos = k + rng() % 80;
            const std::size_t neg = k + rng() % 80;
            std::vector<SentimentLabel> labels(pos, SentimentLabel::Positive);
            labels.insert(labels.end(), neg, SentimentLabel::Negative);
            for (std::size_t i = labels.size(); i > 1; --i)
                std::swap(labels[i - 1], labels[rng() % i]);

            const CVPlan plan = stratified_kfold(labels, k, rng());
            c.require(plan.fold_of.size() == labels.size(), "plan size");

            std::vector<std::size_t> fold_pos(k, 0);
            std::vector<std::size_t> fold_neg(k, 0);
            std::size_t assigned = 0;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (plan.fold_of[i] >= k) {
                    c.require(false, "fold id out of range");
                    return;
                }
                ++assigned;
                (labels[i] == SentimentLabel::Positive ? fold_pos : fold_neg)[plan.fold_of[i]] += 1;
            }
            c.require(assigned == labels.size(), "every index in exactly one fold");
            for (const auto& counts : {fold_pos, fold_neg}) {
                const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
                c.require(*hi - *lo <= 1, "per-class fold spread exceeds 1");
            }
            // the training complement of a fold never contains its test docs
            for (std::size_t f = 0; f < k; ++f) {
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    const bool in_test = plan.fold_of[i] == f;
                    const bool in_train = plan.fold_of[i] != f;
                    if (in_test == in_train) {
                        c.require(false, "train/test overlap");
                        return;
                    }
                }
            }
            if (!c.ok) return;
        }
    });

    run_criterion(9, "end-to-end planted-signal pipeline", [](Check& c) {
        const PlantedCorpus planted = build_planted_corpus(909);

        // corpus stage: keyword + bot filters, then the band split
        const auto& keywords = default_covid_keywords();
        std::vector<RawComment> covid_comments;
        std::vector<Message> covid_messages;
        for (const auto& comment : planted.comments) {
            if (!is_covid_related(comment.body, keywords)) continue;
            if (is_bot(comment.author, comment.body)) continue;
            covid_comments.push_back(comment);
            covid_messages.push_back(make_message(comment));
        }
        c.require(covid_messages.size() == planted.comments.size(),
                  "planted corpus should survive the filters intact");

        const LengthBand band;
        const LengthFilterResult split = filter_by_length(covid_messages, band);
        c.require(split.dropped_short == 100 && split.dropped_long == 100,
                  "outlier construction mismatch: short=" + std::to_string(split.dropped_short) +
                      " long=" + std::to_string(split.dropped_long));

        // labeling stage, on the full and the in-band corpus
        const ValenceLexicon valence =
            load_valence_lexicon(kData + "/valence_demo.tsv", kData + "/boosters_demo.tsv",
                                 kData + "/negators_demo.txt");
        const PolarityLexicon polarity = load_polarity_lexicon(
            kData + "/polarity_demo.tsv", kData + "/polarity_negators_demo.txt");
        const ValenceParams params;
        const BinarizeThresholds valence_thresholds = BinarizeThresholds::valence_default();
        const BinarizeThresholds polarity_thresholds = BinarizeThresholds::polarity_default();

        std::unordered_map<std::string, std::string> body_of;
        for (const auto& comment : covid_comments) body_of.emplace(comment.id, comment.body);

        auto label_messages = [&](const std::vector<Message>& messages) {
            std::vector<ConsensusRecord> records;
            records.reserve(messages.size());
            for (const auto& message : messages) {
                const std::string& body = body_of.at(message.id);
                const SentimentLabel a =
                    binarize(score_valence(body, valence, params), valence_thresholds);
                const SentimentLabel b =
                    binarize(score_polarity(body, polarity), polarity_thresholds);
                records.push_back(make_consensus_record(message.id, a, b));
            }
            return records;
        };

        const std::vector<ConsensusRecord> all_records = label_messages(covid_messages);
        const std::vector<ConsensusRecord> band_records = label_messages(split.retained);
        const AgreementStats all_stats = agreement_stats(all_records);
        const AgreementStats band_stats = agreement_stats(band_records);
        c.require(band_stats.agreement_pct > all_stats.agreement_pct,
                  "in-band agreement " + std::to_string(band_stats.agreement_pct) +
                      " not above full-corpus " + std::to_string(all_stats.agreement_pct));

        // classification stage on the in-band consensus labels
        LabeledCorpus corpus;
        std::unordered_map<std::string, SentimentLabel> consensus_of;
        for (const auto& record : band_records) {
            if (record.consensus) consensus_of.emplace(record.message_id, *record.consensus);
        }
        for (const auto& message : split.retained) {
            const auto it = consensus_of.find(message.id);
            if (it == consensus_of.end()) continue;
            corpus.documents.push_back(tokenize(body_of.at(message.id)));
            corpus.labels.push_back(it->second);
        }
        c.require(corpus.size() >= 1500, "expected most in-band messages consensus-labeled, got " +
                                             std::to_string(corpus.size()));

        const CVPlan cv = stratified_kfold(corpus.labels, 10, derive_seed(909, "folds", 0));
        ClassifierParams hyper;
        hyper.svm_c = 0.4;
        hyper.seed = derive_seed(909, "train", 0);
        for (Algorithm algorithm : {Algorithm::NB, Algorithm::SVM, Algorithm::RF}) {
            const MetricsReport report =
                cross_validate(corpus, algorithm, Representation::BOW, 1, hyper, cv);
            c.require(report.macro_f1 >= 0.90, std::string(to_string(algorithm)) + " macro F " +
                                                   std::to_string(report.macro_f1) + " below 0.90");
        }
    });

    run_criterion(10, "byte-identical reruns, incl. parallel grid", [](Check& c) {
        const fs::path work = fs::temp_directory_path() / "senti_acceptance_det";
        fs::remove_all(work);
        fs::create_directories(work);
        const fs::path config_path = work / "pipeline.conf";
        {
            std::ofstream config(config_path);
            config << "seed = 42\n[lexicons]\n";
            config << "valence = " << kData << "/valence_demo.tsv\n";
            config << "boosters = " << kData << "/boosters_demo.tsv\n";
            config << "negators = " << kData << "/negators_demo.txt\n";
            config << "polarity = " << kData << "/polarity_demo.tsv\n";
            config << "polarity_negators = " << kData << "/polarity_negators_demo.txt\n";
            config << "[eval]\nmin_freq = 1:2\nrepresentations = bow\n";
        }

        auto run_pipeline = [&](const fs::path& out, unsigned threads) {
            const std::string base = kCli + " --config " + config_path.string() + " --out " +
                                     out.string();
            if (run_command(base + " ingest --input " + kData + "/demo_dump.jsonl > /dev/null") !=
                0)
                return false;
            if (run_command(base + " label > /dev/null") != 0) return false;
            return run_command(base + " eval --threads " + std::to_string(threads) +
                               " > /dev/null") == 0;
        };

        const fs::path out_a = work / "a";
        const fs::path out_b = work / "b";
        const fs::path out_c = work / "c";
        c.require(run_pipeline(out_a, 1), "pipeline run A failed");
        c.require(run_pipeline(out_b, 1), "pipeline run B failed");
        c.require(run_pipeline(out_c, 4), "pipeline run C (threads=4) failed");
        if (!c.ok) return;

        const char* reports[] = {"stats.csv",       "covid_all.jsonl", "covid_inband.jsonl",
                                 "labels_all.csv",  "labels_inband.csv", "agreement.csv",
                                 "grid_all.csv",    "grid_inband.csv", "delta.csv"};
        for (const char* file : reports) {
            c.require(slurp(out_a / file) == slurp(out_b / file),
                      std::string("rerun differs in ") + file);
            c.require(slurp(out_a / file) == slurp(out_c / file),
                      std::string("parallel grid differs in ") + file);
        }
        fs::remove_all(work);
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed\n";
    return 1;
}
