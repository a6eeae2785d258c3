#include "senti/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace senti {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    const std::int64_t parsed = parse_int(key, value);
    if (parsed < 0) throw std::invalid_argument("config: " + key + " must be non-negative");
    return static_cast<std::uint64_t>(parsed);
}

void write_double_value(std::ostream& out, double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.write(buffer, result.ptr - buffer);
}

void write_list(std::ostream& out, const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out << ", ";
        out << values[i];
    }
}

}  // namespace

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string trimmed = trim(item);
        if (!trimmed.empty()) items.push_back(trimmed);
    }
    return items;
}

double PipelineConfig::svm_c_for(const std::string& dataset_name) const {
    if (svm_c_override > 0.0) return svm_c_override;
    const std::string name = lower(dataset_name);
    if (name == "canada") return svm_c_canada;
    return svm_c_uk;
}

void PipelineConfig::set(const std::string& section, const std::string& key,
                         const std::string& value) {
    const std::string full = section.empty() ? key : section + "." + key;

    if (full == "seed") { seed = parse_uint(full, value); return; }
    if (full == "out") { out_dir = value; return; }

    if (full == "corpus.input") { input_dump = value; return; }
    if (full == "corpus.dataset") { dataset = value; return; }
    if (full == "corpus.band") {
        const auto colon = value.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("config: corpus.band expects min:max, got '" + value + "'");
        band.min_words = static_cast<std::size_t>(parse_uint(full, trim(value.substr(0, colon))));
        band.max_words = static_cast<std::size_t>(parse_uint(full, trim(value.substr(colon + 1))));
        band.validate();
        return;
    }
    if (full == "corpus.keywords") { keywords = split_list(value); return; }
    if (full == "corpus.bot_blocklist") { bot_blocklist = split_list(value); return; }
    if (full == "corpus.start_utc") { start_utc = parse_int(full, value); return; }
    if (full == "corpus.end_utc") { end_utc = parse_int(full, value); return; }

    if (full == "lexicons.valence") { valence_lexicon = value; return; }
    if (full == "lexicons.boosters") { valence_boosters = value; return; }
    if (full == "lexicons.negators") { valence_negators = value; return; }
    if (full == "lexicons.polarity") { polarity_lexicon = value; return; }
    if (full == "lexicons.polarity_negators") { polarity_negators = value; return; }

    if (full == "binarize.valence_pos") { valence_thresholds.t_pos = parse_double(full, value); return; }
    if (full == "binarize.valence_neg") { valence_thresholds.t_neg = parse_double(full, value); return; }
    if (full == "binarize.polarity_pos") { polarity_thresholds.t_pos = parse_double(full, value); return; }
    if (full == "binarize.polarity_neg") { polarity_thresholds.t_neg = parse_double(full, value); return; }

    if (full == "valence.alpha") { valence_params.alpha = parse_double(full, value); return; }
    if (full == "valence.caps_boost") { valence_params.caps_boost = parse_double(full, value); return; }
    if (full == "valence.negation_factor") { valence_params.negation_factor = parse_double(full, value); return; }
    if (full == "valence.damp_distance2") { valence_params.damp_distance2 = parse_double(full, value); return; }
    if (full == "valence.damp_distance3") { valence_params.damp_distance3 = parse_double(full, value); return; }
    if (full == "valence.but_before_weight") { valence_params.but_before_weight = parse_double(full, value); return; }
    if (full == "valence.but_after_weight") { valence_params.but_after_weight = parse_double(full, value); return; }
    if (full == "valence.exclamation_increment") { valence_params.exclamation_increment = parse_double(full, value); return; }
    if (full == "valence.max_exclamations") { valence_params.max_exclamations = parse_uint(full, value); return; }
    if (full == "valence.booster_increment") { valence_params.default_booster_increment = parse_double(full, value); return; }

    if (full == "classify.nb_alpha") { nb_alpha = parse_double(full, value); return; }
    if (full == "classify.svm_c_canada") { svm_c_canada = parse_double(full, value); return; }
    if (full == "classify.svm_c_uk") { svm_c_uk = parse_double(full, value); return; }
    if (full == "classify.svm_c") {
        svm_c_override = value == "auto" ? 0.0 : parse_double(full, value);
        return;
    }
    if (full == "classify.svm_epochs") { svm_epochs = parse_uint(full, value); return; }
    if (full == "classify.rf_trees") { rf_trees = parse_uint(full, value); return; }
    if (full == "classify.rf_max_features") { rf_max_features = parse_uint(full, value); return; }

    if (full == "eval.k") { cv_k = parse_uint(full, value); return; }
    if (full == "eval.min_freq") {
        const auto colon = value.find(':');
        if (colon == std::string::npos) {
            min_freq_lo = min_freq_hi = static_cast<std::size_t>(parse_uint(full, value));
        } else {
            min_freq_lo = static_cast<std::size_t>(parse_uint(full, trim(value.substr(0, colon))));
            min_freq_hi = static_cast<std::size_t>(parse_uint(full, trim(value.substr(colon + 1))));
        }
        if (min_freq_lo < 1 || min_freq_lo > min_freq_hi)
            throw std::invalid_argument("config: eval.min_freq range is invalid");
        return;
    }
    if (full == "eval.algorithms") { algorithms = split_list(lower(value)); return; }
    if (full == "eval.representations") { representations = split_list(lower(value)); return; }
    if (full == "eval.vocab_mode") {
        const std::string mode = lower(value);
        if (mode != "per-fold" && mode != "global")
            throw std::invalid_argument("config: eval.vocab_mode must be per-fold or global");
        vocab_mode = mode;
        return;
    }
    if (full == "eval.threads") { threads = static_cast<unsigned>(parse_uint(full, value)); return; }

    throw std::invalid_argument("config: unknown key '" + full + "'");
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw std::runtime_error("cannot open config file: " + path);

    PipelineConfig config;
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.front() == '[' && stripped.back() == ']') {
            section = trim(stripped.substr(1, stripped.size() - 2));
            continue;
        }
        const auto equals = stripped.find('=');
        if (equals == std::string::npos) {
            throw std::runtime_error("config " + path + " line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, equals));
        const std::string value = trim(stripped.substr(equals + 1));
        try {
            config.set(section, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("config " + path + " line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return config;
}

void PipelineConfig::echo(std::ostream& out) const {
    out << "seed = " << seed << '\n';
    out << "out = " << out_dir << "\n\n";

    out << "[corpus]\n";
    out << "input = " << input_dump << '\n';
    out << "dataset = " << dataset << '\n';
    out << "band = " << band.min_words << ':' << band.max_words << '\n';
    out << "keywords = ";
    write_list(out, keywords);
    out << '\n';
    out << "bot_blocklist = ";
    write_list(out, bot_blocklist);
    out << '\n';
    if (start_utc != std::numeric_limits<std::int64_t>::min())
        out << "start_utc = " << start_utc << '\n';
    if (end_utc != std::numeric_limits<std::int64_t>::max()) out << "end_utc = " << end_utc << '\n';
    out << '\n';

    out << "[lexicons]\n";
    out << "valence = " << valence_lexicon << '\n';
    out << "boosters = " << valence_boosters << '\n';
    out << "negators = " << valence_negators << '\n';
    out << "polarity = " << polarity_lexicon << '\n';
    out << "polarity_negators = " << polarity_negators << "\n\n";

    out << "[binarize]\n";
    out << "valence_pos = ";
    write_double_value(out, valence_thresholds.t_pos);
    out << "\nvalence_neg = ";
    write_double_value(out, valence_thresholds.t_neg);
    out << "\npolarity_pos = ";
    write_double_value(out, polarity_thresholds.t_pos);
    out << "\npolarity_neg = ";
    write_double_value(out, polarity_thresholds.t_neg);
    out << "\n\n";

    out << "[valence]\n";
    out << "alpha = ";
    write_double_value(out, valence_params.alpha);
    out << "\ncaps_boost = ";
    write_double_value(out, valence_params.caps_boost);
    out << "\nnegation_factor = ";
    write_double_value(out, valence_params.negation_factor);
    out << "\ndamp_distance2 = ";
    write_double_value(out, valence_params.damp_distance2);
    out << "\ndamp_distance3 = ";
    write_double_value(out, valence_params.damp_distance3);
    out << "\nbut_before_weight = ";
    write_double_value(out, valence_params.but_before_weight);
    out << "\nbut_after_weight = ";
    write_double_value(out, valence_params.but_after_weight);
    out << "\nexclamation_increment = ";
    write_double_value(out, valence_params.exclamation_increment);
    out << "\nmax_exclamations = " << valence_params.max_exclamations;
    out << "\nbooster_increment = ";
    write_double_value(out, valence_params.default_booster_increment);
    out << "\n\n";

    out << "[classify]\n";
    out << "nb_alpha = ";
    write_double_value(out, nb_alpha);
    out << "\nsvm_c_canada = ";
    write_double_value(out, svm_c_canada);
    out << "\nsvm_c_uk = ";
    write_double_value(out, svm_c_uk);
    out << "\nsvm_c = ";
    if (svm_c_override > 0.0) write_double_value(out, svm_c_override);
    else out << "auto";
    out << "\nsvm_epochs = " << svm_epochs << '\n';
    out << "rf_trees = " << rf_trees << '\n';
    out << "rf_max_features = " << rf_max_features << "\n\n";

    out << "[eval]\n";
    out << "k = " << cv_k << '\n';
    out << "min_freq = " << min_freq_lo << ':' << min_freq_hi << '\n';
    out << "algorithms = ";
    write_list(out, algorithms);
    out << '\n';
    out << "representations = ";
    write_list(out, representations);
    out << '\n';
    out << "vocab_mode = " << vocab_mode << '\n';
    out << "threads = " << threads << '\n';
}

}  // namespace senti
