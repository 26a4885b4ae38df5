#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wnlink/error.hpp"
#include "wnlink/links.hpp"
#include "wnlink/pos.hpp"
#include "wnlink/text.hpp"
#include "wnlink/wordnet.hpp"

namespace wnlink {

struct EvalCell {
    std::size_t evaluated = 0;       // induced links that appear in the test set
    std::size_t hits = 0;            // of those, how many the test set labels correct
    std::size_t test_correct = 0;    // correct links in the test set
    std::optional<double> precision; // undefined when nothing was evaluated
    double recall = 0;
    std::optional<double> f1;

    void finalize() {
        if (evaluated > 0)
            precision = static_cast<double>(hits) / static_cast<double>(evaluated);
        recall = test_correct > 0 ? static_cast<double>(hits) / static_cast<double>(test_correct)
                                  : 0.0;
        if (precision && *precision + recall > 0)
            f1 = 2 * *precision * recall / (*precision + recall);
        else if (precision)
            f1 = 0.0;
    }
};

struct EvalReport {
    EvalCell overall;
    std::map<Pos, EvalCell> per_pos;
};

/// Precision over the induced links the test set can judge, recall over the
/// test set's correct links, broken down by the POS carried in synset ids.
inline EvalReport evaluate(const std::vector<LinkKey>& induced, const TestSet& test) {
    std::set<LinkKey> induced_set(induced.begin(), induced.end());
    EvalReport report;
    for (Pos p : kAllPos) report.per_pos[p];

    auto pos_of = [](const LinkKey& key) {
        auto p = pos_from_synset_id(key.synset_id);
        if (!p) throw Error("synset id '" + key.synset_id + "' carries no POS suffix");
        return *p;
    };

    for (const auto& entry : test.entries) {
        const Pos p = pos_of(entry.key);
        if (entry.correct) {
            ++report.overall.test_correct;
            ++report.per_pos[p].test_correct;
        }
        if (induced_set.count(entry.key)) {
            ++report.overall.evaluated;
            ++report.per_pos[p].evaluated;
            if (entry.correct) {
                ++report.overall.hits;
                ++report.per_pos[p].hits;
            }
        }
    }
    report.overall.finalize();
    for (auto& [p, cell] : report.per_pos) cell.finalize();
    return report;
}

struct WordnetStats {
    std::size_t words = 0;    // unique target lemmas
    std::size_t synsets = 0;  // unique synset ids
    std::size_t pairs = 0;    // word-sense pairs (links)
    double polysemy_rate = 0; // share of words with more than one sense
    struct PosRow {
        std::size_t words = 0, synsets = 0, pairs = 0;
    };
    std::map<Pos, PosRow> per_pos;
};

inline WordnetStats wordnet_stats(const std::vector<LinkKey>& induced) {
    WordnetStats stats;
    for (Pos p : kAllPos) stats.per_pos[p];

    std::set<LinkKey> links(induced.begin(), induced.end());
    std::map<std::string, std::size_t> senses_per_word;
    std::set<std::string> synsets;
    std::map<Pos, std::set<std::string>> pos_words, pos_synsets;

    for (const auto& key : links) {
        auto p = pos_from_synset_id(key.synset_id);
        if (!p) throw Error("synset id '" + key.synset_id + "' carries no POS suffix");
        ++senses_per_word[key.lemma];
        synsets.insert(key.synset_id);
        pos_words[*p].insert(key.lemma);
        pos_synsets[*p].insert(key.synset_id);
        ++stats.per_pos[*p].pairs;
    }
    stats.words = senses_per_word.size();
    stats.synsets = synsets.size();
    stats.pairs = links.size();
    std::size_t polysemous = 0;
    for (const auto& [w, n] : senses_per_word) polysemous += n > 1 ? 1 : 0;
    stats.polysemy_rate =
        stats.words > 0 ? static_cast<double>(polysemous) / static_cast<double>(stats.words) : 0.0;
    for (Pos p : kAllPos) {
        stats.per_pos[p].words = pos_words[p].size();
        stats.per_pos[p].synsets = pos_synsets[p].size();
    }
    return stats;
}

struct CoverageReport {
    std::size_t induced_words_in_vocab = 0;  // unique induced words seen in the corpus
    std::size_t vocab_size = 0;
    std::size_t induced_synsets = 0;
    std::size_t wordnet_synsets = 0;
    double synset_coverage = 0;
    std::optional<double> core_coverage;  // absent when no core list was given
    std::size_t core_size = 0;
};

inline CoverageReport coverage(const std::vector<LinkKey>& induced,
                               const std::set<std::string>& corpus_vocab, const WordnetIndex& wn,
                               const std::set<std::string>& core_synsets) {
    CoverageReport report;
    std::set<std::string> words, synsets;
    for (const auto& key : induced) {
        words.insert(key.lemma);
        synsets.insert(key.synset_id);
    }
    for (const auto& w : words) report.induced_words_in_vocab += corpus_vocab.count(w);
    report.vocab_size = corpus_vocab.size();
    report.induced_synsets = synsets.size();
    report.wordnet_synsets = wn.size();
    report.synset_coverage = wn.size() > 0 ? static_cast<double>(synsets.size()) /
                                                 static_cast<double>(wn.size())
                                           : 0.0;
    report.core_size = core_synsets.size();
    if (!core_synsets.empty()) {
        std::size_t covered = 0;
        for (const auto& id : core_synsets) covered += synsets.count(id);
        report.core_coverage = static_cast<double>(covered) / static_cast<double>(core_synsets.size());
    }
    return report;
}

// One synset id per line.
inline std::set<std::string> load_core_synsets(const std::string& path) {
    auto in = open_input(path);
    std::set<std::string> core;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        line = trim(line);
        if (!line.empty()) core.insert(line);
    }
    return core;
}

// ---- report serialization -------------------------------------------------

inline nlohmann::ordered_json eval_cell_to_json(const EvalCell& c) {
    nlohmann::ordered_json j;
    j["evaluated"] = c.evaluated;
    j["hits"] = c.hits;
    j["test_correct"] = c.test_correct;
    j["precision"] = c.precision ? nlohmann::ordered_json(*c.precision)
                                 : nlohmann::ordered_json(nullptr);
    j["recall"] = c.recall;
    j["f1"] = c.f1 ? nlohmann::ordered_json(*c.f1) : nlohmann::ordered_json(nullptr);
    return j;
}

inline nlohmann::ordered_json eval_report_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    for (const auto& [p, cell] : r.per_pos) j["per_pos"][pos_name(p)] = eval_cell_to_json(cell);
    j["overall"] = eval_cell_to_json(r.overall);
    return j;
}

inline std::string render_percent(std::optional<double> v) {
    if (!v) return "n/a";
    return format_double(*v * 100.0, 2);
}

inline std::string render_eval_report(const EvalReport& r) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "POS" << std::right << std::setw(12) << "Precision"
        << std::setw(10) << "Recall" << std::setw(12) << "F-measure" << '\n';
    auto row = [&](const std::string& name, const EvalCell& c) {
        out << std::left << std::setw(12) << name << std::right << std::setw(12)
            << render_percent(c.precision) << std::setw(10)
            << format_double(c.recall * 100.0, 2) << std::setw(12) << render_percent(c.f1) << '\n';
    };
    for (const auto& [p, cell] : r.per_pos) row(pos_name(p), cell);
    row("total", r.overall);
    return out.str();
}

inline nlohmann::ordered_json stats_to_json(const WordnetStats& s) {
    nlohmann::ordered_json j;
    for (const auto& [p, row] : s.per_pos)
        j["per_pos"][pos_name(p)] = {{"words", row.words},
                                     {"synsets", row.synsets},
                                     {"word_sense_pairs", row.pairs}};
    j["total"] = {{"words", s.words}, {"synsets", s.synsets}, {"word_sense_pairs", s.pairs}};
    j["polysemy_rate"] = s.polysemy_rate;
    return j;
}

inline std::string render_stats(const WordnetStats& s) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "POS" << std::right << std::setw(10) << "Words"
        << std::setw(10) << "Synsets" << std::setw(20) << "Word-sense pairs" << '\n';
    for (const auto& [p, row] : s.per_pos)
        out << std::left << std::setw(12) << pos_name(p) << std::right << std::setw(10) << row.words
            << std::setw(10) << row.synsets << std::setw(20) << row.pairs << '\n';
    out << std::left << std::setw(12) << "total" << std::right << std::setw(10) << s.words
        << std::setw(10) << s.synsets << std::setw(20) << s.pairs << '\n';
    out << "polysemy rate: " << format_double(s.polysemy_rate, 4) << '\n';
    return out.str();
}

inline nlohmann::ordered_json coverage_to_json(const CoverageReport& c) {
    nlohmann::ordered_json j;
    j["corpus_words_covered"] = c.induced_words_in_vocab;
    j["corpus_vocabulary"] = c.vocab_size;
    j["induced_synsets"] = c.induced_synsets;
    j["wordnet_synsets"] = c.wordnet_synsets;
    j["synset_coverage"] = c.synset_coverage;
    j["core_size"] = c.core_size;
    j["core_coverage"] = c.core_coverage ? nlohmann::ordered_json(*c.core_coverage)
                                         : nlohmann::ordered_json(nullptr);
    return j;
}

inline std::string render_coverage(const CoverageReport& c) {
    std::ostringstream out;
    out << "corpus words covered: " << c.induced_words_in_vocab << " of " << c.vocab_size << '\n';
    out << "synset coverage: " << format_double(c.synset_coverage * 100.0, 2) << "% ("
        << c.induced_synsets << " of " << c.wordnet_synsets << ")\n";
    if (c.core_coverage)
        out << "core coverage: " << format_double(*c.core_coverage * 100.0, 2) << "% of "
            << c.core_size << '\n';
    else
        out << "core coverage: n/a (no core list)\n";
    return out.str();
}

}  // namespace wnlink
