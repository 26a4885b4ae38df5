#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/text.hpp"
#include "wnlink/wordnet.hpp"

namespace wnlink {

struct LinkKey {
    std::string lemma;
    std::string synset_id;

    auto operator<=>(const LinkKey&) const = default;
};

struct LinkKeyHash {
    std::size_t operator()(const LinkKey& k) const {
        std::size_t h = std::hash<std::string>{}(k.lemma);
        return h ^ (std::hash<std::string>{}(k.synset_id) + 0x9e3779b97f4a7c15ULL + (h << 6));
    }
};

struct SeedLinks {
    std::vector<LinkKey> links;        // sorted, unique
    std::size_t dropped_unknown = 0;   // rows whose synset id is not in the wordnet
};

// TSV: lemma<TAB>synset_id. Rows naming unknown synsets are dropped and counted.
inline SeedLinks load_seed_links(const std::string& path, const WordnetIndex& wn) {
    auto in = open_input(path);
    SeedLinks seed;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
            throw IoError(path, lineno, "expected lemma<TAB>synset_id");
        if (!wn.find(cols[1])) {
            ++seed.dropped_unknown;
            continue;
        }
        seed.links.push_back({cols[0], cols[1]});
    }
    std::sort(seed.links.begin(), seed.links.end());
    seed.links.erase(std::unique(seed.links.begin(), seed.links.end()), seed.links.end());
    return seed;
}

struct TestEntry {
    LinkKey key;
    bool correct = false;
};

struct TestSet {
    std::vector<TestEntry> entries;  // sorted by key, keys unique

    std::size_t correct_count() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.correct ? 1 : 0;
        return n;
    }
};

// TSV: lemma<TAB>synset_id<TAB>label with label in {correct, incorrect}.
inline TestSet load_test_set(const std::string& path) {
    auto in = open_input(path);
    TestSet test;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3 || cols[0].empty() || cols[1].empty())
            throw IoError(path, lineno, "expected lemma<TAB>synset_id<TAB>label");
        bool correct;
        if (cols[2] == "correct") correct = true;
        else if (cols[2] == "incorrect") correct = false;
        else throw IoError(path, lineno, "label must be 'correct' or 'incorrect'");
        test.entries.push_back({{cols[0], cols[1]}, correct});
    }
    std::sort(test.entries.begin(), test.entries.end(),
              [](const TestEntry& a, const TestEntry& b) { return a.key < b.key; });
    for (std::size_t i = 1; i < test.entries.size(); ++i)
        if (test.entries[i].key == test.entries[i - 1].key)
            throw IoError(path, "duplicate test key " + test.entries[i].key.lemma + "/" +
                                    test.entries[i].key.synset_id);
    return test;
}

inline void write_link_tsv(const std::string& path, const std::vector<LinkKey>& links) {
    auto out = open_output(path);
    for (const auto& k : links) out << k.lemma << '\t' << k.synset_id << '\n';
}

inline void write_test_tsv(const std::string& path, const std::vector<TestEntry>& entries) {
    auto out = open_output(path);
    for (const auto& e : entries)
        out << e.key.lemma << '\t' << e.key.synset_id << '\t'
            << (e.correct ? "correct" : "incorrect") << '\n';
}

}  // namespace wnlink
