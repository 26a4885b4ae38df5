#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnlink/corpus.hpp"
#include "wnlink/error.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

/// Sentence-level co-occurrence counts. Every unordered pair of token
/// positions within a sentence counts once; pairs of equal lemmas are skipped.
class CooccurrenceCounts {
public:
    void add_sentence(const Sentence& sentence) {
        for (const auto& t : sentence) ++freq_[t.lemma];
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            for (std::size_t j = i + 1; j < sentence.size(); ++j) {
                const std::string& a = sentence[i].lemma;
                const std::string& b = sentence[j].lemma;
                if (a == b) continue;
                ++pair_[a][b];
                ++pair_[b][a];
            }
        }
    }

    std::int64_t count(const std::string& a, const std::string& b) const {
        auto it = pair_.find(a);
        if (it == pair_.end()) return 0;
        auto jt = it->second.find(b);
        return jt == it->second.end() ? 0 : jt->second;
    }

    std::int64_t frequency(const std::string& lemma) const {
        auto it = freq_.find(lemma);
        return it == freq_.end() ? 0 : it->second;
    }

    const std::unordered_map<std::string, std::int64_t>& frequencies() const { return freq_; }

    const std::unordered_map<std::string, std::int64_t>* neighbors(const std::string& lemma) const {
        auto it = pair_.find(lemma);
        return it == pair_.end() ? nullptr : &it->second;
    }

private:
    std::unordered_map<std::string, std::unordered_map<std::string, std::int64_t>> pair_;
    std::unordered_map<std::string, std::int64_t> freq_;
};

inline CooccurrenceCounts build_cooccurrence(const TaggedCorpus& corpus) {
    CooccurrenceCounts counts;
    for (const auto& d : corpus.documents)
        for (const auto& s : d.sentences) counts.add_sentence(s);
    return counts;
}

struct ContextVector {
    std::vector<std::string> neighbors;  // lexicographically sorted
};

using ContextVectorMap = std::unordered_map<std::string, ContextVector>;

/// Top-K co-occurring lemmas per word; ties at the cutoff break
/// lexicographically so the result is independent of iteration order.
inline ContextVectorMap build_context_vectors(const TaggedCorpus& corpus, std::size_t k = 100,
                                              std::int64_t min_count = 1) {
    CooccurrenceCounts counts = build_cooccurrence(corpus);
    ContextVectorMap cvs;
    for (const auto& [lemma, freq] : counts.frequencies()) {
        if (freq < min_count) continue;
        ContextVector cv;
        if (const auto* nbrs = counts.neighbors(lemma)) {
            std::vector<std::pair<std::string, std::int64_t>> ranked(nbrs->begin(), nbrs->end());
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            if (ranked.size() > k) ranked.resize(k);
            cv.neighbors.reserve(ranked.size());
            for (auto& [w, n] : ranked) cv.neighbors.push_back(std::move(w));
            std::sort(cv.neighbors.begin(), cv.neighbors.end());
        }
        cvs.emplace(lemma, std::move(cv));
    }
    return cvs;
}

// Jaccard overlap of two lexicographically sorted, duplicate-free vectors.
// Both empty gives 0.
inline double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = a[i].compare(b[j]);
        if (c == 0) {
            ++inter;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// TSV: lemma<TAB>comma-joined sorted neighbors, rows sorted by lemma.
inline void write_context_vectors(const std::string& path, const ContextVectorMap& cvs) {
    std::vector<std::string> lemmas;
    lemmas.reserve(cvs.size());
    for (const auto& [lemma, cv] : cvs) lemmas.push_back(lemma);
    std::sort(lemmas.begin(), lemmas.end());
    auto out = open_output(path);
    for (const auto& lemma : lemmas) {
        out << lemma << '\t';
        const auto& nbrs = cvs.at(lemma).neighbors;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (i) out << ',';
            out << nbrs[i];
        }
        out << '\n';
    }
}

inline ContextVectorMap load_context_vectors(const std::string& path) {
    auto in = open_input(path);
    ContextVectorMap cvs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2 || cols[0].empty())
            throw IoError(path, lineno, "expected lemma<TAB>neighbors");
        ContextVector cv;
        if (!cols[1].empty()) {
            cv.neighbors = split(cols[1], ',');
            std::sort(cv.neighbors.begin(), cv.neighbors.end());
        }
        if (!cvs.emplace(cols[0], std::move(cv)).second)
            throw IoError(path, lineno, "duplicate lemma " + cols[0]);
    }
    return cvs;
}

}  // namespace wnlink
