#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnlink/corpus.hpp"
#include "wnlink/dictionary.hpp"
#include "wnlink/error.hpp"
#include "wnlink/links.hpp"
#include "wnlink/text.hpp"
#include "wnlink/wordnet.hpp"

namespace wnlink {

/// A (target word, synset) pair proposed through the dictionary. Inducers are
/// the reference-language words that both translate the target word and
/// belong to the synset; there is always at least one.
struct CandidateLink {
    std::string lemma;
    std::string synset_id;
    Pos pos = Pos::Noun;
    std::vector<std::string> inducers;  // sorted, unique

    LinkKey key() const { return {lemma, synset_id}; }
};

inline std::vector<CandidateLink> generate_candidates(const std::vector<std::string>& vocab,
                                                      const BilingualDictionary& dict,
                                                      const WordnetIndex& wn) {
    std::vector<std::string> sorted_vocab = vocab;
    std::sort(sorted_vocab.begin(), sorted_vocab.end());
    sorted_vocab.erase(std::unique(sorted_vocab.begin(), sorted_vocab.end()), sorted_vocab.end());

    std::vector<CandidateLink> links;
    for (const auto& f : sorted_vocab) {
        std::map<std::string, std::set<std::string>> by_synset;  // synset id -> inducers
        for (const auto& e : dict.translations_of(f))
            for (std::size_t idx : wn.synsets_with_lemma(e)) by_synset[wn.at(idx).id].insert(e);
        for (auto& [sid, inducers] : by_synset) {
            CandidateLink link;
            link.lemma = f;
            link.synset_id = sid;
            link.pos = wn.require(sid).pos;
            link.inducers.assign(inducers.begin(), inducers.end());
            links.push_back(std::move(link));
        }
    }
    return links;  // sorted by (lemma, synset_id) by construction
}

/// Drops links whose target word was observed in the corpus but never (or too
/// rarely) with the synset's POS. Words absent from the profile pass through:
/// absence of evidence is not negative evidence.
inline std::vector<CandidateLink> prune_pos(const std::vector<CandidateLink>& links,
                                            const PosProfile& profile, double threshold = 0.0) {
    std::vector<CandidateLink> kept;
    kept.reserve(links.size());
    for (const auto& link : links) {
        auto p = profile.probability(link.lemma, link.pos);
        if (!p || *p > threshold) kept.push_back(link);
    }
    return kept;
}

enum class PolysemyScope { PerPos, All };

inline std::size_t polysemy_degree(const WordnetIndex& wn, const std::string& lemma, Pos pos,
                                   PolysemyScope scope) {
    return scope == PolysemyScope::PerPos ? wn.polysemy(lemma, pos) : wn.polysemy_all(lemma);
}

/// For a synset s, the target words currently linked to it (the cohort) and
/// each one's weight: the summed inverse polysemy of its inducers.
struct SynsetCohort {
    struct Entry {
        std::string lemma;
        double weight = 0;
    };
    std::vector<Entry> members;  // sorted by lemma

    const Entry* find(const std::string& lemma) const {
        for (const auto& e : members)
            if (e.lemma == lemma) return &e;
        return nullptr;
    }
};

using CohortMap = std::unordered_map<std::string, SynsetCohort>;

inline CohortMap build_feature_context(const std::vector<CandidateLink>& links,
                                       const WordnetIndex& wn,
                                       PolysemyScope scope = PolysemyScope::PerPos) {
    std::map<std::string, std::vector<SynsetCohort::Entry>> grouped;
    for (const auto& link : links) {
        double weight = 0;
        for (const auto& e : link.inducers) {
            std::size_t deg = polysemy_degree(wn, e, link.pos, scope);
            if (deg == 0) throw Error("inducer " + e + " not found in wordnet for " + link.synset_id);
            weight += 1.0 / static_cast<double>(deg);
        }
        grouped[link.synset_id].push_back({link.lemma, weight});
    }
    CohortMap cohorts;
    for (auto& [sid, entries] : grouped) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.lemma < b.lemma; });
        cohorts.emplace(sid, SynsetCohort{std::move(entries)});
    }
    return cohorts;
}

// TSV: lemma<TAB>synset_id<TAB>inducer1,inducer2,... sorted by (lemma, synset).
inline void write_candidates_tsv(const std::string& path, const std::vector<CandidateLink>& links) {
    std::vector<const CandidateLink*> sorted;
    sorted.reserve(links.size());
    for (const auto& l : links) sorted.push_back(&l);
    std::sort(sorted.begin(), sorted.end(), [](const CandidateLink* a, const CandidateLink* b) {
        return std::tie(a->lemma, a->synset_id) < std::tie(b->lemma, b->synset_id);
    });
    auto out = open_output(path);
    for (const auto* l : sorted) {
        out << l->lemma << '\t' << l->synset_id << '\t';
        for (std::size_t i = 0; i < l->inducers.size(); ++i) {
            if (i) out << ',';
            out << l->inducers[i];
        }
        out << '\n';
    }
}

inline std::vector<CandidateLink> load_candidates(const std::string& path, const WordnetIndex& wn) {
    auto in = open_input(path);
    std::vector<CandidateLink> links;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty())
            throw IoError(path, lineno, "expected lemma<TAB>synset_id<TAB>inducers");
        const Synset* s = wn.find(cols[1]);
        if (!s) throw IoError(path, lineno, "unknown synset id " + cols[1]);
        CandidateLink link;
        link.lemma = cols[0];
        link.synset_id = cols[1];
        link.pos = s->pos;
        link.inducers = split(cols[2], ',');
        std::sort(link.inducers.begin(), link.inducers.end());
        link.inducers.erase(std::unique(link.inducers.begin(), link.inducers.end()),
                            link.inducers.end());
        links.push_back(std::move(link));
    }
    return links;
}

}  // namespace wnlink
