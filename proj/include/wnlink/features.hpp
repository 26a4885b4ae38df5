#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "wnlink/candidates.hpp"
#include "wnlink/context.hpp"
#include "wnlink/dictionary.hpp"
#include "wnlink/domain.hpp"
#include "wnlink/embedding.hpp"
#include "wnlink/error.hpp"
#include "wnlink/text.hpp"
#include "wnlink/wordnet.hpp"

namespace wnlink {

struct FeatureVector {
    double relatedness = 0;         // R
    double synset_strength = 0;     // SS
    double context_overlap = 0;     // CO
    double domain_similarity = 0;   // DS
    double monosemous_english = 0;  // ME
    double synset_commonality = 0;  // SC
    double importance = 0;          // IM

    std::array<double, 7> as_array() const {
        return {relatedness,        synset_strength,    context_overlap, domain_similarity,
                monosemous_english, synset_commonality, importance};
    }

    static FeatureVector from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
};

inline constexpr std::array<const char*, 7> kFeatureNames = {
    "relatedness",        "synset_strength",    "context_overlap", "domain_similarity",
    "monosemous_english", "synset_commonality", "importance"};

inline constexpr int kFeatureCount = 7;

inline std::vector<int> all_feature_indices() {
    std::vector<int> idx(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) idx[static_cast<std::size_t>(i)] = i;
    return idx;
}

struct FeatureInputs {
    const WordnetIndex& wordnet;
    const BilingualDictionary& dictionary;
    const ContextVectorMap& target_cvs;
    const ContextVectorMap& source_cvs;
    const EmbeddingTable& embeddings;
    const DomainModel& domains;
    PolysemyScope scope = PolysemyScope::PerPos;
    bool strict_importance_ties = false;
    int workers = 1;
};

namespace detail {

inline const std::vector<std::string>& cv_or_empty(const ContextVectorMap& cvs,
                                                   const std::string& lemma) {
    static const std::vector<std::string> kEmpty;
    auto it = cvs.find(lemma);
    return it == cvs.end() ? kEmpty : it->second.neighbors;
}

}  // namespace detail

/// Mean Jaccard overlap between a reference word's context vector and those
/// of the synset's members. Words without a context vector count as empty.
inline double synset_relatedness(const std::string& word, const Synset& synset,
                                 const ContextVectorMap& source_cvs) {
    const auto& cv = detail::cv_or_empty(source_cvs, word);
    double sum = 0;
    for (const auto& member : synset.members)
        sum += jaccard(cv, detail::cv_or_empty(source_cvs, member));
    return sum / static_cast<double>(synset.members.size());
}

// Lowercased alphabetic runs of length >= 2, deduplicated and sorted.
inline std::vector<std::string> gloss_tokens(const std::string& gloss) {
    std::set<std::string> tokens;
    std::string current;
    for (char ch : gloss) {
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        } else if (!current.empty()) {
            if (current.size() >= 2) tokens.insert(current);
            current.clear();
        }
    }
    if (current.size() >= 2) tokens.insert(current);
    return {tokens.begin(), tokens.end()};
}

// GT(s): target-language translations of the synset's gloss tokens.
inline std::vector<std::string> gloss_translations(const Synset& synset,
                                                   const BilingualDictionary& dict) {
    std::set<std::string> out;
    for (const auto& tok : gloss_tokens(synset.gloss))
        for (const auto& t : dict.reverse_translations_of(tok)) out.insert(t);
    return {out.begin(), out.end()};
}

namespace detail {

// Synsets sharing at least one member with `synset`, ordered by id. This is
// the denominator set of the relative-relatedness ratio.
inline std::vector<const Synset*> member_closure(const Synset& synset, const WordnetIndex& wn) {
    std::set<std::string> ids;
    std::vector<const Synset*> out;
    for (const auto& m : synset.members) {
        for (std::size_t idx : wn.synsets_with_lemma(m)) {
            const Synset& s = wn.at(idx);
            if (ids.insert(s.id).second) out.push_back(&s);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Synset* a, const Synset* b) { return a->id < b->id; });
    return out;
}

// Shared immutable per-synset precomputation plus a per-worker relatedness memo.
struct FeatureCaches {
    std::unordered_map<std::string, std::vector<const Synset*>> closures;
    std::unordered_map<std::string, std::vector<std::string>> gloss_translations;

    static FeatureCaches build(const std::vector<CandidateLink>& links, const WordnetIndex& wn,
                               const BilingualDictionary& dict) {
        FeatureCaches caches;
        for (const auto& link : links) {
            if (caches.closures.count(link.synset_id)) continue;
            const Synset& s = wn.require(link.synset_id);
            caches.closures.emplace(link.synset_id, member_closure(s, wn));
            caches.gloss_translations.emplace(link.synset_id, wnlink::gloss_translations(s, dict));
        }
        return caches;
    }
};

class RelatednessScorer {
public:
    RelatednessScorer(const ContextVectorMap& source_cvs) : cvs_(source_cvs) {}

    double score(const std::string& word, const Synset& synset) {
        std::string key = word;
        key.push_back('\t');
        key += synset.id;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double value = synset_relatedness(word, synset, cvs_);
        memo_.emplace(std::move(key), value);
        return value;
    }

private:
    const ContextVectorMap& cvs_;
    std::unordered_map<std::string, double> memo_;
};

inline std::vector<std::string> context_vector_translations(const CandidateLink& link,
                                                            const FeatureInputs& in) {
    const auto& cv = cv_or_empty(in.target_cvs, link.lemma);
    if (cv.empty()) return link.inducers;  // the inducing translations stand in for CVT
    std::set<std::string> cvt;
    for (const auto& t : cv)
        for (const auto& e : in.dictionary.translations_of(t)) cvt.insert(e);
    return {cvt.begin(), cvt.end()};
}

inline double relatedness_measure_impl(const CandidateLink& link, const FeatureInputs& in,
                                       const std::vector<const Synset*>& closure,
                                       RelatednessScorer& scorer) {
    const Synset& synset = in.wordnet.require(link.synset_id);
    std::vector<std::string> cvt = context_vector_translations(link, in);
    if (cvt.empty()) return 0.0;
    double sum = 0;
    for (const auto& e : cvt) {
        const double num = scorer.score(e, synset);
        double denom = 0;
        for (const Synset* other : closure) denom += scorer.score(e, *other);
        if (denom > 0) sum += num / denom;
    }
    return sum / static_cast<double>(cvt.size());
}

}  // namespace detail

/// Relative relatedness of the translated context vector against the synset,
/// averaged over the translations (the R feature).
inline double relatedness_measure(const CandidateLink& link, const FeatureInputs& in) {
    detail::RelatednessScorer scorer(in.source_cvs);
    auto closure = detail::member_closure(in.wordnet.require(link.synset_id), in.wordnet);
    return detail::relatedness_measure_impl(link, in, closure, scorer);
}

/// Weighted mean embedding similarity between the target word and the rest of
/// the synset's cohort (the SS feature). Singleton cohorts score 1. The
/// weighted mean can leave [-1, 1] when a cohort member has several
/// low-polysemy inducers, so the value is clamped to the feature's range.
inline double synset_strength(const CandidateLink& link, const SynsetCohort& cohort,
                              const EmbeddingTable& embeddings) {
    const std::size_t k = cohort.members.size();
    if (k <= 1) return 1.0;
    const std::vector<float>* self = embeddings.find(link.lemma);
    double sum = 0;
    for (const auto& entry : cohort.members) {
        if (entry.lemma == link.lemma) continue;
        const std::vector<float>* other = embeddings.find(entry.lemma);
        double sim = (self && other) ? cosine(*self, *other) : 0.0;
        sum += entry.weight * sim;
    }
    double ss = sum / static_cast<double>(k - 1);
    return std::clamp(ss, -1.0, 1.0);
}

/// Jaccard overlap between the target word's context vector and the
/// translated gloss of the synset (the CO feature).
inline double context_overlap(const CandidateLink& link, const FeatureInputs& in) {
    auto gt = gloss_translations(in.wordnet.require(link.synset_id), in.dictionary);
    return jaccard(gt, detail::cv_or_empty(in.target_cvs, link.lemma));
}

/// Weighted mean domain-distribution similarity against the rest of the
/// cohort (the DS feature). Singleton cohorts score 1; a target word without
/// a domain distribution scores 0. Clamped like synset_strength.
inline double domain_similarity(const CandidateLink& link, const SynsetCohort& cohort,
                                const DomainModel& domains) {
    const std::size_t k = cohort.members.size();
    if (k <= 1) return 1.0;
    const std::vector<double>* self = domains.find(link.lemma);
    if (!self) return 0.0;
    double sum = 0;
    for (const auto& entry : cohort.members) {
        if (entry.lemma == link.lemma) continue;
        const std::vector<double>* other = domains.find(entry.lemma);
        if (!other) continue;
        sum += entry.weight * distribution_similarity(*self, *other);
    }
    double ds = sum / static_cast<double>(k - 1);
    return std::clamp(ds, 0.0, 1.0);
}

// 1 if some inducer belongs to exactly one synset, else 0 (the ME feature).
inline double monosemous_english(const CandidateLink& link, const WordnetIndex& wn,
                                 PolysemyScope scope = PolysemyScope::PerPos) {
    for (const auto& e : link.inducers)
        if (polysemy_degree(wn, e, link.pos, scope) == 1) return 1.0;
    return 0.0;
}

// Number of translations inducing the link (the SC feature).
inline double synset_commonality(const CandidateLink& link) {
    return static_cast<double>(link.inducers.size());
}

/// Importance: for each inducer e of (f, s), count among the four continuous
/// features how often s attains the maximum over all of f's links induced by
/// e; the link keeps the best inducer's count. Ties count as maximal unless
/// strict_ties is set.
inline std::vector<int> importance_values(const std::vector<CandidateLink>& links,
                                          const std::vector<std::array<double, 4>>& base,
                                          bool strict_ties = false) {
    if (base.size() != links.size())
        throw Error("importance_values: feature rows do not match links");

    // group link indices by lemma, then by inducer within the lemma
    std::map<std::string, std::vector<std::size_t>> by_lemma;
    for (std::size_t i = 0; i < links.size(); ++i) by_lemma[links[i].lemma].push_back(i);

    std::vector<int> importance(links.size(), 0);
    for (const auto& [lemma, indices] : by_lemma) {
        std::map<std::string, std::vector<std::size_t>> by_inducer;
        for (std::size_t i : indices)
            for (const auto& e : links[i].inducers) by_inducer[e].push_back(i);
        for (std::size_t i : indices) {
            int best = 0;
            for (const auto& e : links[i].inducers) {
                const auto& competitors = by_inducer.at(e);
                int count = 0;
                for (int feat = 0; feat < 4; ++feat) {
                    double maxval = base[competitors[0]][feat];
                    int attained = 1;
                    for (std::size_t c = 1; c < competitors.size(); ++c) {
                        double v = base[competitors[c]][feat];
                        if (v > maxval) {
                            maxval = v;
                            attained = 1;
                        } else if (v == maxval) {
                            ++attained;
                        }
                    }
                    if (base[i][feat] == maxval && (!strict_ties || attained == 1)) ++count;
                }
                best = std::max(best, count);
            }
            importance[i] = best;
        }
    }
    return importance;
}

struct FeaturizedLink {
    CandidateLink link;
    FeatureVector features;
};

/// Computes all seven features for every link. Output is sorted by
/// (lemma, synset id) and identical for any worker count.
inline std::vector<FeaturizedLink> featurize(const std::vector<CandidateLink>& links,
                                             const FeatureInputs& in) {
    std::vector<CandidateLink> sorted = links;
    std::sort(sorted.begin(), sorted.end(), [](const CandidateLink& a, const CandidateLink& b) {
        return std::tie(a.lemma, a.synset_id) < std::tie(b.lemma, b.synset_id);
    });

    const CohortMap cohorts = build_feature_context(sorted, in.wordnet, in.scope);
    const detail::FeatureCaches caches = detail::FeatureCaches::build(sorted, in.wordnet, in.dictionary);

    std::vector<std::array<double, 4>> base(sorted.size());
    auto compute_range = [&](std::size_t shard, std::size_t n_shards) {
        detail::RelatednessScorer scorer(in.source_cvs);
        for (std::size_t i = shard; i < sorted.size(); i += n_shards) {
            const CandidateLink& link = sorted[i];
            const SynsetCohort& cohort = cohorts.at(link.synset_id);
            const auto& closure = caches.closures.at(link.synset_id);
            const auto& gt = caches.gloss_translations.at(link.synset_id);
            base[i][0] = detail::relatedness_measure_impl(link, in, closure, scorer);
            base[i][1] = synset_strength(link, cohort, in.embeddings);
            base[i][2] = jaccard(gt, detail::cv_or_empty(in.target_cvs, link.lemma));
            base[i][3] = domain_similarity(link, cohort, in.domains);
        }
    };

    const std::size_t n_shards = in.workers > 1 ? static_cast<std::size_t>(in.workers) : 1;
    if (n_shards == 1) {
        compute_range(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < n_shards; ++w) threads.emplace_back(compute_range, w, n_shards);
        for (auto& t : threads) t.join();
    }

    std::vector<int> importance = importance_values(sorted, base, in.strict_importance_ties);

    std::vector<FeaturizedLink> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        FeatureVector fv;
        fv.relatedness = base[i][0];
        fv.synset_strength = base[i][1];
        fv.context_overlap = base[i][2];
        fv.domain_similarity = base[i][3];
        fv.monosemous_english = monosemous_english(sorted[i], in.wordnet, in.scope);
        fv.synset_commonality = synset_commonality(sorted[i]);
        fv.importance = static_cast<double>(importance[i]);
        out.push_back({std::move(sorted[i]), fv});
    }
    return out;
}

struct FeatureRow {
    LinkKey key;
    FeatureVector features;
};

// TSV: lemma, synset id, then the seven feature columns as %.6f.
inline void write_features_tsv(const std::string& path, const std::vector<FeaturizedLink>& rows) {
    auto out = open_output(path);
    for (const auto& row : rows) {
        out << row.link.lemma << '\t' << row.link.synset_id;
        for (double v : row.features.as_array()) out << '\t' << format_double(v, 6);
        out << '\n';
    }
}

inline std::vector<FeatureRow> load_features(const std::string& path) {
    auto in = open_input(path);
    std::vector<FeatureRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2 + kFeatureCount)
            throw IoError(path, lineno, "expected lemma, synset id and 7 feature columns");
        FeatureRow row;
        row.key = {cols[0], cols[1]};
        std::array<double, 7> fv{};
        for (int i = 0; i < kFeatureCount; ++i) {
            char* end = nullptr;
            fv[static_cast<std::size_t>(i)] = std::strtod(cols[static_cast<std::size_t>(i) + 2].c_str(), &end);
            if (end == cols[static_cast<std::size_t>(i) + 2].c_str() || *end != '\0' ||
                !std::isfinite(fv[static_cast<std::size_t>(i)]))
                throw IoError(path, lineno, "bad feature value '" + cols[static_cast<std::size_t>(i) + 2] + "'");
        }
        row.features = FeatureVector::from_array(fv);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace wnlink
