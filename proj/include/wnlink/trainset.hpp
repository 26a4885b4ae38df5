#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/features.hpp"
#include "wnlink/links.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

enum class Label : int { Correct = 0, Incorrect = 1 };

inline const char* label_name(Label l) { return l == Label::Correct ? "correct" : "incorrect"; }

struct Instance {
    LinkKey key;
    FeatureVector features;
    Label label = Label::Incorrect;
};

struct TrainSet {
    std::vector<Instance> instances;

    struct Provenance {
        std::size_t seed_positives = 0;
        std::size_t random_negatives = 0;
        std::size_t excluded_test_overlap = 0;   // keys dropped for overlapping the test set
        std::size_t seed_without_features = 0;   // seed links absent from the candidate set
    } provenance;

    std::size_t count(Label label) const {
        std::size_t n = 0;
        for (const auto& inst : instances) n += inst.label == label ? 1 : 0;
        return n;
    }
};

/// Positives are the seed links found among the featurized candidates;
/// negatives are sampled uniformly without replacement from the remaining
/// candidates. Keys in `test_keys` never enter either side.
inline TrainSet build_train_set(const std::vector<LinkKey>& seed_links,
                                const std::vector<FeatureRow>& featurized,
                                std::size_t negative_count, const std::set<LinkKey>& test_keys,
                                std::uint64_t rng_seed) {
    std::unordered_map<LinkKey, const FeatureRow*, LinkKeyHash> by_key;
    by_key.reserve(featurized.size());
    for (const auto& row : featurized) by_key.emplace(row.key, &row);

    std::set<LinkKey> seed_set(seed_links.begin(), seed_links.end());

    TrainSet ts;
    for (const auto& key : seed_set) {
        if (test_keys.count(key)) {
            ++ts.provenance.excluded_test_overlap;
            continue;
        }
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            ++ts.provenance.seed_without_features;
            continue;
        }
        ts.instances.push_back({key, it->second->features, Label::Correct});
        ++ts.provenance.seed_positives;
    }

    std::vector<const FeatureRow*> pool;
    pool.reserve(featurized.size());
    for (const auto& row : featurized) {
        if (seed_set.count(row.key)) continue;
        if (test_keys.count(row.key)) {
            ++ts.provenance.excluded_test_overlap;
            continue;
        }
        pool.push_back(&row);
    }
    std::sort(pool.begin(), pool.end(),
              [](const FeatureRow* a, const FeatureRow* b) { return a->key < b->key; });

    if (negative_count > pool.size())
        throw Error("requested " + std::to_string(negative_count) +
                    " negatives but only " + std::to_string(pool.size()) +
                    " non-seed candidates are available");

    Rng rng(rng_seed);
    for (std::size_t idx : sample_indices(rng, pool.size(), negative_count)) {
        ts.instances.push_back({pool[idx]->key, pool[idx]->features, Label::Incorrect});
        ++ts.provenance.random_negatives;
    }
    return ts;
}

// TSV: lemma, synset id, seven features, label.
inline void write_train_set(const std::string& path, const TrainSet& ts) {
    auto out = open_output(path);
    for (const auto& inst : ts.instances) {
        out << inst.key.lemma << '\t' << inst.key.synset_id;
        for (double v : inst.features.as_array()) out << '\t' << format_double(v, 6);
        out << '\t' << label_name(inst.label) << '\n';
    }
}

inline TrainSet load_train_set(const std::string& path) {
    auto in = open_input(path);
    TrainSet ts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3 + kFeatureCount)
            throw IoError(path, lineno, "expected lemma, synset id, 7 features and a label");
        Instance inst;
        inst.key = {cols[0], cols[1]};
        std::array<double, 7> fv{};
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            char* end = nullptr;
            fv[i] = std::strtod(cols[i + 2].c_str(), &end);
            if (end == cols[i + 2].c_str() || *end != '\0' || !std::isfinite(fv[i]))
                throw IoError(path, lineno, "bad feature value '" + cols[i + 2] + "'");
        }
        inst.features = FeatureVector::from_array(fv);
        const std::string& label = cols.back();
        if (label == "correct") inst.label = Label::Correct;
        else if (label == "incorrect") inst.label = Label::Incorrect;
        else throw IoError(path, lineno, "label must be 'correct' or 'incorrect'");
        ts.instances.push_back(std::move(inst));
    }
    return ts;
}

}  // namespace wnlink
