#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/features.hpp"
#include "wnlink/links.hpp"
#include "wnlink/nb.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

struct InducedLink {
    LinkKey key;
    double posterior = 0;
};

/// The induced wordnet: candidate links the model classifies as correct,
/// minus the seed links that were already known. Sorted by key.
inline std::vector<InducedLink> induce_wordnet(const GaussianNBModel& model,
                                               const std::vector<FeatureRow>& featurized,
                                               const std::vector<LinkKey>& seed_links) {
    std::set<LinkKey> seed(seed_links.begin(), seed_links.end());
    std::vector<InducedLink> induced;
    for (const auto& row : featurized) {
        const NBPrediction pred = predict_nb(model, row.features);
        if (pred.label != Label::Correct) continue;
        if (seed.count(row.key)) continue;
        induced.push_back({row.key, pred.posterior_correct});
    }
    std::sort(induced.begin(), induced.end(),
              [](const InducedLink& a, const InducedLink& b) { return a.key < b.key; });
    return induced;
}

// TSV: lemma<TAB>synset_id<TAB>posterior (%.4f), sorted by key.
inline void write_induced(const std::string& path, const std::vector<InducedLink>& induced) {
    auto out = open_output(path);
    for (const auto& link : induced)
        out << link.key.lemma << '\t' << link.key.synset_id << '\t'
            << format_double(link.posterior, 4) << '\n';
}

inline std::vector<InducedLink> load_induced(const std::string& path) {
    auto in = open_input(path);
    std::vector<InducedLink> induced;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3 || cols[0].empty() || cols[1].empty())
            throw IoError(path, lineno, "expected lemma<TAB>synset_id<TAB>posterior");
        char* end = nullptr;
        double posterior = std::strtod(cols[2].c_str(), &end);
        if (end == cols[2].c_str() || *end != '\0')
            throw IoError(path, lineno, "bad posterior '" + cols[2] + "'");
        induced.push_back({{cols[0], cols[1]}, posterior});
    }
    return induced;
}

}  // namespace wnlink
