#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

/// Bilingual dictionary between the induction-target language and the
/// reference-wordnet language. Column 1 of the TSV is the target-language
/// lemma, column 2 its reference-language translation. The reverse map is
/// kept as an exact transpose.
class BilingualDictionary {
public:
    // Returns false if the pair was already present.
    bool add_pair(const std::string& target, const std::string& reference) {
        auto& fwd = forward_[target];
        if (std::find(fwd.begin(), fwd.end(), reference) != fwd.end()) return false;
        fwd.push_back(reference);
        inverse_[reference].push_back(target);
        ++pairs_;
        return true;
    }

    // Reference-language translations of a target-language lemma, in file order.
    const std::vector<std::string>& translations_of(const std::string& target) const {
        return lookup(forward_, target);
    }

    // Target-language lemmas translating to a reference-language lemma.
    const std::vector<std::string>& reverse_translations_of(const std::string& reference) const {
        return lookup(inverse_, reference);
    }

    std::size_t pair_count() const { return pairs_; }
    std::size_t target_lemma_count() const { return forward_.size(); }

    const std::unordered_map<std::string, std::vector<std::string>>& forward_map() const {
        return forward_;
    }
    const std::unordered_map<std::string, std::vector<std::string>>& inverse_map() const {
        return inverse_;
    }

private:
    static const std::vector<std::string>& lookup(
        const std::unordered_map<std::string, std::vector<std::string>>& map,
        const std::string& key) {
        static const std::vector<std::string> kEmpty;
        auto it = map.find(key);
        return it == map.end() ? kEmpty : it->second;
    }

    std::unordered_map<std::string, std::vector<std::string>> forward_;
    std::unordered_map<std::string, std::vector<std::string>> inverse_;
    std::size_t pairs_ = 0;
};

// TSV: target_lemma<TAB>reference_lemma, one pair per line. Duplicates collapse.
inline BilingualDictionary load_dictionary(const std::string& path) {
    auto in = open_input(path);
    BilingualDictionary dict;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
            throw IoError(path, lineno, "expected two tab-separated columns");
        dict.add_pair(cols[0], cols[1]);
    }
    return dict;
}

inline void write_dictionary(const std::string& path,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
    auto out = open_output(path);
    for (const auto& [a, b] : pairs) out << a << '\t' << b << '\n';
}

}  // namespace wnlink
