#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "wnlink/error.hpp"
#include "wnlink/pos.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

struct Synset {
    std::string id;
    Pos pos = Pos::Noun;
    std::vector<std::string> members;  // nonempty, insertion order, no duplicates
    std::string gloss;
};

/// Reference wordnet: synsets plus the lemma-to-synset inverted index and
/// per-POS polysemy counts derived from it.
class WordnetIndex {
public:
    void add(Synset synset) {
        if (synset.members.empty()) throw Error("synset " + synset.id + " has no members");
        if (by_id_.count(synset.id)) throw Error("duplicate synset id " + synset.id);
        if (auto suffix = pos_from_synset_id(synset.id);
            suffix && *suffix != synset.pos) {
            throw Error("synset " + synset.id + " id suffix does not match pos '" +
                        std::string(1, pos_letter(synset.pos)) + "'");
        }
        // drop duplicate members, keep first occurrence
        std::vector<std::string> members;
        for (auto& m : synset.members) {
            bool seen = false;
            for (auto& prev : members)
                if (prev == m) { seen = true; break; }
            if (!seen) members.push_back(m);
        }
        synset.members = std::move(members);

        std::size_t idx = synsets_.size();
        by_id_.emplace(synset.id, idx);
        for (const auto& m : synset.members) by_lemma_[m].push_back(idx);
        synsets_.push_back(std::move(synset));
    }

    std::size_t size() const { return synsets_.size(); }
    const std::vector<Synset>& synsets() const { return synsets_; }

    const Synset* find(const std::string& id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &synsets_[it->second];
    }

    const Synset& require(const std::string& id) const {
        const Synset* s = find(id);
        if (!s) throw Error("unknown synset id " + id);
        return *s;
    }

    // Indices (insertion order) of synsets containing the lemma.
    const std::vector<std::size_t>& synsets_with_lemma(const std::string& lemma) const {
        static const std::vector<std::size_t> kEmpty;
        auto it = by_lemma_.find(lemma);
        return it == by_lemma_.end() ? kEmpty : it->second;
    }

    const Synset& at(std::size_t idx) const { return synsets_[idx]; }

    std::size_t polysemy(const std::string& lemma, Pos pos) const {
        std::size_t n = 0;
        for (std::size_t idx : synsets_with_lemma(lemma))
            if (synsets_[idx].pos == pos) ++n;
        return n;
    }

    std::size_t polysemy_all(const std::string& lemma) const {
        return synsets_with_lemma(lemma).size();
    }

    const std::unordered_map<std::string, std::vector<std::size_t>>& lemma_index() const {
        return by_lemma_;
    }

private:
    std::vector<Synset> synsets_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
};

// One JSON object per line: {"id":..., "pos":"n|v|a|r", "members":[...], "gloss":...}
inline WordnetIndex load_wordnet(const std::string& path) {
    auto in = open_input(path);
    WordnetIndex index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("pos") ||
            !obj.contains("members")) {
            throw IoError(path, lineno, "synset object needs id, pos and members fields");
        }
        Synset s;
        try {
            s.id = obj.at("id").get<std::string>();
            std::string pos = obj.at("pos").get<std::string>();
            auto p = pos.size() == 1 ? pos_from_letter(pos[0]) : std::nullopt;
            if (!p) throw IoError(path, lineno, "pos must be one of n, v, a, r");
            s.pos = *p;
            s.members = obj.at("members").get<std::vector<std::string>>();
            s.gloss = obj.value("gloss", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path, lineno, std::string("bad synset field: ") + e.what());
        }
        if (s.id.empty()) throw IoError(path, lineno, "empty synset id");
        if (s.members.empty()) throw IoError(path, lineno, "synset " + s.id + " has no members");
        try {
            index.add(std::move(s));
        } catch (const Error& e) {
            throw IoError(path, lineno, e.what());
        }
    }
    return index;
}

inline void write_wordnet_jsonl(const std::string& path, const std::vector<Synset>& synsets) {
    auto out = open_output(path);
    for (const auto& s : synsets) {
        nlohmann::ordered_json obj;
        obj["id"] = s.id;
        obj["pos"] = std::string(1, pos_letter(s.pos));
        obj["members"] = s.members;
        obj["gloss"] = s.gloss;
        out << obj.dump() << '\n';
    }
}

}  // namespace wnlink
