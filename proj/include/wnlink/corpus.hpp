#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/pos.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

struct Token {
    std::string surface;
    std::string lemma;
    std::string tag;
    std::optional<Pos> pos;  // tag mapped into the four categories, if possible
};

using Sentence = std::vector<Token>;

struct Document {
    std::optional<std::string> category;
    std::vector<Sentence> sentences;
};

class TaggedCorpus {
public:
    std::vector<Document> documents;

    // Sorted unique category labels over labeled documents.
    std::vector<std::string> categories() const {
        std::set<std::string> cats;
        for (const auto& d : documents)
            if (d.category) cats.insert(*d.category);
        return {cats.begin(), cats.end()};
    }

    std::unordered_map<std::string, std::int64_t> lemma_frequencies() const {
        std::unordered_map<std::string, std::int64_t> freq;
        for (const auto& d : documents)
            for (const auto& s : d.sentences)
                for (const auto& t : s) ++freq[t.lemma];
        return freq;
    }

    // Lemmas with total frequency >= min_freq, sorted.
    std::vector<std::string> vocabulary(std::int64_t min_freq = 1) const {
        std::vector<std::string> vocab;
        for (const auto& [lemma, n] : lemma_frequencies())
            if (n >= min_freq) vocab.push_back(lemma);
        std::sort(vocab.begin(), vocab.end());
        return vocab;
    }

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& d : documents)
            for (const auto& s : d.sentences) n += s.size();
        return n;
    }
};

// Vertical format: one token per line "surface<TAB>lemma<TAB>tag"; a line with
// two columns means the lemma column is absent and the surface doubles as the
// lemma. Blank line ends a sentence, "#DOC" (optionally with
// "<TAB>category=<label>") starts a document.
inline TaggedCorpus load_corpus(const std::string& path) {
    auto in = open_input(path);
    TaggedCorpus corpus;
    Document doc;
    Sentence sentence;
    bool have_doc = false;

    auto flush_sentence = [&]() {
        if (!sentence.empty()) {
            doc.sentences.push_back(std::move(sentence));
            sentence.clear();
        }
    };
    auto flush_doc = [&]() {
        flush_sentence();
        if (have_doc) corpus.documents.push_back(std::move(doc));
        doc = Document{};
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.rfind("#DOC", 0) == 0) {
            flush_doc();
            have_doc = true;
            auto cols = split(line, '\t');
            if (cols.size() > 2) throw IoError(path, lineno, "malformed #DOC line");
            if (cols.size() == 2 && !cols[1].empty()) {
                if (cols[1].rfind("category=", 0) != 0)
                    throw IoError(path, lineno, "expected category=<label> after #DOC");
                std::string label = cols[1].substr(9);
                if (!label.empty()) doc.category = label;
            }
            continue;
        }
        if (line.empty()) {
            flush_sentence();
            continue;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 2 && cols.size() != 3)
            throw IoError(path, lineno, "expected 2 or 3 tab-separated columns");
        Token tok;
        tok.surface = cols[0];
        tok.lemma = cols.size() == 3 ? cols[1] : cols[0];
        tok.tag = cols.back();
        if (tok.surface.empty() || tok.lemma.empty())
            throw IoError(path, lineno, "empty surface or lemma");
        tok.pos = pos_from_tag(tok.tag);
        sentence.push_back(std::move(tok));
        have_doc = true;  // token before any #DOC opens an implicit document
    }
    flush_doc();
    return corpus;
}

/// Per-lemma distribution over the four POS categories, estimated from tag
/// counts. Lemmas never seen with one of the four tags are absent.
class PosProfile {
public:
    void add_observation(const std::string& lemma, Pos pos) {
        ++counts_[lemma][pos_index(pos)];
        if (done_) {
            probs_.clear();
            done_ = false;
        }
    }

    const std::array<double, kPosCount>* lookup(const std::string& lemma) const {
        finalize();
        auto it = probs_.find(lemma);
        return it == probs_.end() ? nullptr : &it->second;
    }

    // 0 for an observed lemma never tagged with `pos`; nullopt if absent entirely.
    std::optional<double> probability(const std::string& lemma, Pos pos) const {
        const auto* row = lookup(lemma);
        if (!row) return std::nullopt;
        return (*row)[pos_index(pos)];
    }

    std::size_t size() const {
        finalize();
        return probs_.size();
    }

private:
    void finalize() const {
        if (done_) return;
        for (const auto& [lemma, row] : counts_) {
            double total = 0;
            for (auto c : row) total += static_cast<double>(c);
            std::array<double, kPosCount> p{};
            for (int i = 0; i < kPosCount; ++i) p[i] = static_cast<double>(row[i]) / total;
            probs_.emplace(lemma, p);
        }
        done_ = true;
    }

    std::unordered_map<std::string, std::array<std::int64_t, kPosCount>> counts_;
    mutable std::unordered_map<std::string, std::array<double, kPosCount>> probs_;
    mutable bool done_ = false;
};

inline PosProfile build_pos_profile(const TaggedCorpus& corpus) {
    PosProfile profile;
    for (const auto& d : corpus.documents)
        for (const auto& s : d.sentences)
            for (const auto& t : s)
                if (t.pos) profile.add_observation(t.lemma, *t.pos);
    return profile;
}

}  // namespace wnlink
