#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "wnlink/text.hpp"

namespace wnlink {

enum class Pos : int { Noun = 0, Verb = 1, Adjective = 2, Adverb = 3 };

inline constexpr int kPosCount = 4;
inline constexpr std::array<Pos, 4> kAllPos = {Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb};

inline int pos_index(Pos p) { return static_cast<int>(p); }

inline char pos_letter(Pos p) {
    switch (p) {
        case Pos::Noun: return 'n';
        case Pos::Verb: return 'v';
        case Pos::Adjective: return 'a';
        case Pos::Adverb: return 'r';
    }
    return '?';
}

inline const char* pos_name(Pos p) {
    switch (p) {
        case Pos::Noun: return "noun";
        case Pos::Verb: return "verb";
        case Pos::Adjective: return "adjective";
        case Pos::Adverb: return "adverb";
    }
    return "?";
}

inline std::optional<Pos> pos_from_letter(char c) {
    switch (c) {
        case 'n': return Pos::Noun;
        case 'v': return Pos::Verb;
        case 'a': return Pos::Adjective;
        case 'r': return Pos::Adverb;
        default: return std::nullopt;
    }
}

// Corpus tag sets vary; anything not recognizable as one of the four
// categories is treated as outside them.
inline std::optional<Pos> pos_from_tag(std::string_view tag) {
    std::string t = to_lower(tag);
    if (t == "n" || t == "noun") return Pos::Noun;
    if (t == "v" || t == "verb") return Pos::Verb;
    if (t == "a" || t == "adj" || t == "adjective") return Pos::Adjective;
    if (t == "r" || t == "adv" || t == "adverb") return Pos::Adverb;
    return std::nullopt;
}

// Synset ids carry their POS as a "-x" suffix, e.g. "00001740-n".
inline std::optional<Pos> pos_from_synset_id(std::string_view id) {
    std::size_t dash = id.rfind('-');
    if (dash == std::string_view::npos || dash + 2 != id.size()) return std::nullopt;
    return pos_from_letter(id[dash + 1]);
}

}  // namespace wnlink
