#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wnlink/dictionary.hpp"
#include "wnlink/error.hpp"
#include "wnlink/links.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/text.hpp"
#include "wnlink/wordnet.hpp"

namespace wnlink {

/// Parameters of a generated bilingual world. The defaults give a desk-scale
/// world with enough planted signal for the full pipeline to separate correct
/// from incorrect links, while the noise knobs keep the task non-trivial.
struct WorldSpec {
    std::uint64_t seed = 7;

    std::size_t synsets = 300;
    std::size_t target_words = 500;
    std::size_t source_words = 1200;  // cap on distinct reference-language words
    std::size_t documents = 200;
    std::size_t categories = 9;
    std::size_t sentences_per_doc = 12;
    std::size_t gloss_length = 8;

    double ambiguity = 0.25;       // chance a synset member reuses an existing source word
    double misleading = 0.15;      // wrong dictionary rows, as a fraction of true rows
    double gloss_noise = 0.2;      // chance a gloss token is drawn off-topic
    double target_polysemy = 0.2;  // chance a synset reuses an existing target word
    double seed_fraction = 0.6;    // share of true links exported as seed links
    double test_fraction = 0.3;    // share of non-seed correct links exported as test links
    // incorrect test links drawn per correct one; judged test sets skew heavily
    // toward plausible links, so the default keeps roughly a 3:1 balance
    double test_negative_ratio = 1.0 / 3.0;

    void validate() const {
        if (synsets < 1 || target_words < 1 || source_words < 1 || documents < 1 ||
            categories < 1 || sentences_per_doc < 1 || gloss_length < 1)
            throw Error("world spec: all counts must be at least 1");
        for (double rate : {ambiguity, misleading, gloss_noise, target_polysemy, seed_fraction,
                            test_fraction})
            if (rate < 0.0 || rate > 1.0) throw Error("world spec: rates must lie in [0, 1]");
        if (test_negative_ratio < 0.0) throw Error("world spec: test_negative_ratio must be >= 0");
    }
};

struct GeneratedWorld {
    std::string dir;
    std::map<std::string, std::string> files;  // logical name -> path inside dir

    std::vector<TestEntry> ground_truth;  // every candidate link, labeled
    std::vector<LinkKey> seed_links;
    std::vector<TestEntry> test_links;

    std::size_t candidate_count = 0;
    std::size_t correct_count = 0;
    std::size_t incorrect_count = 0;
};

namespace detail {

// Purely alphabetic pseudo-words, so gloss tokenization keeps them intact.
inline std::string base26_word(const char* prefix, std::size_t index) {
    std::string digits;
    for (int i = 0; i < 3 || index > 0; ++i) {
        digits.push_back(static_cast<char>('a' + index % 26));
        index /= 26;
    }
    std::reverse(digits.begin(), digits.end());
    return prefix + digits;
}

struct Concept {
    std::string synset_id;
    Pos pos = Pos::Noun;
    std::size_t category = 0;
    std::vector<std::size_t> source_members;  // into the source word table
    std::vector<std::size_t> target_members;  // into the target word table
};

}  // namespace detail

/// Writes a complete self-consistent world into `out_dir`: reference wordnet,
/// dictionary, two corpora, seed/test links, ground truth, a core-synset list
/// and a ready-to-run pipeline config. Deterministic per seed, byte for byte.
inline GeneratedWorld generate_world(const WorldSpec& spec, const std::string& out_dir) {
    spec.validate();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    Rng rng(spec.seed);
    auto chance = [&](double p) { return uniform_real01(rng) < p; };

    // --- concepts, source members, target members -------------------------
    std::vector<detail::Concept> concepts(spec.synsets);
    std::vector<std::string> source_words, target_words;
    std::vector<std::size_t> assigned_targets;  // target ids used by some concept

    for (std::size_t i = 0; i < spec.synsets; ++i) {
        auto& c = concepts[i];
        const double r = uniform_real01(rng);
        c.pos = r < 0.55 ? Pos::Noun : r < 0.75 ? Pos::Verb : r < 0.90 ? Pos::Adjective : Pos::Adverb;
        c.category = i % spec.categories;
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "%08zu-%c", i + 1, pos_letter(c.pos));
        c.synset_id = idbuf;

        const std::size_t n_members = 1 + uniform_index(rng, 3);
        for (std::size_t m = 0; m < n_members; ++m) {
            std::size_t word = source_words.size();
            bool reuse = !source_words.empty() &&
                         (chance(spec.ambiguity) || source_words.size() >= spec.source_words);
            if (reuse) {
                if (source_words.size() >= spec.source_words && spec.ambiguity == 0.0)
                    throw Error("source word pool exhausted with ambiguity 0; raise source_words");
                bool ok = false;
                for (int tries = 0; tries < 20 && !ok; ++tries) {
                    word = uniform_index(rng, source_words.size());
                    ok = std::find(c.source_members.begin(), c.source_members.end(), word) ==
                         c.source_members.end();
                }
                if (!ok) continue;
            } else {
                source_words.push_back(detail::base26_word("en", source_words.size()));
            }
            c.source_members.push_back(word);
        }

        const std::size_t n_targets = 1 + uniform_index(rng, 3);
        for (std::size_t m = 0; m < n_targets; ++m) {
            std::size_t word = target_words.size();
            bool reuse = !assigned_targets.empty() &&
                         (chance(spec.target_polysemy) || target_words.size() >= spec.target_words);
            if (reuse) {
                bool ok = false;
                for (int tries = 0; tries < 20 && !ok; ++tries) {
                    word = assigned_targets[uniform_index(rng, assigned_targets.size())];
                    ok = std::find(c.target_members.begin(), c.target_members.end(), word) ==
                         c.target_members.end();
                }
                if (!ok) continue;
            } else {
                target_words.push_back(detail::base26_word("fa", target_words.size()));
                assigned_targets.push_back(word);
            }
            c.target_members.push_back(word);
        }
    }

    // --- reference wordnet -------------------------------------------------
    // topic pools per category, for glosses and corpus sentences
    std::vector<std::vector<std::size_t>> concepts_of_cat(spec.categories);
    for (std::size_t i = 0; i < concepts.size(); ++i)
        concepts_of_cat[concepts[i].category].push_back(i);

    std::vector<Synset> synsets;
    synsets.reserve(concepts.size());
    for (const auto& c : concepts) {
        Synset s;
        s.id = c.synset_id;
        s.pos = c.pos;
        for (std::size_t w : c.source_members) s.members.push_back(source_words[w]);
        std::string gloss;
        for (std::size_t t = 0; t < spec.gloss_length; ++t) {
            std::size_t concept_idx;
            if (!chance(spec.gloss_noise) && !concepts_of_cat[c.category].empty()) {
                const auto& pool = concepts_of_cat[c.category];
                concept_idx = pool[uniform_index(rng, pool.size())];
            } else {
                concept_idx = uniform_index(rng, concepts.size());
            }
            const auto& members = concepts[concept_idx].source_members;
            const std::string& word = source_words[members[uniform_index(rng, members.size())]];
            if (!gloss.empty()) gloss += (t % 3 == 2) ? ", " : " ";
            gloss += word;
        }
        s.gloss = gloss;
        synsets.push_back(std::move(s));
    }

    WordnetIndex wn;
    for (const auto& s : synsets) wn.add(s);

    // --- dictionary ----------------------------------------------------------
    BilingualDictionary dict;
    std::vector<std::pair<std::string, std::string>> dict_rows;
    for (const auto& c : concepts)
        for (std::size_t f : c.target_members)
            for (std::size_t e : c.source_members)
                if (dict.add_pair(target_words[f], source_words[e]))
                    dict_rows.emplace_back(target_words[f], source_words[e]);

    std::set<std::pair<std::size_t, std::size_t>> true_pairs;  // (target, source concept-sharing)
    std::map<std::size_t, std::set<std::size_t>> concepts_of_target;
    for (std::size_t i = 0; i < concepts.size(); ++i)
        for (std::size_t f : concepts[i].target_members) concepts_of_target[f].insert(i);

    const std::size_t n_misleading =
        static_cast<std::size_t>(spec.misleading * static_cast<double>(dict_rows.size()));
    for (std::size_t added = 0; added < n_misleading;) {
        const std::size_t f = assigned_targets[uniform_index(rng, assigned_targets.size())];
        const std::size_t e = uniform_index(rng, source_words.size());
        bool shares_concept = false;
        for (std::size_t ci : concepts_of_target[f]) {
            const auto& mem = concepts[ci].source_members;
            if (std::find(mem.begin(), mem.end(), e) != mem.end()) {
                shares_concept = true;
                break;
            }
        }
        if (shares_concept) {
            ++added;  // bounded progress even in tiny worlds
            continue;
        }
        if (dict.add_pair(target_words[f], source_words[e])) {
            dict_rows.emplace_back(target_words[f], source_words[e]);
            ++added;
        } else {
            ++added;
        }
    }
    std::sort(dict_rows.begin(), dict_rows.end());

    // --- corpora -------------------------------------------------------------
    const std::size_t n_filler = 40;
    std::vector<std::string> filler;
    for (std::size_t i = 0; i < n_filler; ++i) filler.push_back(detail::base26_word("fil", i));

    using RawSentence = std::vector<std::pair<std::string, std::string>>;  // (lemma, tag)
    std::vector<std::size_t> focus_count(concepts.size(), 0);

    auto make_sentence = [&](std::size_t concept_idx, bool source_side) {
        RawSentence sentence;
        const auto& c = concepts[concept_idx];
        ++focus_count[concept_idx];
        const auto& members = source_side ? c.source_members : c.target_members;
        const auto& table = source_side ? source_words : target_words;
        for (std::size_t w : members)
            sentence.emplace_back(table[w], std::string(1, pos_letter(c.pos)));
        const std::size_t extras = 2 + uniform_index(rng, 3);
        for (std::size_t x = 0; x < extras; ++x) {
            const auto& pool = concepts_of_cat[c.category];
            const std::size_t other = chance(0.1) ? uniform_index(rng, concepts.size())
                                                  : pool[uniform_index(rng, pool.size())];
            const auto& omembers =
                source_side ? concepts[other].source_members : concepts[other].target_members;
            const std::size_t w = omembers[uniform_index(rng, omembers.size())];
            sentence.emplace_back(table[w], std::string(1, pos_letter(concepts[other].pos)));
        }
        const std::size_t fillers = 1 + uniform_index(rng, 2);
        for (std::size_t x = 0; x < fillers; ++x)
            sentence.emplace_back(filler[uniform_index(rng, filler.size())], "x");
        shuffle_vec(sentence, rng);
        return sentence;
    };

    auto build_corpus = [&](bool source_side) {
        std::vector<std::vector<RawSentence>> docs(spec.documents);
        std::vector<std::vector<std::size_t>> docs_of_cat(spec.categories);
        for (std::size_t d = 0; d < spec.documents; ++d)
            docs_of_cat[d % spec.categories].push_back(d);

        // two dedicated sentences per concept so every member is observed
        // with its synset's POS and synonyms genuinely co-occur
        std::vector<std::size_t> next_doc(spec.categories, 0);
        for (std::size_t i = 0; i < concepts.size(); ++i) {
            const std::size_t cat = concepts[i].category;
            for (int rep = 0; rep < 2; ++rep) {
                std::size_t d;
                if (!docs_of_cat[cat].empty()) {
                    d = docs_of_cat[cat][next_doc[cat] % docs_of_cat[cat].size()];
                    ++next_doc[cat];
                } else {
                    d = i % spec.documents;
                }
                docs[d].push_back(make_sentence(i, source_side));
            }
        }
        for (std::size_t d = 0; d < spec.documents; ++d) {
            const std::size_t cat = d % spec.categories;
            while (docs[d].size() < spec.sentences_per_doc) {
                std::size_t concept_idx;
                if (!chance(0.1) && !concepts_of_cat[cat].empty()) {
                    const auto& pool = concepts_of_cat[cat];
                    concept_idx = pool[uniform_index(rng, pool.size())];
                } else {
                    concept_idx = uniform_index(rng, concepts.size());
                }
                docs[d].push_back(make_sentence(concept_idx, source_side));
            }
        }
        return docs;
    };

    auto write_corpus = [&](const std::string& path, const std::vector<std::vector<RawSentence>>& docs) {
        auto out = open_output(path);
        for (std::size_t d = 0; d < docs.size(); ++d) {
            out << "#DOC\tcategory=" << detail::base26_word("cat", d % spec.categories) << '\n';
            for (const auto& sentence : docs[d]) {
                for (const auto& [lemma, tag] : sentence)
                    out << lemma << '\t' << lemma << '\t' << tag << '\n';
                out << '\n';
            }
        }
    };

    const auto target_docs = build_corpus(false);
    const auto source_docs = build_corpus(true);

    // --- ground truth, seed and test links ----------------------------------
    GeneratedWorld world;
    world.dir = out_dir;

    std::vector<std::string> sorted_targets;
    for (std::size_t f : assigned_targets) sorted_targets.push_back(target_words[f]);
    std::sort(sorted_targets.begin(), sorted_targets.end());

    std::map<std::string, std::set<std::size_t>> concept_ids_by_target_name;
    for (const auto& [f, cids] : concepts_of_target)
        concept_ids_by_target_name[target_words[f]] = cids;

    for (const auto& f : sorted_targets) {
        std::map<std::string, bool> links;  // synset id -> correct
        for (const auto& e : dict.translations_of(f)) {
            for (std::size_t idx : wn.synsets_with_lemma(e)) {
                const Synset& s = wn.at(idx);
                const auto& mem = concepts[idx].target_members;
                bool correct = false;
                for (std::size_t w : mem)
                    if (target_words[w] == f) correct = true;
                links.emplace(s.id, correct);
            }
        }
        for (const auto& [sid, correct] : links)
            world.ground_truth.push_back({{f, sid}, correct});
    }
    world.candidate_count = world.ground_truth.size();
    for (const auto& e : world.ground_truth) (e.correct ? world.correct_count : world.incorrect_count)++;

    std::vector<const TestEntry*> incorrect_pool;
    for (const auto& entry : world.ground_truth) {
        if (entry.correct) {
            if (chance(spec.seed_fraction))
                world.seed_links.push_back(entry.key);
            else if (chance(spec.test_fraction))
                world.test_links.push_back(entry);
        } else {
            incorrect_pool.push_back(&entry);
        }
    }
    const std::size_t incorrect_wanted = std::min(
        incorrect_pool.size(), static_cast<std::size_t>(std::llround(
                                   spec.test_negative_ratio *
                                   static_cast<double>(world.test_links.size()))));
    for (std::size_t idx : sample_indices(rng, incorrect_pool.size(), incorrect_wanted))
        world.test_links.push_back(*incorrect_pool[idx]);
    std::sort(world.test_links.begin(), world.test_links.end(),
              [](const TestEntry& a, const TestEntry& b) { return a.key < b.key; });

    // --- core synsets: top 20% by how often their concept anchored a sentence
    std::vector<std::size_t> order(concepts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (focus_count[a] != focus_count[b]) return focus_count[a] > focus_count[b];
        return concepts[a].synset_id < concepts[b].synset_id;
    });
    const std::size_t n_core = std::max<std::size_t>(1, concepts.size() / 5);
    std::vector<std::string> core_ids;
    for (std::size_t i = 0; i < n_core; ++i) core_ids.push_back(concepts[order[i]].synset_id);
    std::sort(core_ids.begin(), core_ids.end());

    // --- emit ----------------------------------------------------------------
    auto path_of = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };
    auto emit = [&](const std::string& logical, const std::string& name) {
        world.files[logical] = name;
        return path_of(name);
    };

    write_wordnet_jsonl(emit("wordnet", "wordnet.jsonl"), synsets);
    write_dictionary(emit("dictionary", "dictionary.tsv"), dict_rows);
    write_corpus(emit("corpus_target", "corpus_target.vert"), target_docs);
    write_corpus(emit("corpus_source", "corpus_source.vert"), source_docs);
    write_link_tsv(emit("seed_links", "seed_links.tsv"), world.seed_links);
    write_test_tsv(emit("test_links", "test_links.tsv"), world.test_links);
    write_test_tsv(emit("ground_truth", "ground_truth.tsv"), world.ground_truth);
    {
        auto out = open_output(emit("core_synsets", "core_synsets.txt"));
        for (const auto& id : core_ids) out << id << '\n';
    }
    {
        const std::size_t negative_count = std::max<std::size_t>(4, world.seed_links.size() / 2);
        auto out = open_output(emit("config", "config.ini"));
        out << "# pipeline configuration for the generated world\n"
            << "wordnet = wordnet.jsonl\n"
            << "dictionary = dictionary.tsv\n"
            << "corpus_target = corpus_target.vert\n"
            << "corpus_source = corpus_source.vert\n"
            << "seed_links = seed_links.tsv\n"
            << "test_links = test_links.tsv\n"
            << "core_synsets = core_synsets.txt\n"
            << "workdir = work\n"
            << "cv_k = 100\n"
            << "cv_min_count = 1\n"
            << "embedding_dim = 100\n"
            << "embedding_window = 5\n"
            << "embedding_negatives = 5\n"
            << "embedding_epochs = 5\n"
            << "embedding_min_count = 2\n"
            << "embedding_seed = 1\n"
            << "pos_threshold = 0\n"
            << "polysemy_scope = pos\n"
            << "importance_ties = shared\n"
            << "min_word_freq = 1\n"
            << "negative_count = " << negative_count << "\n"
            << "trainset_seed = 1\n"
            << "folds = 10\n"
            << "crossval_seed = 1\n"
            << "classifier = nb\n"
            << "knn_k = 10\n"
            << "workers = 1\n";
    }
    {
        nlohmann::ordered_json manifest;
        manifest["format"] = "wnlink-world";
        manifest["format_version"] = 1;
        manifest["seed"] = spec.seed;
        manifest["files"] = world.files;
        manifest["counts"] = {{"synsets", spec.synsets},
                              {"source_words", source_words.size()},
                              {"target_words", target_words.size()},
                              {"documents", spec.documents},
                              {"categories", spec.categories},
                              {"candidates", world.candidate_count},
                              {"correct_links", world.correct_count},
                              {"incorrect_links", world.incorrect_count},
                              {"seed_links", world.seed_links.size()},
                              {"test_links", world.test_links.size()}};
        auto out = open_output(emit("manifest", "manifest.json"));
        out << manifest.dump(2) << '\n';
    }
    return world;
}

}  // namespace wnlink
