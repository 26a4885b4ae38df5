#include <catch2/catch_amalgamated.hpp>

#include "wnlink/evaluate.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/synthgen.hpp"

#include "testutil.hpp"

using namespace wnlink;

namespace {

TestSet make_test(const std::vector<std::tuple<std::string, std::string, bool>>& rows) {
    TestSet test;
    for (const auto& [lemma, sid, correct] : rows) test.entries.push_back({{lemma, sid}, correct});
    std::sort(test.entries.begin(), test.entries.end(),
              [](const TestEntry& a, const TestEntry& b) { return a.key < b.key; });
    return test;
}

}  // namespace

TEST_CASE("evaluate on exact match and on disjoint sets") {
    TestSet test = make_test({
        {"a", "00000001-n", true},
        {"b", "00000002-v", true},
        {"c", "00000003-a", false},
    });

    SECTION("inducing exactly the correct links is perfect") {
        EvalReport r = evaluate({{"a", "00000001-n"}, {"b", "00000002-v"}}, test);
        REQUIRE(r.overall.precision.has_value());
        CHECK(*r.overall.precision == 1.0);
        CHECK(r.overall.recall == 1.0);
        CHECK(*r.overall.f1 == 1.0);
    }
    SECTION("no overlap leaves precision undefined and recall zero") {
        EvalReport r = evaluate({{"z", "00000009-n"}}, test);
        CHECK_FALSE(r.overall.precision.has_value());
        CHECK(r.overall.recall == 0.0);
        CHECK_FALSE(r.overall.f1.has_value());
    }
    SECTION("incorrect links in the overlap hurt precision only") {
        EvalReport r = evaluate({{"a", "00000001-n"}, {"c", "00000003-a"}}, test);
        CHECK(*r.overall.precision == Catch::Approx(0.5));
        CHECK(r.overall.recall == Catch::Approx(0.5));
    }
    SECTION("per-POS counts add up to the overall counts") {
        EvalReport r = evaluate({{"a", "00000001-n"}, {"b", "00000002-v"}, {"c", "00000003-a"}}, test);
        std::size_t evaluated = 0, hits = 0, test_correct = 0;
        for (const auto& [p, cell] : r.per_pos) {
            evaluated += cell.evaluated;
            hits += cell.hits;
            test_correct += cell.test_correct;
        }
        CHECK(evaluated == r.overall.evaluated);
        CHECK(hits == r.overall.hits);
        CHECK(test_correct == r.overall.test_correct);
    }
    SECTION("ids without a POS suffix are rejected") {
        TestSet bad = make_test({{"a", "nosuffix", true}});
        CHECK_THROWS_AS(evaluate({{"a", "nosuffix"}}, bad), Error);
    }
}

TEST_CASE("evaluate matches hand-counted confusion on a generated world") {
    WorldSpec spec;
    spec.seed = 40;
    spec.synsets = 60;
    spec.documents = 18;
    spec.categories = 6;
    testutil::TempDir tmp("eval_world");
    GeneratedWorld world = generate_world(spec, tmp.str());

    // take every second ground-truth link as the "induced" wordnet
    std::vector<LinkKey> induced;
    for (std::size_t i = 0; i < world.ground_truth.size(); i += 2)
        induced.push_back(world.ground_truth[i].key);

    TestSet test;
    test.entries = world.test_links;
    std::sort(test.entries.begin(), test.entries.end(),
              [](const TestEntry& a, const TestEntry& b) { return a.key < b.key; });

    // oracle: plain set arithmetic
    std::set<LinkKey> induced_set(induced.begin(), induced.end());
    std::size_t common = 0, hits = 0, correct_total = 0;
    for (const auto& e : test.entries) {
        correct_total += e.correct;
        if (induced_set.count(e.key)) {
            ++common;
            hits += e.correct;
        }
    }

    EvalReport r = evaluate(induced, test);
    CHECK(r.overall.evaluated == common);
    CHECK(r.overall.hits == hits);
    CHECK(r.overall.test_correct == correct_total);
    if (common > 0)
        CHECK(*r.overall.precision ==
              Catch::Approx(static_cast<double>(hits) / static_cast<double>(common)));
}

TEST_CASE("adding a correct test link never lowers recall") {
    TestSet test = make_test({
        {"a", "00000001-n", true},
        {"b", "00000002-n", true},
        {"c", "00000003-n", false},
    });
    std::vector<LinkKey> induced = {{"a", "00000001-n"}, {"c", "00000003-n"}};
    EvalReport before = evaluate(induced, test);
    induced.push_back({"b", "00000002-n"});
    EvalReport after = evaluate(induced, test);
    CHECK(after.overall.recall >= before.overall.recall);
    // and precision cannot fall below the old hit mass over the new denominator
    CHECK(*after.overall.precision >=
          *before.overall.precision * static_cast<double>(before.overall.evaluated) /
              static_cast<double>(after.overall.evaluated));
}

TEST_CASE("wordnet stats definitions") {
    SECTION("single link") {
        WordnetStats s = wordnet_stats({{"w", "00000001-n"}});
        CHECK(s.words == 1);
        CHECK(s.synsets == 1);
        CHECK(s.pairs == 1);
        CHECK(s.polysemy_rate == 0.0);
    }
    SECTION("one word with two senses is fully polysemous") {
        WordnetStats s = wordnet_stats({{"w", "00000001-n"}, {"w", "00000002-n"}});
        CHECK(s.words == 1);
        CHECK(s.synsets == 2);
        CHECK(s.pairs == 2);
        CHECK(s.polysemy_rate == 1.0);
    }
    SECTION("hand-built ten-link wordnet") {
        // five words: w1 has 3 senses, w2 has 2, w3/w4/w5 one each;
        // two of the synsets are shared between words
        std::vector<LinkKey> links = {
            {"w1", "00000001-n"}, {"w1", "00000002-n"}, {"w1", "00000003-v"},
            {"w2", "00000001-n"}, {"w2", "00000004-a"},
            {"w3", "00000005-r"}, {"w4", "00000002-n"}, {"w5", "00000006-n"},
            {"w5", "00000006-n"},  // duplicate collapses
            {"w4", "00000007-v"},
        };
        WordnetStats s = wordnet_stats(links);
        CHECK(s.pairs == 9);
        CHECK(s.words == 5);
        CHECK(s.synsets == 7);
        CHECK(s.polysemy_rate == Catch::Approx(3.0 / 5.0));  // w1, w2, w4
        CHECK(s.per_pos.at(Pos::Noun).pairs == 5);
        CHECK(s.per_pos.at(Pos::Noun).words == 4);
        CHECK(s.per_pos.at(Pos::Noun).synsets == 3);
        CHECK(s.per_pos.at(Pos::Verb).pairs == 2);
        CHECK(s.per_pos.at(Pos::Adjective).pairs == 1);
        CHECK(s.per_pos.at(Pos::Adverb).pairs == 1);
        std::size_t pair_sum = 0;
        for (const auto& [p, row] : s.per_pos) pair_sum += row.pairs;
        CHECK(pair_sum == s.pairs);
    }
    SECTION("generated world stats agree with a recount") {
        WorldSpec spec;
        spec.seed = 77;
        spec.synsets = 50;
        spec.documents = 10;
        spec.categories = 5;
        testutil::TempDir tmp("stats_world");
        GeneratedWorld world = generate_world(spec, tmp.str());
        std::vector<LinkKey> induced;
        for (const auto& e : world.ground_truth)
            if (e.correct) induced.push_back(e.key);
        WordnetStats s = wordnet_stats(induced);

        std::set<std::string> words, synsets;
        std::map<std::string, std::set<std::string>> senses;
        std::set<LinkKey> unique_links(induced.begin(), induced.end());
        for (const auto& k : unique_links) {
            words.insert(k.lemma);
            synsets.insert(k.synset_id);
            senses[k.lemma].insert(k.synset_id);
        }
        std::size_t poly = 0;
        for (const auto& [w, ss] : senses) poly += ss.size() > 1;
        CHECK(s.words == words.size());
        CHECK(s.synsets == synsets.size());
        CHECK(s.pairs == unique_links.size());
        CHECK(s.polysemy_rate ==
              Catch::Approx(static_cast<double>(poly) / static_cast<double>(words.size())));
    }
}

TEST_CASE("coverage ratios") {
    WordnetIndex wn;
    for (int i = 1; i <= 10; ++i) {
        Synset s;
        s.id = "0000000" + std::to_string(i) + "-n";
        s.pos = Pos::Noun;
        s.members = {"m" + std::to_string(i)};
        wn.add(std::move(s));
    }
    std::set<std::string> vocab = {"w1", "w2", "w3"};

    SECTION("inducing every core synset gives full core coverage") {
        std::set<std::string> core = {"00000001-n", "00000002-n"};
        std::vector<LinkKey> induced = {{"w1", "00000001-n"}, {"w9", "00000002-n"}};
        CoverageReport c = coverage(induced, vocab, wn, core);
        REQUIRE(c.core_coverage.has_value());
        CHECK(*c.core_coverage == 1.0);
        CHECK(c.induced_words_in_vocab == 1);  // only w1 is corpus vocabulary
        CHECK(c.vocab_size == 3);
        CHECK(c.synset_coverage == Catch::Approx(0.2));
    }
    SECTION("an empty induced wordnet covers nothing") {
        CoverageReport c = coverage({}, vocab, wn, {"00000001-n"});
        CHECK(c.induced_words_in_vocab == 0);
        CHECK(c.synset_coverage == 0.0);
        CHECK(*c.core_coverage == 0.0);
    }
    SECTION("an empty core list reports not-applicable") {
        CoverageReport c = coverage({{"w1", "00000001-n"}}, vocab, wn, {});
        CHECK_FALSE(c.core_coverage.has_value());
    }
}

TEST_CASE("report renderers stay consistent with the numbers") {
    TestSet test = make_test({{"a", "00000001-n", true}, {"b", "00000002-v", false}});
    EvalReport r = evaluate({{"a", "00000001-n"}, {"b", "00000002-v"}}, test);
    const std::string table = render_eval_report(r);
    CHECK(table.find("noun") != std::string::npos);
    CHECK(table.find("total") != std::string::npos);
    CHECK(table.find("50.00") != std::string::npos);  // overall precision 1/2

    auto j = eval_report_to_json(r);
    CHECK(j["overall"]["evaluated"] == 2);
    CHECK(j["overall"]["precision"] == Catch::Approx(0.5));

    WordnetStats s = wordnet_stats({{"a", "00000001-n"}});
    CHECK(render_stats(s).find("polysemy rate") != std::string::npos);
    CHECK(stats_to_json(s)["total"]["words"] == 1);
}
