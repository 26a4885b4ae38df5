// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wnlink/wnlink.hpp"

#include "oracle.hpp"

using namespace wnlink;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- criterion 1: feature computations vs brute force ----------------------

Outcome feature_oracle_suite() {
    const auto start = Clock::now();
    Rng rng(20240601);
    double max_diff = 0;
    std::size_t links_checked = 0;
    for (int world_idx = 0; world_idx < 50; ++world_idx) {
        const oracle::MicroWorld world = oracle::make_micro_world(rng);
        const WordnetIndex wn = world.wordnet();
        const BilingualDictionary dict = world.dictionary();
        const ContextVectorMap target_cvs = world.cv_map(true);
        const ContextVectorMap source_cvs = world.cv_map(false);
        const EmbeddingTable emb = world.embedding_table(4);
        const DomainModel domains = world.domain_model(3);
        const FeatureInputs inputs{wn, dict, target_cvs, source_cvs, emb, domains};

        const auto rows = featurize(generate_candidates(world.target_vocab, dict, wn), inputs);
        const auto expected = oracle::featurize_all(world);
        if (rows.size() != expected.size())
            return {false, "world " + std::to_string(world_idx) + ": link sets differ"};
        for (const auto& row : rows) {
            const auto& exp = expected.at({row.link.lemma, row.link.synset_id});
            const auto got = row.features.as_array();
            for (int f = 0; f < kFeatureCount; ++f) {
                const double diff = std::abs(got[static_cast<std::size_t>(f)] -
                                             exp[static_cast<std::size_t>(f)]);
                max_diff = std::max(max_diff, diff);
                if (diff > 1e-9)
                    return {false, std::string(kFeatureNames[static_cast<std::size_t>(f)]) +
                                       " off by " + std::to_string(diff) + " on " +
                                       row.link.lemma + "/" + row.link.synset_id};
            }
            ++links_checked;
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "50 worlds, " << links_checked << " links, max |diff| " << max_diff << ", "
           << format_double(elapsed, 1) << "s";
    if (elapsed >= 30.0) return {false, detail.str() + " (over the 30s budget)"};
    return {true, detail.str()};
}

// ---- criterion 2: JS divergence metric properties ---------------------------

Outcome metric_suite() {
    const auto start = Clock::now();
    Rng rng(5150);
    auto random_dist = [&](std::size_t n) {
        std::vector<double> d(n);
        double sum = 0;
        for (auto& x : d) {
            x = uniform_real01(rng) < 0.25 ? 0.0 : uniform_real01(rng);
            sum += x;
        }
        if (sum == 0) {
            d[0] = 1;
            sum = 1;
        }
        for (auto& x : d) x /= sum;
        return d;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = 2 + uniform_index(rng, 8);
        const auto p = random_dist(dim);
        const auto q = random_dist(dim);
        const auto r = random_dist(dim);

        if (js_divergence(p, q) != js_divergence(q, p))
            return {false, "symmetry violated on trial " + std::to_string(trial)};
        if (js_divergence(p, p) > 1e-12)
            return {false, "JS(P,P) above 1e-12 on trial " + std::to_string(trial)};
        const double pq = js_divergence(p, q);
        if (pq < 0.0 || pq > 1.0)
            return {false, "JS out of [0,1] on trial " + std::to_string(trial)};
        const double direct = std::sqrt(pq);
        const double detour = std::sqrt(js_divergence(p, r)) + std::sqrt(js_divergence(r, q));
        if (direct > detour + 1e-9)
            return {false, "triangle inequality violated on trial " + std::to_string(trial)};
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 5.0)
        return {false, "1000 triples took " + format_double(elapsed, 1) + "s (over the 5s budget)"};
    return {true, "1000 triples, " + format_double(elapsed, 2) + "s"};
}

// ---- criterion 3: classifier hand checks -------------------------------------

Outcome classifier_hand_check() {
    GaussianNBModel model;
    model.feature_indices = {0};
    model.priors = {0.5, 0.5};
    model.mean = {{2.0, -2.0}};
    model.variance = {{2.0, 2.0}};
    FeatureVector fv;
    fv.relatedness = 1.0;
    const double posterior = predict_nb(model, fv).posterior_correct;
    if (std::abs(posterior - 0.8808) > 1e-3)
        return {false, "N(2,2)/N(-2,2) posterior " + std::to_string(posterior)};

    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        TrainSet ts;
        for (int i = 0; i < 30; ++i) {
            std::array<double, 7> values{};
            for (auto& x : values) x = uniform_index(rng, 5) * 0.25;
            ts.instances.push_back({{"w" + std::to_string(i), "00000001-n"},
                                    FeatureVector::from_array(values),
                                    uniform_real01(rng) < 0.5 ? Label::Correct : Label::Incorrect});
        }
        const int k = 1 + static_cast<int>(uniform_index(rng, 10));
        KnnModel model_knn = train_knn(ts, k);

        std::array<double, 7> mu{}, sd{};
        for (const auto& inst : ts.instances) {
            const auto values = inst.features.as_array();
            for (std::size_t j = 0; j < 7; ++j) mu[j] += values[j];
        }
        for (auto& m : mu) m /= 30.0;
        for (const auto& inst : ts.instances) {
            const auto values = inst.features.as_array();
            for (std::size_t j = 0; j < 7; ++j) {
                const double d = values[j] - mu[j];
                sd[j] += d * d;
            }
        }
        for (auto& s : sd) s = std::sqrt(s / 30.0);

        for (int q = 0; q < 10; ++q) {
            std::array<double, 7> query{};
            for (auto& x : query) x = uniform_index(rng, 5) * 0.25;

            std::vector<std::pair<double, std::size_t>> scored;
            for (std::size_t i = 0; i < ts.instances.size(); ++i) {
                const auto values = ts.instances[i].features.as_array();
                double dist = 0;
                for (std::size_t j = 0; j < 7; ++j) {
                    if (sd[j] == 0) continue;
                    const double a = (query[j] - mu[j]) / sd[j];
                    const double b = (values[j] - mu[j]) / sd[j];
                    dist += (a - b) * (a - b);
                }
                scored.emplace_back(dist, i);
            }
            std::sort(scored.begin(), scored.end());
            std::size_t votes = 0;
            for (int i = 0; i < k; ++i)
                votes += ts.instances[scored[static_cast<std::size_t>(i)].second].label ==
                                 Label::Correct
                             ? 1
                             : 0;
            const Label expected =
                2 * votes > static_cast<std::size_t>(k) ? Label::Correct : Label::Incorrect;
            if (predict_knn(model_knn, FeatureVector::from_array(query)) != expected)
                return {false, "knn mismatch on trial " + std::to_string(trial)};
        }
    }
    return {true, "posterior 0.8808 ok; knn exact on 100 random 30-instance sets"};
}

// ---- criterion 4: information gain ------------------------------------------

Outcome information_gain_checks(const TrainSet& world_ts) {
    {
        TrainSet ts;
        for (int i = 0; i < 40; ++i) {
            const bool correct = i % 4 == 0;
            std::array<double, 7> values{};
            values[0] = correct ? 1.0 : 0.0;
            ts.instances.push_back({{"w" + std::to_string(i), "00000001-n"},
                                    FeatureVector::from_array(values),
                                    correct ? Label::Correct : Label::Incorrect});
        }
        const double p = 0.25;
        const double h_label = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
        const auto gains = information_gain(ts);
        if (gains.front().feature != 0 || std::abs(gains.front().gain - h_label) > 1e-9)
            return {false, "perfect predictor scored " + std::to_string(gains.front().gain) +
                               " (expected " + std::to_string(h_label) + ")"};
        for (const auto& fg : gains)
            if (fg.feature != 0 && fg.gain != 0.0)
                return {false, std::string("constant feature ") + fg.name + " scored " +
                                   std::to_string(fg.gain)};
    }

    // shuffle the strongest feature's column: it must fall to the last rank
    TrainSet shuffled = world_ts;
    const int strongest = information_gain(world_ts).front().feature;
    std::vector<double> column;
    for (const auto& inst : shuffled.instances)
        column.push_back(inst.features.as_array()[static_cast<std::size_t>(strongest)]);
    Rng rng(999);
    shuffle_vec(column, rng);
    for (std::size_t i = 0; i < shuffled.instances.size(); ++i) {
        auto values = shuffled.instances[i].features.as_array();
        values[static_cast<std::size_t>(strongest)] = column[i];
        shuffled.instances[i].features = FeatureVector::from_array(values);
    }
    const auto ranking = information_gain(shuffled);
    if (ranking.back().feature != strongest) {
        std::size_t rank = 0;
        for (std::size_t i = 0; i < ranking.size(); ++i)
            if (ranking[i].feature == strongest) rank = i;
        return {false, std::string("label-shuffled feature ranked ") + std::to_string(rank + 1) +
                           " of 7, not last"};
    }
    return {true, std::string("perfect/constant gains exact; shuffled '") +
                      kFeatureNames[static_cast<std::size_t>(strongest)] + "' ranked last"};
}

// ---- criterion 5: cross-validation stratification ----------------------------

Outcome crossval_checks(const TrainSet& world_ts) {
    {
        std::vector<Label> labels;
        for (int i = 0; i < 10864; ++i) labels.push_back(Label::Correct);
        for (int i = 0; i < 4994; ++i) labels.push_back(Label::Incorrect);
        const auto assignment = stratified_folds(labels, 10, 77);
        std::vector<std::size_t> sizes(10, 0), correct_sizes(10, 0);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ++sizes[static_cast<std::size_t>(assignment[i])];
            if (labels[i] == Label::Correct) ++correct_sizes[static_cast<std::size_t>(assignment[i])];
        }
        for (std::size_t f = 0; f < 10; ++f) {
            if (sizes[f] != 1585 && sizes[f] != 1586)
                return {false, "fold " + std::to_string(f) + " has " + std::to_string(sizes[f]) +
                                   " instances (expected 1585 or 1586)"};
            if (correct_sizes[f] != 1086 && correct_sizes[f] != 1087)
                return {false, "fold " + std::to_string(f) + " class imbalance"};
        }
    }
    const MetricsReport a = cross_validate(world_ts, 10, 4242, ClassifierSpec{});
    const MetricsReport b = cross_validate(world_ts, 10, 4242, ClassifierSpec{});
    if (metrics_to_json(a).dump() != metrics_to_json(b).dump())
        return {false, "same-seed reports differ"};
    std::size_t min_sz = SIZE_MAX, max_sz = 0;
    for (std::size_t sz : a.fold_sizes) {
        min_sz = std::min(min_sz, sz);
        max_sz = std::max(max_sz, sz);
    }
    if (max_sz - min_sz > 1) return {false, "world train-set folds differ by more than 1"};
    return {true, "15,858 instances split into 1,585/1,586 folds; identical seeds reproduce"};
}

// ---- criterion 6: end-to-end synthetic run -----------------------------------

struct PipelineArtifacts {
    TrainSet train_set;
    EvalReport eval;
    double elapsed = 0;
};

PipelineArtifacts run_end_to_end(const std::string& dir) {
    const auto start = Clock::now();
    WorldSpec spec;  // the default world, moderate noise
    const GeneratedWorld world = generate_world(spec, dir);

    const WordnetIndex wn = load_wordnet(dir + "/wordnet.jsonl");
    const BilingualDictionary dict = load_dictionary(dir + "/dictionary.tsv");
    const TaggedCorpus target_corpus = load_corpus(dir + "/corpus_target.vert");
    const TaggedCorpus source_corpus = load_corpus(dir + "/corpus_source.vert");

    const ContextVectorMap target_cvs = build_context_vectors(target_corpus, 100, 1);
    const ContextVectorMap source_cvs = build_context_vectors(source_corpus, 100, 1);
    SkipgramParams emb_params;  // dimensions as in the emitted config
    emb_params.dim = 100;
    emb_params.min_count = 2;
    emb_params.seed = 1;
    const EmbeddingTable emb = train_skipgram(target_corpus, emb_params);
    const DomainModel domains = build_domain_distributions(target_corpus);

    const auto candidates = generate_candidates(target_corpus.vocabulary(1), dict, wn);
    const auto pruned = prune_pos(candidates, build_pos_profile(target_corpus), 0.0);

    const FeatureInputs inputs{wn, dict, target_cvs, source_cvs, emb, domains};
    const auto featurized = featurize(pruned, inputs);
    std::vector<FeatureRow> rows;
    rows.reserve(featurized.size());
    for (const auto& r : featurized) rows.push_back({r.link.key(), r.features});

    const SeedLinks seed = load_seed_links(dir + "/seed_links.tsv", wn);
    const TestSet test = load_test_set(dir + "/test_links.tsv");
    std::set<LinkKey> test_keys;
    for (const auto& e : test.entries) test_keys.insert(e.key);

    PipelineArtifacts artifacts;
    artifacts.train_set = build_train_set(seed.links, rows,
                                          std::max<std::size_t>(4, seed.links.size() / 2),
                                          test_keys, 1);
    const GaussianNBModel model = train_nb(artifacts.train_set);
    const auto induced = induce_wordnet(model, rows, seed.links);
    std::vector<LinkKey> induced_keys;
    for (const auto& link : induced) induced_keys.push_back(link.key);
    artifacts.eval = evaluate(induced_keys, test);
    artifacts.elapsed = seconds_since(start);
    return artifacts;
}

Outcome end_to_end_check(const PipelineArtifacts& artifacts) {
    if (!artifacts.eval.overall.precision)
        return {false, "no induced link fell inside the test set"};
    const double precision = *artifacts.eval.overall.precision;
    const double recall = artifacts.eval.overall.recall;
    std::ostringstream detail;
    detail << "correct-class precision " << format_double(precision, 4) << ", recall "
           << format_double(recall, 4) << ", " << format_double(artifacts.elapsed, 1) << "s";
    if (artifacts.elapsed >= 60.0) return {false, detail.str() + " (over the 60s budget)"};
    if (precision < 0.90 || recall < 0.40) return {false, detail.str()};
    return {true, detail.str()};
}

// ---- criterion 7: incremental feature table -----------------------------------

Outcome incremental_check(const TrainSet& world_ts) {
    const auto ranking = information_gain(world_ts);
    const auto rows = incremental_feature_eval(world_ts, ranking, 10, 7, ClassifierSpec{});
    if (rows.size() != 7) return {false, "expected 7 rows, got " + std::to_string(rows.size())};
    for (const auto& row : rows) {
        const MetricsReport reference =
            cross_validate(world_ts, 10, 7, ClassifierSpec{}, row.feature_indices);
        if (metrics_to_json(reference).dump() != metrics_to_json(row.metrics).dump())
            return {false, "row '" + row.feature_added + "' differs from a direct invocation"};
    }
    return {true, "7 rows, each equal to an independent cross-validation"};
}

// ---- criterion 8: statistics definitions ---------------------------------------

Outcome stats_check() {
    const std::vector<LinkKey> links = {
        {"w1", "00000001-n"}, {"w1", "00000002-n"}, {"w1", "00000003-v"}, {"w2", "00000001-n"},
        {"w2", "00000004-a"}, {"w3", "00000005-r"}, {"w4", "00000002-n"}, {"w4", "00000007-v"},
        {"w5", "00000006-n"}, {"w6", "00000006-n"},
    };
    const WordnetStats s = wordnet_stats(links);
    if (s.pairs != 10) return {false, "pairs " + std::to_string(s.pairs)};
    if (s.words != 6) return {false, "words " + std::to_string(s.words)};
    if (s.synsets != 7) return {false, "synsets " + std::to_string(s.synsets)};
    if (std::abs(s.polysemy_rate - 0.5) > 0.0)  // w1, w2, w4 of six words
        return {false, "polysemy rate " + std::to_string(s.polysemy_rate)};
    if (s.per_pos.at(Pos::Noun).pairs != 6 || s.per_pos.at(Pos::Verb).pairs != 2 ||
        s.per_pos.at(Pos::Adjective).pairs != 1 || s.per_pos.at(Pos::Adverb).pairs != 1)
        return {false, "per-POS pair breakdown wrong"};
    return {true, "10-link wordnet counts match hand counts exactly"};
}

}  // namespace

int main() {
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / ("wnlink_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);

    int failures = 0;
    auto report = [&](int id, const std::string& name, const Outcome& outcome) {
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name
                  << " — " << outcome.detail << '\n';
        if (!outcome.pass) ++failures;
    };

    report(1, "feature computations match brute-force references (1e-9)", feature_oracle_suite());
    report(2, "Jensen-Shannon metric properties", metric_suite());
    report(3, "classifier hand checks (NB posterior, exhaustive kNN)", classifier_hand_check());

    PipelineArtifacts artifacts = run_end_to_end((tmp / "world").string());
    report(4, "information gain (perfect, constant, label-shuffled)",
           information_gain_checks(artifacts.train_set));
    report(5, "stratified cross-validation balance and reproducibility",
           crossval_checks(artifacts.train_set));
    report(6, "end-to-end synthetic run (precision >= 0.90, recall >= 0.40)",
           end_to_end_check(artifacts));
    report(7, "incremental feature table", incremental_check(artifacts.train_set));
    report(8, "wordnet statistics definitions", stats_check());

    std::error_code ec;
    std::filesystem::remove_all(tmp, ec);

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 8 criteria passed\n";
    return 0;
}
