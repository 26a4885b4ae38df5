// wnlink — batch pipeline for inducing a target-language wordnet by linking
// corpus words to reference-wordnet synsets through a bilingual dictionary.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wnlink/wnlink.hpp"

namespace fs = std::filesystem;
using namespace wnlink;

namespace {

// ---------------------------------------------------------------------------
// config/flag resolution: an explicit flag wins, then the config file, then
// the built-in default already stored in the bound variable.

struct ConfigHolder {
    std::string path;
    std::optional<IniConfig> config;

    void load_if_needed() {
        if (!path.empty() && !config) config = IniConfig::load(path);
    }
    const IniConfig* get() const { return config ? &*config : nullptr; }
};

template <typename T>
T parse_config_value(const std::string& text, const std::string& key);

template <>
std::string parse_config_value<std::string>(const std::string& text, const std::string&) {
    return text;
}

template <>
double parse_config_value<double>(const std::string& text, const std::string& key) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw Error("config key '" + key + "' is not a number: '" + text + "'");
    return v;
}

template <>
std::int64_t parse_config_value<std::int64_t>(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw Error("config key '" + key + "' is not an integer: '" + text + "'");
    }
}

template <>
std::uint64_t parse_config_value<std::uint64_t>(const std::string& text, const std::string& key) {
    std::int64_t v = parse_config_value<std::int64_t>(text, key);
    if (v < 0) throw Error("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
}

template <>
int parse_config_value<int>(const std::string& text, const std::string& key) {
    return static_cast<int>(parse_config_value<std::int64_t>(text, key));
}

std::size_t flag_count(const CLI::App* cmd, const char* flag) {
    if (!cmd) return 0;
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt ? opt->count() : 0;
}

template <typename T>
T resolve(const CLI::App* cmd, const char* flag, const T& cli_value, const ConfigHolder& holder,
          const char* key) {
    if (flag_count(cmd, flag) > 0) return cli_value;
    if (const IniConfig* cfg = holder.get(); cfg && key && cfg->has(key))
        return parse_config_value<T>(cfg->get(key), key);
    return cli_value;
}

std::string resolve_path(const CLI::App* cmd, const char* flag, const std::string& cli_value,
                         const ConfigHolder& holder, const char* key, bool required) {
    if (flag_count(cmd, flag) > 0 && !cli_value.empty()) return cli_value;
    if (const IniConfig* cfg = holder.get(); cfg && key && cfg->has(key))
        return cfg->get_path(key);
    if (required && cli_value.empty())
        throw Error(std::string("missing ") + flag +
                    (key ? std::string(" (or config key '") + key + "')" : std::string()));
    return cli_value;
}

void require_file(const std::string& path, const char* what) {
    if (!fs::exists(path)) throw Error(std::string(what) + " not found: " + path);
}

PolysemyScope parse_scope(const std::string& s) {
    if (s == "pos") return PolysemyScope::PerPos;
    if (s == "all") return PolysemyScope::All;
    throw Error("polysemy scope must be 'pos' or 'all', got '" + s + "'");
}

bool parse_ties(const std::string& s) {
    if (s == "shared") return false;
    if (s == "strict") return true;
    throw Error("importance ties must be 'shared' or 'strict', got '" + s + "'");
}

// ---------------------------------------------------------------------------
// pipeline stages, shared between the individual subcommands and `pipeline`

struct StageParams {
    std::size_t cv_k = 100;
    std::int64_t cv_min_count = 1;
    SkipgramParams embedding;
    std::int64_t min_word_freq = 1;
    double pos_threshold = 0.0;
    std::string polysemy_scope = "pos";
    std::string importance_ties = "shared";
    std::size_t negative_count = 0;
    std::uint64_t trainset_seed = 1;
    int folds = 10;
    std::uint64_t crossval_seed = 1;
    std::string classifier = "nb";
    int knn_k = 10;
    int ig_bins = 10;
    int workers = 1;
};

void stage_build_cv(const std::string& corpus_path, const std::string& out_path, std::size_t k,
                    std::int64_t min_count) {
    require_file(corpus_path, "corpus");
    const TaggedCorpus corpus = load_corpus(corpus_path);
    const ContextVectorMap cvs = build_context_vectors(corpus, k, min_count);
    write_context_vectors(out_path, cvs);
    std::cout << "build-cv: " << cvs.size() << " context vectors -> " << out_path << '\n';
}

void stage_train_embeddings(const std::string& corpus_path, const std::string& out_path,
                            const SkipgramParams& params) {
    require_file(corpus_path, "corpus");
    const TaggedCorpus corpus = load_corpus(corpus_path);
    const EmbeddingTable table = train_skipgram(corpus, params);
    save_embeddings(out_path, table);
    std::cout << "train-embeddings: " << table.size() << " words x " << table.dim() << " -> "
              << out_path << '\n';
}

void stage_build_domains(const std::string& corpus_path, const std::string& out_path) {
    require_file(corpus_path, "corpus");
    const TaggedCorpus corpus = load_corpus(corpus_path);
    const DomainModel model = build_domain_distributions(corpus);
    write_domains(out_path, model);
    std::cout << "build-domains: " << model.distributions.size() << " words over "
              << model.categories.size() << " categories -> " << out_path << '\n';
}

void stage_gen_candidates(const std::string& wordnet_path, const std::string& dict_path,
                          const std::string& corpus_path, const std::string& out_path,
                          std::int64_t min_word_freq, double pos_threshold) {
    require_file(wordnet_path, "wordnet");
    require_file(dict_path, "dictionary");
    require_file(corpus_path, "corpus");
    const WordnetIndex wn = load_wordnet(wordnet_path);
    const BilingualDictionary dict = load_dictionary(dict_path);
    const TaggedCorpus corpus = load_corpus(corpus_path);
    const std::vector<std::string> vocab = corpus.vocabulary(min_word_freq);
    const std::vector<CandidateLink> generated = generate_candidates(vocab, dict, wn);
    const PosProfile profile = build_pos_profile(corpus);
    const std::vector<CandidateLink> kept = prune_pos(generated, profile, pos_threshold);
    write_candidates_tsv(out_path, kept);
    std::cout << "gen-candidates: " << generated.size() << " generated, "
              << generated.size() - kept.size() << " pruned, " << kept.size() << " kept -> "
              << out_path << '\n';
}

void stage_featurize(const std::string& wordnet_path, const std::string& dict_path,
                     const std::string& candidates_path, const std::string& cv_target_path,
                     const std::string& cv_source_path, const std::string& embeddings_path,
                     const std::string& domains_path, const std::string& out_path,
                     PolysemyScope scope, bool strict_ties, int workers) {
    for (const auto& [p, what] :
         std::vector<std::pair<std::string, const char*>>{{wordnet_path, "wordnet"},
                                                          {dict_path, "dictionary"},
                                                          {candidates_path, "candidates"},
                                                          {cv_target_path, "target context vectors"},
                                                          {cv_source_path, "source context vectors"},
                                                          {embeddings_path, "embeddings"},
                                                          {domains_path, "domains"}})
        require_file(p, what);
    const WordnetIndex wn = load_wordnet(wordnet_path);
    const BilingualDictionary dict = load_dictionary(dict_path);
    const std::vector<CandidateLink> candidates = load_candidates(candidates_path, wn);
    const ContextVectorMap target_cvs = load_context_vectors(cv_target_path);
    const ContextVectorMap source_cvs = load_context_vectors(cv_source_path);
    const EmbeddingTable embeddings = load_embeddings(embeddings_path);
    const DomainModel domains = load_domains(domains_path);

    const FeatureInputs inputs{wn,      dict,    target_cvs, source_cvs, embeddings,
                               domains, scope,   strict_ties, workers};
    const std::vector<FeaturizedLink> rows = featurize(candidates, inputs);
    write_features_tsv(out_path, rows);
    std::cout << "featurize: " << rows.size() << " links -> " << out_path << '\n';
}

void stage_build_trainset(const std::string& features_path, const std::string& wordnet_path,
                          const std::string& seed_path, const std::string& test_path,
                          std::size_t negative_count, std::uint64_t rng_seed,
                          const std::string& out_path) {
    require_file(features_path, "feature matrix");
    require_file(wordnet_path, "wordnet");
    require_file(seed_path, "seed links");
    const WordnetIndex wn = load_wordnet(wordnet_path);
    const SeedLinks seed = load_seed_links(seed_path, wn);
    if (seed.dropped_unknown > 0)
        std::cout << "build-trainset: warning: dropped " << seed.dropped_unknown
                  << " seed links with unknown synset ids\n";
    std::set<LinkKey> test_keys;
    if (!test_path.empty()) {
        require_file(test_path, "test links");
        for (const auto& e : load_test_set(test_path).entries) test_keys.insert(e.key);
    }
    const std::vector<FeatureRow> featurized = load_features(features_path);
    const TrainSet ts = build_train_set(seed.links, featurized, negative_count, test_keys, rng_seed);
    write_train_set(out_path, ts);
    std::cout << "build-trainset: " << ts.provenance.seed_positives << " positives + "
              << ts.provenance.random_negatives << " negatives ("
              << ts.provenance.excluded_test_overlap << " excluded as test overlap) -> "
              << out_path << '\n';
}

void stage_train(const std::string& trainset_path, const std::string& classifier,
                 const std::string& out_path) {
    if (classifier != "nb")
        throw Error("only the 'nb' model has a file representation; "
                    "use `wnlink crossval --classifier knn` for the comparator");
    require_file(trainset_path, "train set");
    const TrainSet ts = load_train_set(trainset_path);
    const GaussianNBModel model = train_nb(ts);
    save_nb_model(out_path, model);
    std::cout << "train: nb model over " << ts.instances.size() << " instances -> " << out_path
              << '\n';
}

MetricsReport stage_crossval(const std::string& trainset_path, int folds, std::uint64_t seed,
                             const ClassifierSpec& spec, const std::string& out_path) {
    require_file(trainset_path, "train set");
    const TrainSet ts = load_train_set(trainset_path);
    const MetricsReport report = cross_validate(ts, folds, seed, spec);
    nlohmann::ordered_json j;
    j["classifier"] = spec.name();
    if (spec.type == ClassifierSpec::Type::Knn) j["knn_k"] = spec.knn_k;
    j["folds"] = folds;
    j["seed"] = seed;
    j["metrics"] = metrics_to_json(report);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        out << j.dump(2) << '\n';
    }
    std::cout << "crossval (" << spec.name() << "): correct precision "
              << format_double(report.correct.precision * 100, 2) << "%, recall "
              << format_double(report.correct.recall * 100, 2) << "%";
    if (!out_path.empty()) std::cout << " -> " << out_path;
    std::cout << '\n';
    return report;
}

void stage_rank_features(const std::string& trainset_path, int bins, const std::string& out_path,
                         bool incremental, int folds, std::uint64_t seed,
                         const ClassifierSpec& spec, const std::string& incremental_out) {
    require_file(trainset_path, "train set");
    const TrainSet ts = load_train_set(trainset_path);
    const std::vector<FeatureGain> ranking = information_gain(ts, bins);
    {
        auto out = open_output(out_path);
        for (const auto& fg : ranking)
            out << fg.name << '\t' << format_double(fg.gain, 6) << '\n';
    }
    std::cout << "rank-features: top feature '" << ranking.front().name << "' (IG "
              << format_double(ranking.front().gain, 4) << ") -> " << out_path << '\n';
    if (incremental) {
        const std::vector<IncrementalRow> rows =
            incremental_feature_eval(ts, ranking, folds, seed, spec);
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json r;
            r["feature_added"] = row.feature_added;
            r["features"] = row.feature_indices;
            r["correct_precision"] = row.metrics.correct.precision;
            r["correct_recall"] = row.metrics.correct.recall;
            r["correct_f1"] = row.metrics.correct.f1;
            j.push_back(std::move(r));
        }
        auto out = open_output(incremental_out);
        out << j.dump(2) << '\n';
        std::cout << "rank-features: incremental table (" << rows.size() << " rows) -> "
                  << incremental_out << '\n';
    }
}

void stage_induce(const std::string& model_path, const std::string& features_path,
                  const std::string& wordnet_path, const std::string& seed_path,
                  const std::string& out_path) {
    require_file(model_path, "model");
    require_file(features_path, "feature matrix");
    require_file(wordnet_path, "wordnet");
    require_file(seed_path, "seed links");
    const GaussianNBModel model = load_nb_model(model_path);
    const std::vector<FeatureRow> featurized = load_features(features_path);
    const WordnetIndex wn = load_wordnet(wordnet_path);
    const SeedLinks seed = load_seed_links(seed_path, wn);
    const std::vector<InducedLink> induced = induce_wordnet(model, featurized, seed.links);
    write_induced(out_path, induced);
    std::cout << "induce: " << induced.size() << " links -> " << out_path << '\n';
}

void stage_evaluate(const std::string& induced_path, const std::string& test_path,
                    const std::string& out_path) {
    require_file(induced_path, "induced wordnet");
    require_file(test_path, "test links");
    std::vector<LinkKey> keys;
    for (const auto& link : load_induced(induced_path)) keys.push_back(link.key);
    const TestSet test = load_test_set(test_path);
    const EvalReport report = evaluate(keys, test);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        out << eval_report_to_json(report).dump(2) << '\n';
    }
    std::cout << render_eval_report(report);
    if (!out_path.empty()) std::cout << "evaluate: report -> " << out_path << '\n';
}

void stage_stats(const std::string& induced_path, const std::string& wordnet_path,
                 const std::string& corpus_path, const std::string& core_path,
                 const std::string& out_path) {
    require_file(induced_path, "induced wordnet");
    require_file(wordnet_path, "wordnet");
    require_file(corpus_path, "corpus");
    std::vector<LinkKey> keys;
    for (const auto& link : load_induced(induced_path)) keys.push_back(link.key);
    const WordnetStats stats = wordnet_stats(keys);

    const WordnetIndex wn = load_wordnet(wordnet_path);
    const TaggedCorpus corpus = load_corpus(corpus_path);
    const auto vocab_list = corpus.vocabulary(1);
    const std::set<std::string> vocab(vocab_list.begin(), vocab_list.end());
    std::set<std::string> core;
    if (!core_path.empty()) {
        require_file(core_path, "core synset list");
        core = load_core_synsets(core_path);
    }
    const CoverageReport cov = coverage(keys, vocab, wn, core);

    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["size"] = stats_to_json(stats);
        j["coverage"] = coverage_to_json(cov);
        auto out = open_output(out_path);
        out << j.dump(2) << '\n';
    }
    std::cout << render_stats(stats) << render_coverage(cov);
    if (!out_path.empty()) std::cout << "stats: report -> " << out_path << '\n';
}

void run_pipeline(const IniConfig& cfg, const StageParams& p) {
    const std::string workdir = cfg.has("workdir") ? cfg.get_path("workdir") : "work";
    fs::create_directories(workdir);
    auto wpath = [&](const char* name) { return (fs::path(workdir) / name).string(); };

    stage_build_cv(cfg.get_path("corpus_target"), wpath("cv_target.tsv"), p.cv_k, p.cv_min_count);
    stage_build_cv(cfg.get_path("corpus_source"), wpath("cv_source.tsv"), p.cv_k, p.cv_min_count);
    stage_train_embeddings(cfg.get_path("corpus_target"), wpath("embeddings.txt"), p.embedding);
    stage_build_domains(cfg.get_path("corpus_target"), wpath("domains.tsv"));
    stage_gen_candidates(cfg.get_path("wordnet"), cfg.get_path("dictionary"),
                         cfg.get_path("corpus_target"), wpath("candidates.tsv"), p.min_word_freq,
                         p.pos_threshold);
    stage_featurize(cfg.get_path("wordnet"), cfg.get_path("dictionary"), wpath("candidates.tsv"),
                    wpath("cv_target.tsv"), wpath("cv_source.tsv"), wpath("embeddings.txt"),
                    wpath("domains.tsv"), wpath("features.tsv"), parse_scope(p.polysemy_scope),
                    parse_ties(p.importance_ties), p.workers);
    stage_build_trainset(wpath("features.tsv"), cfg.get_path("wordnet"),
                         cfg.get_path("seed_links"),
                         cfg.has("test_links") ? cfg.get_path("test_links") : std::string(),
                         p.negative_count, p.trainset_seed, wpath("trainset.tsv"));
    stage_train(wpath("trainset.tsv"), "nb", wpath("model.json"));
    const ClassifierSpec spec = ClassifierSpec::parse(p.classifier, p.knn_k);
    stage_crossval(wpath("trainset.tsv"), p.folds, p.crossval_seed, spec, wpath("crossval.json"));
    stage_rank_features(wpath("trainset.tsv"), p.ig_bins, wpath("ranking.tsv"), true, p.folds,
                        p.crossval_seed, spec, wpath("incremental.json"));
    stage_induce(wpath("model.json"), wpath("features.tsv"), cfg.get_path("wordnet"),
                 cfg.get_path("seed_links"), wpath("induced.tsv"));
    if (cfg.has("test_links"))
        stage_evaluate(wpath("induced.tsv"), cfg.get_path("test_links"), wpath("eval.json"));
    stage_stats(wpath("induced.tsv"), cfg.get_path("wordnet"), cfg.get_path("corpus_target"),
                cfg.has("core_synsets") ? cfg.get_path("core_synsets") : std::string(),
                wpath("stats.json"));
    std::cout << "pipeline: done, artifacts in " << workdir << '\n';
}

StageParams resolve_stage_params(const CLI::App* cmd, const ConfigHolder& holder,
                                 const StageParams& cli) {
    StageParams p = cli;
    p.cv_k = resolve(cmd, "--cv-k", cli.cv_k, holder, "cv_k");
    p.cv_min_count = resolve(cmd, "--cv-min-count", cli.cv_min_count, holder, "cv_min_count");
    p.embedding.dim = resolve(cmd, "--dim", cli.embedding.dim, holder, "embedding_dim");
    p.embedding.window = resolve(cmd, "--window", cli.embedding.window, holder, "embedding_window");
    p.embedding.negatives =
        resolve(cmd, "--negatives", cli.embedding.negatives, holder, "embedding_negatives");
    p.embedding.epochs = resolve(cmd, "--epochs", cli.embedding.epochs, holder, "embedding_epochs");
    p.embedding.min_count = resolve(cmd, "--emb-min-count", cli.embedding.min_count, holder,
                                    "embedding_min_count");
    p.embedding.seed = resolve(cmd, "--emb-seed", cli.embedding.seed, holder, "embedding_seed");
    p.min_word_freq = resolve(cmd, "--min-word-freq", cli.min_word_freq, holder, "min_word_freq");
    p.pos_threshold = resolve(cmd, "--pos-threshold", cli.pos_threshold, holder, "pos_threshold");
    p.polysemy_scope =
        resolve(cmd, "--polysemy-scope", cli.polysemy_scope, holder, "polysemy_scope");
    p.importance_ties =
        resolve(cmd, "--importance-ties", cli.importance_ties, holder, "importance_ties");
    p.negative_count =
        resolve(cmd, "--negative-count", cli.negative_count, holder, "negative_count");
    p.trainset_seed = resolve(cmd, "--trainset-seed", cli.trainset_seed, holder, "trainset_seed");
    p.folds = resolve(cmd, "--folds", cli.folds, holder, "folds");
    p.crossval_seed = resolve(cmd, "--cv-seed", cli.crossval_seed, holder, "crossval_seed");
    p.classifier = resolve(cmd, "--classifier", cli.classifier, holder, "classifier");
    p.knn_k = resolve(cmd, "--knn-k", cli.knn_k, holder, "knn_k");
    p.ig_bins = resolve(cmd, "--bins", cli.ig_bins, holder, "ig_bins");
    p.workers = resolve(cmd, "--workers", cli.workers, holder, "workers");
    p.embedding.workers = p.workers;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wnlink: induce a target-language wordnet from a bilingual dictionary, "
                 "a reference wordnet and POS-tagged corpora"};
    app.require_subcommand(1);
    const std::string version = std::string(kVersion) + " (model format " +
                                std::to_string(kModelFormatVersion) + ", world format " +
                                std::to_string(kWorldFormatVersion) + ")";
    app.set_version_flag("--version", version);

    // shared option state; each subcommand registers only what it uses
    auto holder = std::make_shared<ConfigHolder>();
    auto params = std::make_shared<StageParams>();
    auto paths = std::make_shared<std::map<std::string, std::string>>();
    auto spec = std::make_shared<WorldSpec>();

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", holder->path, "flat key = value configuration file");
    };
    auto path_opt = [&](CLI::App* cmd, const char* flag, const char* help) {
        return cmd->add_option(flag, (*paths)[flag], help);
    };

    // --- synth --------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("synth", "generate a synthetic bilingual world");
        path_opt(cmd, "--out", "output directory")->required();
        cmd->add_option("--seed", spec->seed, "world rng seed");
        cmd->add_option("--synsets", spec->synsets, "number of synsets");
        cmd->add_option("--target-words", spec->target_words, "target-language word budget");
        cmd->add_option("--source-words", spec->source_words, "reference-language word budget");
        cmd->add_option("--documents", spec->documents, "corpus documents");
        cmd->add_option("--categories", spec->categories, "document categories");
        cmd->add_option("--sentences-per-doc", spec->sentences_per_doc, "sentences per document");
        cmd->add_option("--gloss-length", spec->gloss_length, "tokens per gloss");
        cmd->add_option("--ambiguity", spec->ambiguity, "source-word reuse rate");
        cmd->add_option("--misleading", spec->misleading, "wrong dictionary row rate");
        cmd->add_option("--gloss-noise", spec->gloss_noise, "off-topic gloss token rate");
        cmd->add_option("--target-polysemy", spec->target_polysemy, "target-word reuse rate");
        cmd->add_option("--seed-fraction", spec->seed_fraction, "share of true links seeded");
        cmd->add_option("--test-fraction", spec->test_fraction, "share of candidates held out");
        cmd->callback([=]() {
            const GeneratedWorld world = generate_world(*spec, (*paths)["--out"]);
            std::cout << "synth: " << world.candidate_count << " candidates ("
                      << world.correct_count << " correct, " << world.incorrect_count
                      << " incorrect), " << world.seed_links.size() << " seed, "
                      << world.test_links.size() << " test -> " << world.dir << '\n';
        });
    }

    // --- build-cv -----------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("build-cv", "build context vectors from a corpus");
        add_config(cmd);
        path_opt(cmd, "--corpus", "vertical-format corpus");
        path_opt(cmd, "--out", "output context-vector TSV")->required();
        cmd->add_option("--cv-k", params->cv_k, "context vector size");
        cmd->add_option("--cv-min-count", params->cv_min_count, "minimum word frequency");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_build_cv(
                resolve_path(cmd, "--corpus", (*paths)["--corpus"], *holder, "corpus_target", true),
                (*paths)["--out"], p.cv_k, p.cv_min_count);
        });
    }

    // --- train-embeddings -----------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("train-embeddings",
                                           "train skip-gram embeddings on a corpus");
        add_config(cmd);
        path_opt(cmd, "--corpus", "vertical-format corpus");
        path_opt(cmd, "--out", "output embedding text file")->required();
        cmd->add_option("--dim", params->embedding.dim, "embedding dimension");
        cmd->add_option("--window", params->embedding.window, "context window");
        cmd->add_option("--negatives", params->embedding.negatives, "negative samples");
        cmd->add_option("--epochs", params->embedding.epochs, "training epochs");
        cmd->add_option("--emb-min-count", params->embedding.min_count, "vocabulary cutoff");
        cmd->add_option("--emb-seed", params->embedding.seed, "training rng seed");
        cmd->add_option("--workers", params->workers, "training threads (1 = deterministic)");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_train_embeddings(
                resolve_path(cmd, "--corpus", (*paths)["--corpus"], *holder, "corpus_target", true),
                (*paths)["--out"], p.embedding);
        });
    }

    // --- build-domains --------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("build-domains",
                                           "build domain distributions from a labeled corpus");
        add_config(cmd);
        path_opt(cmd, "--corpus", "vertical-format corpus with #DOC categories");
        path_opt(cmd, "--out", "output domain TSV")->required();
        cmd->callback([=]() {
            holder->load_if_needed();
            stage_build_domains(
                resolve_path(cmd, "--corpus", (*paths)["--corpus"], *holder, "corpus_target", true),
                (*paths)["--out"]);
        });
    }

    // --- gen-candidates ---------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand(
            "gen-candidates", "generate dictionary-induced candidate links and prune by POS");
        add_config(cmd);
        path_opt(cmd, "--wordnet", "reference wordnet JSONL");
        path_opt(cmd, "--dictionary", "bilingual dictionary TSV");
        path_opt(cmd, "--corpus", "target-language corpus (vocabulary and POS profile)");
        path_opt(cmd, "--out", "output candidate TSV")->required();
        cmd->add_option("--min-word-freq", params->min_word_freq, "vocabulary frequency cutoff");
        cmd->add_option("--pos-threshold", params->pos_threshold,
                        "minimum observed POS probability");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_gen_candidates(
                resolve_path(cmd, "--wordnet", (*paths)["--wordnet"], *holder, "wordnet", true),
                resolve_path(cmd, "--dictionary", (*paths)["--dictionary"], *holder, "dictionary",
                             true),
                resolve_path(cmd, "--corpus", (*paths)["--corpus"], *holder, "corpus_target", true),
                (*paths)["--out"], p.min_word_freq, p.pos_threshold);
        });
    }

    // --- featurize -------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("featurize", "compute the seven features per link");
        add_config(cmd);
        path_opt(cmd, "--wordnet", "reference wordnet JSONL");
        path_opt(cmd, "--dictionary", "bilingual dictionary TSV");
        path_opt(cmd, "--candidates", "candidate TSV")->required();
        path_opt(cmd, "--cv-target", "target-language context vectors")->required();
        path_opt(cmd, "--cv-source", "reference-language context vectors")->required();
        path_opt(cmd, "--embeddings", "target-language embeddings")->required();
        path_opt(cmd, "--domains", "target-language domain distributions")->required();
        path_opt(cmd, "--out", "output feature TSV")->required();
        cmd->add_option("--polysemy-scope", params->polysemy_scope,
                        "count polysemy per 'pos' or over 'all'");
        cmd->add_option("--importance-ties", params->importance_ties,
                        "'shared' or 'strict' maxima in the importance feature");
        cmd->add_option("--workers", params->workers, "worker threads");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_featurize(
                resolve_path(cmd, "--wordnet", (*paths)["--wordnet"], *holder, "wordnet", true),
                resolve_path(cmd, "--dictionary", (*paths)["--dictionary"], *holder, "dictionary",
                             true),
                (*paths)["--candidates"], (*paths)["--cv-target"], (*paths)["--cv-source"],
                (*paths)["--embeddings"], (*paths)["--domains"], (*paths)["--out"],
                parse_scope(p.polysemy_scope), parse_ties(p.importance_ties), p.workers);
        });
    }

    // --- build-trainset -----------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand(
            "build-trainset", "assemble seed positives and sampled negatives into a train set");
        add_config(cmd);
        path_opt(cmd, "--features", "feature TSV")->required();
        path_opt(cmd, "--wordnet", "reference wordnet JSONL");
        path_opt(cmd, "--seed-links", "seed link TSV");
        path_opt(cmd, "--test-links", "held-out test link TSV (keys excluded from training)");
        path_opt(cmd, "--out", "output train-set TSV")->required();
        cmd->add_option("--negative-count", params->negative_count, "random negatives to sample");
        cmd->add_option("--trainset-seed", params->trainset_seed, "sampling rng seed");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_build_trainset(
                (*paths)["--features"],
                resolve_path(cmd, "--wordnet", (*paths)["--wordnet"], *holder, "wordnet", true),
                resolve_path(cmd, "--seed-links", (*paths)["--seed-links"], *holder, "seed_links",
                             true),
                resolve_path(cmd, "--test-links", (*paths)["--test-links"], *holder, "test_links",
                             false),
                p.negative_count, p.trainset_seed, (*paths)["--out"]);
        });
    }

    // --- train ----------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("train", "train the naive Bayes model");
        add_config(cmd);
        path_opt(cmd, "--trainset", "train-set TSV")->required();
        path_opt(cmd, "--out", "output model JSON")->required();
        cmd->add_option("--classifier", params->classifier, "classifier (only nb has a model file)");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_train((*paths)["--trainset"], p.classifier, (*paths)["--out"]);
        });
    }

    // --- crossval ----------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("crossval", "stratified k-fold cross-validation");
        add_config(cmd);
        path_opt(cmd, "--trainset", "train-set TSV")->required();
        path_opt(cmd, "--out", "output report JSON");
        cmd->add_option("--folds", params->folds, "number of folds");
        cmd->add_option("--cv-seed", params->crossval_seed, "fold shuffling seed");
        cmd->add_option("--classifier", params->classifier, "nb or knn");
        cmd->add_option("--knn-k", params->knn_k, "neighbours for knn");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            stage_crossval((*paths)["--trainset"], p.folds, p.crossval_seed,
                           ClassifierSpec::parse(p.classifier, p.knn_k), (*paths)["--out"]);
        });
    }

    // --- rank-features ---------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand(
            "rank-features", "rank features by information gain, optionally with ablation rows");
        add_config(cmd);
        path_opt(cmd, "--trainset", "train-set TSV")->required();
        path_opt(cmd, "--out", "output ranking TSV")->required();
        path_opt(cmd, "--incremental-out", "output JSON for the incremental table");
        cmd->add_flag("--incremental", "also evaluate growing feature prefixes");
        cmd->add_option("--bins", params->ig_bins, "equal-frequency bins");
        cmd->add_option("--folds", params->folds, "folds for the incremental table");
        cmd->add_option("--cv-seed", params->crossval_seed, "fold shuffling seed");
        cmd->add_option("--classifier", params->classifier, "nb or knn");
        cmd->add_option("--knn-k", params->knn_k, "neighbours for knn");
        cmd->callback([=]() {
            holder->load_if_needed();
            const StageParams p = resolve_stage_params(cmd, *holder, *params);
            const bool incremental = cmd->count("--incremental") > 0;
            std::string inc_out = (*paths)["--incremental-out"];
            if (incremental && inc_out.empty())
                throw Error("--incremental requires --incremental-out");
            stage_rank_features((*paths)["--trainset"], p.ig_bins, (*paths)["--out"], incremental,
                                p.folds, p.crossval_seed,
                                ClassifierSpec::parse(p.classifier, p.knn_k), inc_out);
        });
    }

    // --- induce -----------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand(
            "induce", "classify candidates and emit the induced wordnet (seed links excluded)");
        add_config(cmd);
        path_opt(cmd, "--model", "naive Bayes model JSON")->required();
        path_opt(cmd, "--features", "feature TSV")->required();
        path_opt(cmd, "--wordnet", "reference wordnet JSONL");
        path_opt(cmd, "--seed-links", "seed link TSV");
        path_opt(cmd, "--out", "output induced wordnet TSV")->required();
        cmd->callback([=]() {
            holder->load_if_needed();
            stage_induce(
                (*paths)["--model"], (*paths)["--features"],
                resolve_path(cmd, "--wordnet", (*paths)["--wordnet"], *holder, "wordnet", true),
                resolve_path(cmd, "--seed-links", (*paths)["--seed-links"], *holder, "seed_links",
                             true),
                (*paths)["--out"]);
        });
    }

    // --- evaluate ----------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("evaluate",
                                           "score an induced wordnet against judged test links");
        add_config(cmd);
        path_opt(cmd, "--induced", "induced wordnet TSV")->required();
        path_opt(cmd, "--test-links", "judged test link TSV");
        path_opt(cmd, "--out", "output report JSON");
        cmd->callback([=]() {
            holder->load_if_needed();
            stage_evaluate((*paths)["--induced"],
                           resolve_path(cmd, "--test-links", (*paths)["--test-links"], *holder,
                                        "test_links", true),
                           (*paths)["--out"]);
        });
    }

    // --- stats ------------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("stats",
                                           "size, polysemy and coverage statistics of a wordnet");
        add_config(cmd);
        path_opt(cmd, "--induced", "induced wordnet TSV")->required();
        path_opt(cmd, "--wordnet", "reference wordnet JSONL");
        path_opt(cmd, "--corpus", "corpus for vocabulary coverage");
        path_opt(cmd, "--core-synsets", "core synset id list");
        path_opt(cmd, "--out", "output report JSON");
        cmd->callback([=]() {
            holder->load_if_needed();
            stage_stats(
                (*paths)["--induced"],
                resolve_path(cmd, "--wordnet", (*paths)["--wordnet"], *holder, "wordnet", true),
                resolve_path(cmd, "--corpus", (*paths)["--corpus"], *holder, "corpus_target", true),
                resolve_path(cmd, "--core-synsets", (*paths)["--core-synsets"], *holder,
                             "core_synsets", false),
                (*paths)["--out"]);
        });
    }

    // --- pipeline ----------------------------------------------------------------
    {
        CLI::App* cmd = app.add_subcommand("pipeline", "run every stage in order from a config");
        cmd->add_option("--config", holder->path, "pipeline configuration file")->required();
        auto overrides = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--set", *overrides, "override a config key, e.g. --set workers=4");
        cmd->callback([=]() {
            holder->load_if_needed();
            IniConfig cfg = *holder->config;
            for (const auto& kv : *overrides) {
                const std::size_t eq = kv.find('=');
                if (eq == std::string::npos) throw Error("--set expects key=value, got '" + kv + "'");
                cfg.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
            }
            ConfigHolder resolved;
            resolved.config = cfg;
            run_pipeline(cfg, resolve_stage_params(nullptr, resolved, StageParams{}));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
