#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "wnlink/corpus.hpp"
#include "wnlink/error.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    void insert(const std::string& lemma, std::vector<float> v) {
        if (v.size() != dim_) throw Error("embedding for " + lemma + " has wrong dimension");
        vectors_[lemma] = std::move(v);
    }

    const std::vector<float>* find(const std::string& lemma) const {
        auto it = vectors_.find(lemma);
        return it == vectors_.end() ? nullptr : &it->second;
    }

    const std::unordered_map<std::string, std::vector<float>>& vectors() const { return vectors_; }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::vector<float>> vectors_;
};

inline double cosine(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<double>(u[i]) * v[i];
        nu += static_cast<double>(u[i]) * u[i];
        nv += static_cast<double>(v[i]) * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

struct SkipgramParams {
    int dim = 300;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    std::int64_t min_count = 5;
    std::uint64_t seed = 1;
    int workers = 1;
    double learning_rate = 0.025;
};

namespace detail {

inline double sigmoid(double x) {
    if (x > 30.0) x = 30.0;
    if (x < -30.0) x = -30.0;
    return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace detail

/// Skip-gram with negative sampling. With workers == 1 the result is a pure
/// function of corpus, parameters and seed; with more workers the updates
/// race (hogwild) and no determinism is promised. Pass `epoch_loss` to
/// receive the mean per-pair loss of each epoch.
inline EmbeddingTable train_skipgram(const TaggedCorpus& corpus, const SkipgramParams& params,
                                     std::vector<double>* epoch_loss = nullptr) {
    if (params.dim <= 0 || params.window <= 0 || params.epochs <= 0 || params.negatives < 0)
        throw Error("train_skipgram: dim, window and epochs must be positive");

    // Vocabulary ordered by (frequency desc, lemma asc); ids follow that order.
    std::vector<std::pair<std::string, std::int64_t>> vocab;
    for (const auto& [lemma, n] : corpus.lemma_frequencies())
        if (n >= params.min_count) vocab.emplace_back(lemma, n);
    if (vocab.empty()) throw Error("train_skipgram: no word reaches min_count");
    std::sort(vocab.begin(), vocab.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::unordered_map<std::string, int> word_id;
    word_id.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) word_id.emplace(vocab[i].first, static_cast<int>(i));

    std::vector<std::vector<int>> sentences;
    std::int64_t total_tokens = 0;
    for (const auto& d : corpus.documents) {
        for (const auto& s : d.sentences) {
            std::vector<int> ids;
            ids.reserve(s.size());
            for (const auto& t : s) {
                auto it = word_id.find(t.lemma);
                if (it != word_id.end()) ids.push_back(it->second);
            }
            if (ids.size() >= 2) {
                total_tokens += static_cast<std::int64_t>(ids.size());
                sentences.push_back(std::move(ids));
            }
        }
    }

    // Unigram table with the usual 3/4 power for negative sampling.
    const std::size_t table_size = 1u << 20;
    std::vector<int> unigram(table_size);
    {
        double total_pow = 0;
        for (const auto& [w, n] : vocab) total_pow += std::pow(static_cast<double>(n), 0.75);
        std::size_t idx = 0;
        double acc = std::pow(static_cast<double>(vocab[0].second), 0.75) / total_pow;
        for (std::size_t i = 0; i < table_size; ++i) {
            unigram[i] = static_cast<int>(idx);
            if (static_cast<double>(i) / table_size > acc && idx + 1 < vocab.size()) {
                ++idx;
                acc += std::pow(static_cast<double>(vocab[idx].second), 0.75) / total_pow;
            }
        }
    }

    const std::size_t n_words = vocab.size();
    const std::size_t dim = static_cast<std::size_t>(params.dim);
    std::vector<float> syn0(n_words * dim);
    std::vector<float> syn1(n_words * dim, 0.0f);
    {
        Rng init_rng(params.seed);
        for (auto& x : syn0)
            x = static_cast<float>((uniform_real01(init_rng) - 0.5) / params.dim);
    }

    const double lr0 = params.learning_rate;
    const std::int64_t schedule_total = total_tokens * params.epochs + 1;
    std::atomic<std::int64_t> tokens_done{0};

    auto train_shard = [&](std::size_t shard, std::size_t n_shards, std::uint64_t rng_seed,
                           double* loss_out, std::int64_t* pairs_out) {
        Rng rng(rng_seed);
        std::vector<float> grad(dim);
        double loss = 0;
        std::int64_t pairs = 0;
        std::int64_t local_done = 0;
        for (std::size_t si = shard; si < sentences.size(); si += n_shards) {
            const auto& sent = sentences[si];
            for (std::size_t pos = 0; pos < sent.size(); ++pos) {
                const std::int64_t done = tokens_done.fetch_add(1, std::memory_order_relaxed);
                double lr = lr0 * (1.0 - static_cast<double>(done) / schedule_total);
                if (lr < lr0 * 1e-4) lr = lr0 * 1e-4;
                const int center = sent[pos];
                const std::size_t b = 1 + uniform_index(rng, static_cast<std::uint64_t>(params.window));
                const std::size_t lo = pos >= b ? pos - b : 0;
                const std::size_t hi = std::min(sent.size() - 1, pos + b);
                for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
                    if (cpos == pos) continue;
                    const int context = sent[cpos];
                    std::fill(grad.begin(), grad.end(), 0.0f);
                    float* in = &syn0[static_cast<std::size_t>(center) * dim];
                    for (int k = 0; k <= params.negatives; ++k) {
                        int target;
                        double label;
                        if (k == 0) {
                            target = context;
                            label = 1.0;
                        } else {
                            target = unigram[uniform_index(rng, table_size)];
                            for (int tries = 0; target == context && tries < 100; ++tries)
                                target = unigram[uniform_index(rng, table_size)];
                            if (target == context) continue;
                            label = 0.0;
                        }
                        float* out = &syn1[static_cast<std::size_t>(target) * dim];
                        double dot = 0;
                        for (std::size_t i = 0; i < dim; ++i) dot += static_cast<double>(in[i]) * out[i];
                        const double p = detail::sigmoid(dot);
                        loss += label > 0.5 ? -std::log(std::max(p, 1e-12))
                                            : -std::log(std::max(1.0 - p, 1e-12));
                        const float g = static_cast<float>((label - p) * lr);
                        for (std::size_t i = 0; i < dim; ++i) {
                            grad[i] += g * out[i];
                            out[i] += g * in[i];
                        }
                    }
                    for (std::size_t i = 0; i < dim; ++i) in[i] += grad[i];
                    ++pairs;
                }
                ++local_done;
            }
        }
        (void)local_done;
        *loss_out = loss;
        *pairs_out = pairs;
    };

    if (epoch_loss) epoch_loss->clear();
    const std::size_t n_shards = params.workers > 1 ? static_cast<std::size_t>(params.workers) : 1;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        std::vector<double> losses(n_shards, 0.0);
        std::vector<std::int64_t> pair_counts(n_shards, 0);
        if (n_shards == 1) {
            train_shard(0, 1, params.seed + 1 + static_cast<std::uint64_t>(epoch),
                        &losses[0], &pair_counts[0]);
        } else {
            std::vector<std::thread> threads;
            for (std::size_t w = 0; w < n_shards; ++w)
                threads.emplace_back(train_shard, w, n_shards,
                                     params.seed + 1 + static_cast<std::uint64_t>(epoch) * 7919 + w,
                                     &losses[w], &pair_counts[w]);
            for (auto& t : threads) t.join();
        }
        if (epoch_loss) {
            double loss = 0;
            std::int64_t pairs = 0;
            for (std::size_t w = 0; w < n_shards; ++w) {
                loss += losses[w];
                pairs += pair_counts[w];
            }
            epoch_loss->push_back(pairs > 0 ? loss / static_cast<double>(pairs) : 0.0);
        }
    }

    EmbeddingTable table(dim);
    for (std::size_t i = 0; i < n_words; ++i) {
        std::vector<float> v(syn0.begin() + static_cast<std::ptrdiff_t>(i * dim),
                             syn0.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
        table.insert(vocab[i].first, std::move(v));
    }
    return table;
}

// Text format: "<count> <dim>" header, then "<word> <v1> ... <vd>" per line.
inline void save_embeddings(const std::string& path, const EmbeddingTable& table) {
    std::vector<std::string> lemmas;
    lemmas.reserve(table.size());
    for (const auto& [lemma, v] : table.vectors()) lemmas.push_back(lemma);
    std::sort(lemmas.begin(), lemmas.end());
    auto out = open_output(path);
    out << table.size() << ' ' << table.dim() << '\n';
    for (const auto& lemma : lemmas) {
        out << lemma;
        for (float x : *table.find(lemma)) out << ' ' << format_double(x, 6);
        out << '\n';
    }
}

inline EmbeddingTable load_embeddings(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path, 1, "missing header");
    strip_cr(line);
    auto header = split(line, ' ');
    std::size_t count = 0, dim = 0;
    try {
        if (header.size() != 2) throw std::invalid_argument("");
        count = std::stoul(header[0]);
        dim = std::stoul(header[1]);
    } catch (const std::exception&) {
        throw IoError(path, 1, "header must be '<count> <dim>'");
    }
    if (dim == 0) throw IoError(path, 1, "dimension must be positive");

    EmbeddingTable table(dim);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, ' ');
        if (cols.size() != dim + 1)
            throw IoError(path, lineno, "expected " + std::to_string(dim + 1) + " columns, got " +
                                            std::to_string(cols.size()));
        std::vector<float> v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            char* end = nullptr;
            double x = std::strtod(cols[i + 1].c_str(), &end);
            if (end == cols[i + 1].c_str() || *end != '\0' || !std::isfinite(x))
                throw IoError(path, lineno, "bad vector component '" + cols[i + 1] + "'");
            v[i] = static_cast<float>(x);
        }
        if (table.find(cols[0])) throw IoError(path, lineno, "duplicate word " + cols[0]);
        table.insert(cols[0], std::move(v));
    }
    if (table.size() != count)
        throw IoError(path, "header declares " + std::to_string(count) + " words but file has " +
                                std::to_string(table.size()));
    return table;
}

}  // namespace wnlink
