#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnlink/corpus.hpp"
#include "wnlink/error.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

/// Per-lemma probability distributions over document categories. All
/// distributions share the `categories` ordering.
struct DomainModel {
    std::vector<std::string> categories;  // sorted
    std::unordered_map<std::string, std::vector<double>> distributions;

    const std::vector<double>* find(const std::string& lemma) const {
        auto it = distributions.find(lemma);
        return it == distributions.end() ? nullptr : &it->second;
    }
};

inline DomainModel build_domain_distributions(const TaggedCorpus& corpus) {
    DomainModel model;
    model.categories = corpus.categories();
    std::unordered_map<std::string, std::size_t> cat_index;
    for (std::size_t i = 0; i < model.categories.size(); ++i)
        cat_index.emplace(model.categories[i], i);

    std::unordered_map<std::string, std::vector<std::int64_t>> counts;
    for (const auto& d : corpus.documents) {
        if (!d.category) continue;
        std::size_t ci = cat_index.at(*d.category);
        for (const auto& s : d.sentences) {
            for (const auto& t : s) {
                auto& row = counts[t.lemma];
                if (row.empty()) row.assign(model.categories.size(), 0);
                ++row[ci];
            }
        }
    }
    for (auto& [lemma, row] : counts) {
        double total = 0;
        for (auto c : row) total += static_cast<double>(c);
        std::vector<double> p(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) p[i] = static_cast<double>(row[i]) / total;
        model.distributions.emplace(lemma, std::move(p));
    }
    return model;
}

/// Jensen-Shannon divergence in base-2 logs, so the value lies in [0, 1].
/// Zero cells contribute nothing (0 log 0 = 0).
inline double js_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw Error("js_divergence: length mismatch");
    double dp = 0, dq = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0) dp += p[i] * std::log2(p[i] / m);
        if (q[i] > 0) dq += q[i] * std::log2(q[i] / m);
    }
    double js = 0.5 * (dp + dq);
    if (js < 0) js = 0;
    if (js > 1) js = 1;
    return js;
}

// 1 - sqrt(JS); the square root of JS is a metric, so this stays in [0, 1].
inline double distribution_similarity(std::span<const double> p, std::span<const double> q) {
    return 1.0 - std::sqrt(js_divergence(p, q));
}

// TSV: "#categories<TAB>c1,c2,..." header, then lemma rows with one
// probability column per category.
inline void write_domains(const std::string& path, const DomainModel& model) {
    auto out = open_output(path);
    out << "#categories\t";
    for (std::size_t i = 0; i < model.categories.size(); ++i) {
        if (i) out << ',';
        out << model.categories[i];
    }
    out << '\n';
    std::vector<std::string> lemmas;
    lemmas.reserve(model.distributions.size());
    for (const auto& [lemma, p] : model.distributions) lemmas.push_back(lemma);
    std::sort(lemmas.begin(), lemmas.end());
    for (const auto& lemma : lemmas) {
        out << lemma;
        for (double x : model.distributions.at(lemma)) out << '\t' << format_double(x, 9);
        out << '\n';
    }
}

inline DomainModel load_domains(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path, 1, "missing #categories header");
    strip_cr(line);
    auto header = split(line, '\t');
    if (header.size() != 2 || header[0] != "#categories")
        throw IoError(path, 1, "expected '#categories<TAB>c1,c2,...'");
    DomainModel model;
    model.categories = split(header[1], ',');
    if (model.categories.size() == 1 && model.categories[0].empty()) model.categories.clear();

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != model.categories.size() + 1)
            throw IoError(path, lineno, "wrong number of probability columns");
        std::vector<double> p(model.categories.size());
        double sum = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            char* end = nullptr;
            p[i] = std::strtod(cols[i + 1].c_str(), &end);
            if (end == cols[i + 1].c_str() || *end != '\0' || !std::isfinite(p[i]) || p[i] < 0)
                throw IoError(path, lineno, "bad probability '" + cols[i + 1] + "'");
            sum += p[i];
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw IoError(path, lineno, "probabilities sum to " + std::to_string(sum));
        for (auto& x : p) x /= sum;  // undo the text-format rounding
        if (!model.distributions.emplace(cols[0], std::move(p)).second)
            throw IoError(path, lineno, "duplicate lemma " + cols[0]);
    }
    return model;
}

}  // namespace wnlink
