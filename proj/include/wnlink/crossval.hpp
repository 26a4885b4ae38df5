#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wnlink/error.hpp"
#include "wnlink/knn.hpp"
#include "wnlink/nb.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/trainset.hpp"

namespace wnlink {

struct ClassifierSpec {
    enum class Type { NaiveBayes, Knn };
    Type type = Type::NaiveBayes;
    int knn_k = 10;

    static ClassifierSpec parse(const std::string& name, int knn_k = 10) {
        ClassifierSpec spec;
        spec.knn_k = knn_k;
        if (name == "nb" || name == "naive-bayes") spec.type = Type::NaiveBayes;
        else if (name == "knn") spec.type = Type::Knn;
        else throw Error("unknown classifier '" + name + "' (expected nb or knn)");
        return spec;
    }

    std::string name() const { return type == Type::NaiveBayes ? "nb" : "knn"; }
};

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t support = 0;
};

struct MetricsReport {
    ClassMetrics correct;
    ClassMetrics incorrect;
    // support-weighted averages over the two classes
    double overall_precision = 0;
    double overall_recall = 0;
    double overall_f1 = 0;
    // confusion counts oriented to the correct class
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::vector<std::size_t> fold_sizes;
};

namespace detail {

inline ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn,
                                  std::size_t support) {
    ClassMetrics m;
    m.support = support;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

inline MetricsReport report_from_confusion(std::size_t tp, std::size_t fp, std::size_t fn,
                                           std::size_t tn) {
    MetricsReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.tn = tn;
    r.correct = class_metrics(tp, fp, fn, tp + fn);
    r.incorrect = class_metrics(tn, fn, fp, tn + fp);
    const double total = static_cast<double>(tp + fp + fn + tn);
    if (total > 0) {
        const double wc = static_cast<double>(r.correct.support) / total;
        const double wi = static_cast<double>(r.incorrect.support) / total;
        r.overall_precision = wc * r.correct.precision + wi * r.incorrect.precision;
        r.overall_recall = wc * r.correct.recall + wi * r.incorrect.recall;
        r.overall_f1 = wc * r.correct.f1 + wi * r.incorrect.f1;
    }
    return r;
}

}  // namespace detail

/// Stratified fold assignment: within each class, fold sizes differ by at
/// most one, and each class starts handing out its remainder where the
/// previous class stopped, keeping total fold sizes within one as well.
inline std::vector<int> stratified_folds(const std::vector<Label>& labels, int folds,
                                         std::uint64_t seed) {
    if (folds < 2) throw Error("cross-validation needs at least 2 folds");
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    for (const auto& members : by_class)
        if (members.size() < static_cast<std::size_t>(folds))
            throw Error("a class has " + std::to_string(members.size()) +
                        " instances, fewer than " + std::to_string(folds) + " folds");

    Rng rng(seed);
    std::vector<int> assignment(labels.size(), 0);
    std::size_t remainder_offset = 0;
    for (auto& members : by_class) {
        shuffle_vec(members, rng);
        const std::size_t quota = members.size() / static_cast<std::size_t>(folds);
        const std::size_t extra = members.size() % static_cast<std::size_t>(folds);
        std::size_t next = 0;
        for (std::size_t f = 0; f < static_cast<std::size_t>(folds); ++f) {
            std::size_t take = quota;
            const std::size_t slot = (f + static_cast<std::size_t>(folds) - remainder_offset) %
                                     static_cast<std::size_t>(folds);
            if (slot < extra) ++take;
            for (std::size_t i = 0; i < take; ++i) assignment[members[next++]] = static_cast<int>(f);
        }
        remainder_offset = (remainder_offset + extra) % static_cast<std::size_t>(folds);
    }
    return assignment;
}

/// Stratified k-fold cross-validation with confusion counts pooled over folds.
inline MetricsReport cross_validate(const TrainSet& ts, int folds, std::uint64_t seed,
                                    const ClassifierSpec& spec,
                                    std::vector<int> feature_indices = {}) {
    if (feature_indices.empty()) feature_indices = all_feature_indices();
    std::vector<Label> labels;
    labels.reserve(ts.instances.size());
    for (const auto& inst : ts.instances) labels.push_back(inst.label);
    const std::vector<int> assignment = stratified_folds(labels, folds, seed);

    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::vector<std::size_t> fold_sizes(static_cast<std::size_t>(folds), 0);
    for (int a : assignment) ++fold_sizes[static_cast<std::size_t>(a)];

    for (int f = 0; f < folds; ++f) {
        TrainSet train;
        std::vector<const Instance*> held_out;
        for (std::size_t i = 0; i < ts.instances.size(); ++i) {
            if (assignment[i] == f) held_out.push_back(&ts.instances[i]);
            else train.instances.push_back(ts.instances[i]);
        }
        GaussianNBModel nb;
        KnnModel knn;
        if (spec.type == ClassifierSpec::Type::NaiveBayes)
            nb = train_nb(train, feature_indices);
        else
            knn = train_knn(train, spec.knn_k, feature_indices);

        for (const Instance* inst : held_out) {
            const Label predicted = spec.type == ClassifierSpec::Type::NaiveBayes
                                        ? predict_nb(nb, inst->features).label
                                        : predict_knn(knn, inst->features);
            if (inst->label == Label::Correct)
                predicted == Label::Correct ? ++tp : ++fn;
            else
                predicted == Label::Correct ? ++fp : ++tn;
        }
    }

    MetricsReport report = detail::report_from_confusion(tp, fp, fn, tn);
    report.fold_sizes = std::move(fold_sizes);
    return report;
}

inline nlohmann::ordered_json metrics_to_json(const MetricsReport& r) {
    auto cls = [](const ClassMetrics& m) {
        return nlohmann::ordered_json{{"precision", m.precision},
                                      {"recall", m.recall},
                                      {"f1", m.f1},
                                      {"support", m.support}};
    };
    nlohmann::ordered_json j;
    j["per_class"] = {{"correct", cls(r.correct)}, {"incorrect", cls(r.incorrect)}};
    j["overall"] = {{"precision", r.overall_precision},
                    {"recall", r.overall_recall},
                    {"f1", r.overall_f1}};
    j["confusion"] = {{"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn}, {"tn", r.tn}};
    if (!r.fold_sizes.empty()) j["fold_sizes"] = r.fold_sizes;
    return j;
}

}  // namespace wnlink
