#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wnlink/error.hpp"
#include "wnlink/text.hpp"
#include "wnlink/trainset.hpp"

namespace wnlink {

inline constexpr double kVarianceFloor = 1e-9;

/// Gaussian Naive Bayes over a chosen subset of the seven features.
/// Class order is fixed: [correct, incorrect].
struct GaussianNBModel {
    std::vector<int> feature_indices;       // into FeatureVector::as_array()
    std::array<double, 2> priors{};         // sum to 1
    std::vector<std::array<double, 2>> mean;      // [feature][class]
    std::vector<std::array<double, 2>> variance;  // [feature][class], floored

    std::vector<std::string> feature_names() const {
        std::vector<std::string> names;
        for (int idx : feature_indices) names.emplace_back(kFeatureNames[static_cast<std::size_t>(idx)]);
        return names;
    }
};

inline GaussianNBModel train_nb(const TrainSet& ts, std::vector<int> feature_indices = {}) {
    if (feature_indices.empty()) feature_indices = all_feature_indices();
    const std::size_t n_correct = ts.count(Label::Correct);
    const std::size_t n_incorrect = ts.count(Label::Incorrect);
    if (n_correct < 2 || n_incorrect < 2)
        throw Error("train_nb: each class needs at least 2 instances (correct=" +
                    std::to_string(n_correct) + ", incorrect=" + std::to_string(n_incorrect) + ")");

    GaussianNBModel model;
    model.feature_indices = feature_indices;
    const double total = static_cast<double>(ts.instances.size());
    model.priors = {static_cast<double>(n_correct) / total,
                    static_cast<double>(n_incorrect) / total};

    const std::array<double, 2> counts = {static_cast<double>(n_correct),
                                          static_cast<double>(n_incorrect)};
    model.mean.assign(feature_indices.size(), {0.0, 0.0});
    model.variance.assign(feature_indices.size(), {0.0, 0.0});

    for (const auto& inst : ts.instances) {
        const auto fv = inst.features.as_array();
        const int c = static_cast<int>(inst.label);
        for (std::size_t j = 0; j < feature_indices.size(); ++j)
            model.mean[j][c] += fv[static_cast<std::size_t>(feature_indices[j])];
    }
    for (std::size_t j = 0; j < feature_indices.size(); ++j)
        for (int c = 0; c < 2; ++c) model.mean[j][c] /= counts[c];

    for (const auto& inst : ts.instances) {
        const auto fv = inst.features.as_array();
        const int c = static_cast<int>(inst.label);
        for (std::size_t j = 0; j < feature_indices.size(); ++j) {
            const double d = fv[static_cast<std::size_t>(feature_indices[j])] - model.mean[j][c];
            model.variance[j][c] += d * d;
        }
    }
    for (std::size_t j = 0; j < feature_indices.size(); ++j)
        for (int c = 0; c < 2; ++c) {
            model.variance[j][c] /= counts[c] - 1.0;  // unbiased
            if (model.variance[j][c] < kVarianceFloor) model.variance[j][c] = kVarianceFloor;
        }
    return model;
}

struct NBPrediction {
    Label label = Label::Incorrect;
    double posterior_correct = 0;
};

inline NBPrediction predict_nb(const GaussianNBModel& model, const FeatureVector& features) {
    const auto fv = features.as_array();
    std::array<double, 2> logp = {std::log(model.priors[0]), std::log(model.priors[1])};
    for (std::size_t j = 0; j < model.feature_indices.size(); ++j) {
        const double x = fv[static_cast<std::size_t>(model.feature_indices[j])];
        if (!std::isfinite(x)) throw Error("predict_nb: non-finite feature value");
        for (int c = 0; c < 2; ++c) {
            const double v = model.variance[j][c];
            const double d = x - model.mean[j][c];
            logp[c] += -0.5 * std::log(2.0 * M_PI * v) - d * d / (2.0 * v);
        }
    }
    const double hi = std::max(logp[0], logp[1]);
    const double z = std::exp(logp[0] - hi) + std::exp(logp[1] - hi);
    NBPrediction pred;
    pred.posterior_correct = std::exp(logp[0] - hi) / z;
    // the exact Gaussian posterior is strictly interior; keep it so after rounding
    pred.posterior_correct = std::clamp(pred.posterior_correct, std::numeric_limits<double>::min(),
                                        std::nextafter(1.0, 0.0));
    pred.label = pred.posterior_correct > 0.5 ? Label::Correct : Label::Incorrect;
    return pred;
}

inline void save_nb_model(const std::string& path, const GaussianNBModel& model) {
    nlohmann::ordered_json j;
    j["format"] = "wnlink-gnb";
    j["format_version"] = 1;
    j["classes"] = {"correct", "incorrect"};
    j["features"] = model.feature_names();
    j["feature_indices"] = model.feature_indices;
    j["priors"] = model.priors;
    j["means"] = model.mean;
    j["variances"] = model.variance;
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

inline GaussianNBModel load_nb_model(const std::string& path) {
    auto in = open_input(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path, std::string("invalid JSON: ") + e.what());
    }
    if (j.value("format", "") != "wnlink-gnb")
        throw IoError(path, "not a wnlink-gnb model file");
    if (j.value("format_version", 0) != 1)
        throw IoError(path, "unsupported model format version");
    GaussianNBModel model;
    try {
        model.feature_indices = j.at("feature_indices").get<std::vector<int>>();
        model.priors = j.at("priors").get<std::array<double, 2>>();
        model.mean = j.at("means").get<std::vector<std::array<double, 2>>>();
        model.variance = j.at("variances").get<std::vector<std::array<double, 2>>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path, std::string("bad model field: ") + e.what());
    }
    if (model.mean.size() != model.feature_indices.size() ||
        model.variance.size() != model.feature_indices.size())
        throw IoError(path, "model arrays disagree on feature count");
    return model;
}

}  // namespace wnlink
