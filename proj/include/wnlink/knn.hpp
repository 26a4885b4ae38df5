#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wnlink/error.hpp"
#include "wnlink/trainset.hpp"

namespace wnlink {

/// k-nearest-neighbour classifier over z-normalized features. Features whose
/// training variance is zero carry no distance information and are dropped.
struct KnnModel {
    int k = 10;
    std::vector<int> feature_indices;
    std::vector<double> mu;       // per selected feature
    std::vector<double> sigma;    // 0 marks a dropped feature
    std::vector<std::vector<double>> points;  // z-scores, insertion order
    std::vector<Label> labels;
};

inline KnnModel train_knn(const TrainSet& ts, int k = 10, std::vector<int> feature_indices = {}) {
    if (feature_indices.empty()) feature_indices = all_feature_indices();
    if (k <= 0) throw Error("train_knn: k must be positive");
    if (static_cast<std::size_t>(k) > ts.instances.size())
        throw Error("train_knn: k=" + std::to_string(k) + " exceeds training size " +
                    std::to_string(ts.instances.size()));

    KnnModel model;
    model.k = k;
    model.feature_indices = feature_indices;
    const std::size_t d = feature_indices.size();
    const double n = static_cast<double>(ts.instances.size());

    model.mu.assign(d, 0.0);
    model.sigma.assign(d, 0.0);
    for (const auto& inst : ts.instances) {
        const auto fv = inst.features.as_array();
        for (std::size_t j = 0; j < d; ++j) model.mu[j] += fv[static_cast<std::size_t>(feature_indices[j])];
    }
    for (std::size_t j = 0; j < d; ++j) model.mu[j] /= n;
    for (const auto& inst : ts.instances) {
        const auto fv = inst.features.as_array();
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = fv[static_cast<std::size_t>(feature_indices[j])] - model.mu[j];
            model.sigma[j] += diff * diff;
        }
    }
    for (std::size_t j = 0; j < d; ++j) model.sigma[j] = std::sqrt(model.sigma[j] / n);

    model.points.reserve(ts.instances.size());
    model.labels.reserve(ts.instances.size());
    for (const auto& inst : ts.instances) {
        const auto fv = inst.features.as_array();
        std::vector<double> z(d, 0.0);
        for (std::size_t j = 0; j < d; ++j)
            if (model.sigma[j] > 0)
                z[j] = (fv[static_cast<std::size_t>(feature_indices[j])] - model.mu[j]) / model.sigma[j];
        model.points.push_back(std::move(z));
        model.labels.push_back(inst.label);
    }
    return model;
}

/// Majority vote among the k nearest training points by Euclidean distance;
/// distance ties break toward earlier insertion, vote ties toward incorrect.
inline Label predict_knn(const KnnModel& model, const FeatureVector& features) {
    const auto fv = features.as_array();
    const std::size_t d = model.feature_indices.size();
    std::vector<double> z(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        const double x = fv[static_cast<std::size_t>(model.feature_indices[j])];
        if (!std::isfinite(x)) throw Error("predict_knn: non-finite feature value");
        if (model.sigma[j] > 0) z[j] = (x - model.mu[j]) / model.sigma[j];
    }

    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(model.points.size());
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        double sq = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = z[j] - model.points[i][j];
            sq += diff * diff;
        }
        dist.emplace_back(sq, i);
    }
    const std::size_t k = static_cast<std::size_t>(model.k);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    std::size_t votes_correct = 0;
    for (std::size_t i = 0; i < k; ++i)
        votes_correct += model.labels[dist[i].second] == Label::Correct ? 1 : 0;
    return 2 * votes_correct > k ? Label::Correct : Label::Incorrect;
}

}  // namespace wnlink
