#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wnlink/crossval.hpp"
#include "wnlink/error.hpp"
#include "wnlink/trainset.hpp"

namespace wnlink {

namespace detail {

// Rank-based equal-frequency bin ids: a value's bin is determined by the
// rank of its first occurrence, so all equal values share a bin and any
// strictly monotone transform of the feature leaves the binning unchanged.
inline std::vector<int> equal_frequency_bins(const std::vector<double>& values, int bins) {
    const std::size_t n = values.size();
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::map<double, int> bin_of;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        bin_of.emplace(sorted[i], static_cast<int>(i * static_cast<std::size_t>(bins) / n));
        i = j;
    }
    std::vector<int> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = bin_of.at(values[k]);
    return out;
}

inline double entropy_bits(const std::vector<std::size_t>& counts, std::size_t total) {
    double h = 0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace detail

struct FeatureGain {
    int feature = 0;
    std::string name;
    double gain = 0;
};

/// Information gain of each feature against the label, after equal-frequency
/// discretization. Sorted descending; ties keep feature declaration order.
inline std::vector<FeatureGain> information_gain(const TrainSet& ts, int bins = 10) {
    const std::size_t n = ts.instances.size();
    if (n == 0) throw Error("information_gain: empty training set");

    std::vector<std::size_t> label_counts(2, 0);
    for (const auto& inst : ts.instances) ++label_counts[static_cast<std::size_t>(inst.label)];
    const double h_label = detail::entropy_bits(label_counts, n);

    std::vector<FeatureGain> gains;
    for (int feat = 0; feat < kFeatureCount; ++feat) {
        std::vector<double> values;
        values.reserve(n);
        for (const auto& inst : ts.instances)
            values.push_back(inst.features.as_array()[static_cast<std::size_t>(feat)]);
        const std::vector<int> bin = detail::equal_frequency_bins(values, bins);

        std::map<int, std::array<std::size_t, 2>> table;
        for (std::size_t i = 0; i < n; ++i)
            ++table[bin[i]][static_cast<std::size_t>(ts.instances[i].label)];

        double h_cond = 0;
        for (const auto& [b, counts] : table) {
            const std::size_t total = counts[0] + counts[1];
            h_cond += static_cast<double>(total) / static_cast<double>(n) *
                      detail::entropy_bits({counts[0], counts[1]}, total);
        }
        gains.push_back({feat, kFeatureNames[static_cast<std::size_t>(feat)], h_label - h_cond});
    }
    std::stable_sort(gains.begin(), gains.end(),
                     [](const FeatureGain& a, const FeatureGain& b) { return a.gain > b.gain; });
    return gains;
}

struct IncrementalRow {
    std::string feature_added;
    std::vector<int> feature_indices;  // the prefix evaluated
    MetricsReport metrics;
};

/// Re-runs cross-validation on growing feature prefixes in ranking order,
/// mirroring an ablation table: row i uses the top i+1 features.
inline std::vector<IncrementalRow> incremental_feature_eval(const TrainSet& ts,
                                                            const std::vector<FeatureGain>& ranking,
                                                            int folds, std::uint64_t seed,
                                                            const ClassifierSpec& spec) {
    std::vector<IncrementalRow> rows;
    std::vector<int> prefix;
    for (const auto& fg : ranking) {
        prefix.push_back(fg.feature);
        IncrementalRow row;
        row.feature_added = fg.name;
        row.feature_indices = prefix;
        row.metrics = cross_validate(ts, folds, seed, spec, prefix);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace wnlink
