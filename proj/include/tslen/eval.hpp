#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tslen/dtw.hpp"
#include "tslen/normalizers.hpp"
#include "tslen/parallel.hpp"
#include "tslen/time_series.hpp"

namespace tslen {

enum class Metric { dtw, euclidean };

inline const char* to_string(Metric m) noexcept {
    return m == Metric::dtw ? "dtw" : "euclidean";
}

class LengthMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Outcome of evaluating one normalization method.
struct EvalReport {
    std::string method;    // method slug, e.g. "zero_pad" or "ngw_ab_cw"
    std::string position;  // "pre"|"post"|"outer"|"mid"|"n/a"
    double accuracy = 0.0;
    std::map<std::string, double> per_class_accuracy;
    double wall_time_seconds = 0.0;
    std::size_t target_length = 0;
    std::string error;  // nonempty when the method failed; other fields unset
};

namespace detail {

// Plain L2 over the flattened series; lengths are equal by contract.
inline double euclidean_distance(const TimeSeries& a, const TimeSeries& b) {
    const auto& av = a.values();
    const auto& bv = b.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        const double diff = av[i] - bv[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

} // namespace detail

/// 1-nearest-neighbor classification: each test series takes the label of the
/// closest training series (train series as DTW teacher), ties going to the
/// lowest train index. Accuracy is measured against the true test labels.
inline EvalReport one_nn_classify(const FixedLengthDataset& train, const FixedLengthDataset& test,
                                  Metric metric, unsigned jobs = 1) {
    if (train.target_length() != test.target_length()) {
        throw LengthMismatchError("one_nn_classify: train target length " +
                                  std::to_string(train.target_length()) + " != test " +
                                  std::to_string(test.target_length()));
    }
    if (train.dim() != test.dim()) {
        throw LengthMismatchError("one_nn_classify: train/test dimensionality differs");
    }

    const auto started = std::chrono::steady_clock::now();
    std::vector<std::size_t> predicted(test.size());
    detail::parallel_for(test.size(), jobs, [&](std::size_t i) {
        const TimeSeries& query = test.series()[i];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_index = 0;
        for (std::size_t j = 0; j < train.size(); ++j) {
            const double d = metric == Metric::dtw
                                 ? dtw_distance(train.series()[j], query)
                                 : detail::euclidean_distance(train.series()[j], query);
            if (d < best) {
                best = d;
                best_index = j;
            }
        }
        predicted[i] = best_index;
    });

    EvalReport report;
    report.target_length = train.target_length();
    std::map<std::string, std::size_t> class_total;
    std::map<std::string, std::size_t> class_correct;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const std::string& truth = test.labels()[i];
        ++class_total[truth];
        if (train.labels()[predicted[i]] == truth) {
            ++correct;
            ++class_correct[truth];
        }
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    for (const auto& [label, total] : class_total) {
        report.per_class_accuracy[label] =
            static_cast<double>(class_correct[label]) / static_cast<double>(total);
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

/// Called after each successful normalization inside compare_methods; lets a
/// caller persist the fixed datasets without normalizing twice.
using NormalizedSink = std::function<void(const NormalizerSpec&, const FixedLengthDataset&,
                                          const FixedLengthDataset&)>;

/// Runs every spec against a fresh normalization of the inputs and reports
/// 1-NN accuracy per method, best first (ties keep spec order). A failing
/// spec contributes an error report instead of aborting the sweep.
inline std::vector<EvalReport> compare_methods(const LabeledDataset& train,
                                               const LabeledDataset& test,
                                               const std::vector<NormalizerSpec>& specs,
                                               Metric metric, unsigned jobs = 1,
                                               const NormalizedSink& sink = {}) {
    if (specs.empty()) {
        throw std::invalid_argument("compare_methods: spec list is empty");
    }
    std::vector<EvalReport> reports;
    reports.reserve(specs.size());
    for (const auto& spec : specs) {
        EvalReport report;
        report.method = spec.name.empty() ? to_string(spec.method) : spec.name;
        report.position = to_string(spec.position);
        if (const auto colon = report.method.find(':'); colon != std::string::npos) {
            report.method.resize(colon);
        }
        const auto started = std::chrono::steady_clock::now();
        try {
            const auto [fixed_train, fixed_test] = normalize_baseline(train, test, spec, jobs);
            if (sink) {
                sink(spec, fixed_train, fixed_test);
            }
            EvalReport scored = one_nn_classify(fixed_train, fixed_test, metric, jobs);
            report.accuracy = scored.accuracy;
            report.per_class_accuracy = std::move(scored.per_class_accuracy);
            report.target_length = scored.target_length;
        } catch (const std::exception& e) {
            report.error = e.what();
        }
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        reports.push_back(std::move(report));
    }
    std::stable_sort(reports.begin(), reports.end(),
                     [](const EvalReport& a, const EvalReport& b) {
                         return a.accuracy > b.accuracy;
                     });
    return reports;
}

/// CSV serialization: `method,position,accuracy,target_length,wall_time_s`.
/// With include_timing off the timing column is written as zero so repeated
/// runs produce byte-identical files.
inline std::string reports_to_csv(const std::vector<EvalReport>& reports,
                                  bool include_timing = true) {
    std::string csv = "method,position,accuracy,target_length,wall_time_s\n";
    char buf[128];
    for (const auto& report : reports) {
        csv += report.method;
        csv += ',';
        csv += report.position;
        csv += ',';
        if (report.error.empty()) {
            std::snprintf(buf, sizeof buf, "%.6f,%zu,", report.accuracy, report.target_length);
        } else {
            std::snprintf(buf, sizeof buf, "nan,0,");
        }
        csv += buf;
        std::snprintf(buf, sizeof buf, "%.6f",
                      include_timing ? report.wall_time_seconds : 0.0);
        csv += buf;
        csv += '\n';
    }
    return csv;
}

} // namespace tslen
