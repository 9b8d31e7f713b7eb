#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tslen/dtw.hpp"
#include "tslen/parallel.hpp"
#include "tslen/resample.hpp"
#include "tslen/time_series.hpp"

namespace tslen {

/// Nearest Guided Warping parameters. alpha picks the fraction of longest
/// training series used as prototype originals; beta is the quantile of
/// training lengths that becomes the common target length (beta = 1 targets
/// the maximum). class_wise selects prototypes within each class separately.
struct NgwConfig {
    double alpha = 0.4;
    double beta = 1.0;
    bool class_wise = false;
};

inline void validate(const NgwConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
        throw std::invalid_argument("NgwConfig: alpha must be in (0, 1]");
    }
    if (!(config.beta >= config.alpha && config.beta <= 1.0)) {
        throw std::invalid_argument("NgwConfig: beta must be in [alpha, 1]");
    }
}

/// Thrown when class-wise selection meets a class with no members.
class EmptyClassError : public std::runtime_error {
public:
    explicit EmptyClassError(const std::string& label)
        : std::runtime_error("select_prototypes: class '" + label + "' has no members") {}
};

/// The fixed-length teacher pool: selected training series resampled to
/// target_length, with their class labels and original training indices.
struct PrototypeSet {
    std::vector<TimeSeries> prototypes;
    std::vector<std::string> prototype_labels;
    std::vector<std::size_t> source_indices;
    std::size_t target_length = 0;

    std::size_t size() const noexcept { return prototypes.size(); }
};

namespace detail {

constexpr double kQuantileEpsilon = 1e-9;

// Nearest-rank quantile: the element at 1-based rank ceil(q * n) of the
// ascending sorted values. The epsilon shields exact integer products from
// floating-point drift.
inline std::size_t nearest_rank_quantile(const std::vector<std::size_t>& sorted, double q) {
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(q * n - kQuantileEpsilon));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

// Length threshold for the top-alpha selection: the ceil(alpha * n)-th
// largest value, i.e. the ascending element at 0-based index
// floor((1 - alpha) * n). Series at or above it are selected, so exactly
// ceil(alpha * n) make the cut when lengths are distinct.
inline std::size_t top_alpha_threshold(std::vector<std::size_t> lengths, double alpha) {
    std::sort(lengths.begin(), lengths.end());
    const auto n = static_cast<double>(lengths.size());
    auto index = static_cast<std::size_t>(std::floor((1.0 - alpha) * n + kQuantileEpsilon));
    index = std::min(index, lengths.size() - 1);
    return lengths[index];
}

} // namespace detail

/// Builds the prototype set from the training split: originals are the series
/// in the top alpha quantile of lengths (per class when class_wise), each
/// linearly resampled to the target length. The target length is always the
/// beta quantile of ALL training lengths, so every class warps to one size.
inline PrototypeSet select_prototypes(const LabeledDataset& train, const NgwConfig& config) {
    validate(config);

    std::vector<std::size_t> lengths;
    lengths.reserve(train.size());
    for (const auto& s : train.series()) {
        lengths.push_back(s.length());
    }

    std::vector<std::size_t> sorted_lengths = lengths;
    std::sort(sorted_lengths.begin(), sorted_lengths.end());
    const std::size_t target_length =
        detail::nearest_rank_quantile(sorted_lengths, config.beta);

    std::vector<bool> selected(train.size(), false);
    if (config.class_wise) {
        std::vector<std::string> classes = train.labels();
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        for (const auto& cls : classes) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < train.size(); ++i) {
                if (train.labels()[i] == cls) {
                    members.push_back(i);
                }
            }
            if (members.empty()) {
                throw EmptyClassError(cls);
            }
            std::vector<std::size_t> class_lengths;
            class_lengths.reserve(members.size());
            for (std::size_t i : members) {
                class_lengths.push_back(lengths[i]);
            }
            const std::size_t threshold =
                detail::top_alpha_threshold(std::move(class_lengths), config.alpha);
            for (std::size_t i : members) {
                if (lengths[i] >= threshold) {
                    selected[i] = true;
                }
            }
        }
    } else {
        const std::size_t threshold = detail::top_alpha_threshold(lengths, config.alpha);
        for (std::size_t i = 0; i < train.size(); ++i) {
            if (lengths[i] >= threshold) {
                selected[i] = true;
            }
        }
    }

    PrototypeSet protos;
    protos.target_length = target_length;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (!selected[i]) {
            continue;
        }
        protos.prototypes.push_back(linear_resample(train.series()[i], target_length));
        protos.prototype_labels.push_back(train.labels()[i]);
        protos.source_indices.push_back(i);
    }
    return protos;
}

/// Index into protos of the DTW-nearest prototype (prototype as teacher).
/// With class_wise set and a label supplied, only prototypes of that class
/// compete. Ties go to the lowest prototype index. A prototype whose source
/// index equals exclude_source is skipped so a series never teaches itself,
/// unless it is the only candidate left.
inline std::size_t nearest_teacher_index(const TimeSeries& student, const PrototypeSet& protos,
                                         const std::optional<std::string>& student_label,
                                         const NgwConfig& config,
                                         std::optional<std::size_t> exclude_source = {}) {
    if (protos.size() == 0) {
        throw std::invalid_argument("nearest_teacher: prototype set is empty");
    }
    const bool restrict_class = config.class_wise && student_label.has_value();

    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    for (int pass = 0; pass < 2; ++pass) {
        const bool apply_exclusion = (pass == 0) && exclude_source.has_value();
        std::size_t best = npos;
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < protos.size(); ++k) {
            if (restrict_class && protos.prototype_labels[k] != *student_label) {
                continue;
            }
            if (apply_exclusion && protos.source_indices[k] == *exclude_source) {
                continue;
            }
            const double d = dtw_distance(protos.prototypes[k], student);
            if (d < best_distance) {
                best_distance = d;
                best = k;
            }
        }
        if (best != npos) {
            return best;
        }
        // Everything was excluded: the student's own prototype is the only
        // candidate, so the second pass admits it.
    }
    throw std::invalid_argument("nearest_teacher: no prototype matches the class label");
}

inline const TimeSeries& nearest_teacher(const TimeSeries& student, const PrototypeSet& protos,
                                         const std::optional<std::string>& student_label,
                                         const NgwConfig& config,
                                         std::optional<std::size_t> exclude_source = {}) {
    return protos.prototypes[nearest_teacher_index(student, protos, student_label, config,
                                                   exclude_source)];
}

/// Rewrites the student on the teacher's time axis: output step i is the
/// student element the warp path matched to teacher step i. The output has
/// the teacher's length, keeps the student's first and last elements, and is
/// an order-preserving selection-with-repetition of student elements.
inline TimeSeries guided_warp(const TimeSeries& student, const TimeSeries& teacher) {
    const DtwResult aligned = dtw(teacher, student);
    const std::size_t dim = student.dim();
    std::vector<double> out;
    out.reserve(teacher.length() * dim);
    for (std::size_t j : aligned.path.matches) {
        const auto e = student.element(j);
        out.insert(out.end(), e.begin(), e.end());
    }
    return TimeSeries(std::move(out), dim);
}

/// Full NGW normalization of a train/test pair. Prototypes come from the
/// train split only. Prototype originals become their resampled selves; every
/// other series is warped onto its nearest teacher, after a linear resample
/// to 2 * target_length - 1 whenever it is too long for the step pattern.
/// Test series always search the whole prototype pool: labels are unavailable
/// at inference.
inline std::pair<FixedLengthDataset, FixedLengthDataset>
normalize_ngw(const LabeledDataset& train, const LabeledDataset& test, const NgwConfig& config,
              unsigned jobs = 1) {
    if (train.dim() != test.dim()) {
        throw std::invalid_argument("normalize_ngw: train/test dimensionality differs");
    }
    const PrototypeSet protos = select_prototypes(train, config);
    const std::size_t target = protos.target_length;
    const std::size_t student_cap = 2 * target - 1;

    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> proto_slot(train.size(), npos);
    for (std::size_t k = 0; k < protos.size(); ++k) {
        proto_slot[protos.source_indices[k]] = k;
    }

    auto warp_one = [&](const TimeSeries& s, const std::optional<std::string>& label,
                        std::optional<std::size_t> exclude) {
        const TimeSeries* student = &s;
        std::optional<TimeSeries> shrunk;
        if (s.length() > student_cap) {
            shrunk = linear_resample(s, student_cap);
            student = &*shrunk;
        }
        const std::size_t k = nearest_teacher_index(*student, protos, label, config, exclude);
        return guided_warp(*student, protos.prototypes[k]);
    };

    std::vector<std::optional<TimeSeries>> train_out(train.size());
    detail::parallel_for(train.size(), jobs, [&](std::size_t i) {
        const std::size_t k = proto_slot[i];
        if (k != npos) {
            train_out[i] = protos.prototypes[k];
        } else {
            train_out[i] = warp_one(train.series()[i], train.labels()[i], i);
        }
    });

    std::vector<std::optional<TimeSeries>> test_out(test.size());
    detail::parallel_for(test.size(), jobs, [&](std::size_t i) {
        test_out[i] = warp_one(test.series()[i], std::nullopt, std::nullopt);
    });

    auto assemble = [target](std::vector<std::optional<TimeSeries>>&& slots,
                             const LabeledDataset& source) {
        std::vector<TimeSeries> series;
        series.reserve(slots.size());
        for (auto& slot : slots) {
            series.push_back(std::move(*slot));
        }
        return FixedLengthDataset(
            LabeledDataset(std::move(series), source.labels(), source.role()), target);
    };

    return {assemble(std::move(train_out), train), assemble(std::move(test_out), test)};
}

} // namespace tslen
