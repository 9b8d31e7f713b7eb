#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tslen {

/// A time series: an ordered sequence of real-valued element vectors with a
/// uniform dimensionality. Univariate series have dim == 1. Values are stored
/// flat in time-major order (element t occupies [t*dim, (t+1)*dim)).
///
/// Construction enforces the type invariants: at least one element, every
/// value finite, and the flat buffer an exact multiple of dim.
class TimeSeries {
public:
    /// Builds a series from a flat value buffer. For dim == 1 the buffer is
    /// simply the sequence of observations.
    explicit TimeSeries(std::vector<double> values, std::size_t dim = 1)
        : values_(std::move(values)), dim_(dim) {
        if (dim_ == 0) {
            throw std::invalid_argument("TimeSeries: dim must be >= 1");
        }
        if (values_.empty()) {
            throw std::invalid_argument("TimeSeries: length must be >= 1");
        }
        if (values_.size() % dim_ != 0) {
            throw std::invalid_argument(
                "TimeSeries: value count " + std::to_string(values_.size()) +
                " is not a multiple of dim " + std::to_string(dim_));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("TimeSeries: values must be finite");
            }
        }
    }

    /// Builds a series from per-time-step element vectors, all of equal size.
    static TimeSeries from_elements(const std::vector<std::vector<double>>& elements) {
        if (elements.empty()) {
            throw std::invalid_argument("TimeSeries: length must be >= 1");
        }
        const std::size_t dim = elements.front().size();
        std::vector<double> flat;
        flat.reserve(elements.size() * dim);
        for (const auto& e : elements) {
            if (e.size() != dim) {
                throw std::invalid_argument("TimeSeries: ragged element vectors");
            }
            flat.insert(flat.end(), e.begin(), e.end());
        }
        return TimeSeries(std::move(flat), dim);
    }

    std::size_t length() const noexcept { return values_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Element vector at time step t (0-based).
    std::span<const double> element(std::size_t t) const {
        return {values_.data() + t * dim_, dim_};
    }

    /// Scalar accessor; for univariate series value(t) is the observation at t.
    double value(std::size_t t, std::size_t d = 0) const {
        return values_[t * dim_ + d];
    }

    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const TimeSeries&) const = default;

private:
    std::vector<double> values_;
    std::size_t dim_;
};

/// Which split of a dataset a series collection represents.
enum class SplitRole { train, test };

inline const char* to_string(SplitRole role) noexcept {
    return role == SplitRole::train ? "train" : "test";
}

/// A collection of (series, class label) pairs sharing one dimensionality.
/// Lengths may vary; labels are opaque strings.
class LabeledDataset {
public:
    LabeledDataset(std::vector<TimeSeries> series, std::vector<std::string> labels,
                   SplitRole role)
        : series_(std::move(series)), labels_(std::move(labels)), role_(role) {
        if (series_.empty()) {
            throw std::invalid_argument("LabeledDataset: series must be nonempty");
        }
        if (labels_.size() != series_.size()) {
            throw std::invalid_argument(
                "LabeledDataset: " + std::to_string(labels_.size()) + " labels for " +
                std::to_string(series_.size()) + " series");
        }
        const std::size_t dim = series_.front().dim();
        for (const auto& s : series_) {
            if (s.dim() != dim) {
                throw std::invalid_argument("LabeledDataset: series dimensionality differs");
            }
        }
    }

    const std::vector<TimeSeries>& series() const noexcept { return series_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    SplitRole role() const noexcept { return role_; }
    std::size_t size() const noexcept { return series_.size(); }
    std::size_t dim() const noexcept { return series_.front().dim(); }

private:
    std::vector<TimeSeries> series_;
    std::vector<std::string> labels_;
    SplitRole role_;
};

/// A LabeledDataset in which every series has exactly target_length steps.
class FixedLengthDataset {
public:
    FixedLengthDataset(LabeledDataset data, std::size_t target_length)
        : data_(std::move(data)), target_length_(target_length) {
        if (target_length_ == 0) {
            throw std::invalid_argument("FixedLengthDataset: target_length must be >= 1");
        }
        for (const auto& s : data_.series()) {
            if (s.length() != target_length_) {
                throw std::invalid_argument(
                    "FixedLengthDataset: series of length " + std::to_string(s.length()) +
                    " does not match target length " + std::to_string(target_length_));
            }
        }
    }

    const LabeledDataset& data() const noexcept { return data_; }
    const std::vector<TimeSeries>& series() const noexcept { return data_.series(); }
    const std::vector<std::string>& labels() const noexcept { return data_.labels(); }
    SplitRole role() const noexcept { return data_.role(); }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t dim() const noexcept { return data_.dim(); }
    std::size_t target_length() const noexcept { return target_length_; }

private:
    LabeledDataset data_;
    std::size_t target_length_;
};

} // namespace tslen
