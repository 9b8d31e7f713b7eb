#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tslen/time_series.hpp"

namespace tslen {

namespace detail {

// Source coordinate of output step k when mapping [0, target-1] onto
// [0, length-1] with endpoints pinned to endpoints.
inline double resample_coordinate(std::size_t k, std::size_t length, std::size_t target) {
    return static_cast<double>(k) * static_cast<double>(length - 1) /
           static_cast<double>(target - 1);
}

} // namespace detail

/// Stretches or shrinks a series to target_length by piecewise-linear
/// interpolation on the coordinate map k * (L-1) / (target_length-1).
/// Endpoints are copied exactly; a target of 1 yields the first element.
inline TimeSeries linear_resample(const TimeSeries& s, std::size_t target_length) {
    if (target_length == 0) {
        throw std::invalid_argument("linear_resample: target_length must be >= 1");
    }
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (target_length == 1) {
        return TimeSeries(std::vector<double>(s.element(0).begin(), s.element(0).end()), dim);
    }
    if (target_length == length) {
        return s;
    }

    std::vector<double> out(target_length * dim);
    for (std::size_t k = 0; k < target_length; ++k) {
        if (k == target_length - 1) {
            const auto last = s.element(length - 1);
            std::copy(last.begin(), last.end(), out.begin() + k * dim);
            continue;
        }
        const double pos = detail::resample_coordinate(k, length, target_length);
        const auto lower = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lower);
        const auto a = s.element(lower);
        if (frac == 0.0) {
            std::copy(a.begin(), a.end(), out.begin() + k * dim);
        } else {
            const auto b = s.element(lower + 1);
            for (std::size_t d = 0; d < dim; ++d) {
                out[k * dim + d] = (1.0 - frac) * a[d] + frac * b[d];
            }
        }
    }
    return TimeSeries(std::move(out), dim);
}

/// Resamples by repeating elements: output step k copies the input element at
/// the rounded coordinate k * (L-1) / (target_length-1). Rounding is half
/// toward zero, so the index map is deterministic, non-decreasing, and hits
/// both endpoints. Every output element is an exact copy of an input element.
inline TimeSeries nearest_resample(const TimeSeries& s, std::size_t target_length) {
    if (target_length == 0) {
        throw std::invalid_argument("nearest_resample: target_length must be >= 1");
    }
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (target_length == 1) {
        return TimeSeries(std::vector<double>(s.element(0).begin(), s.element(0).end()), dim);
    }

    std::vector<double> out(target_length * dim);
    for (std::size_t k = 0; k < target_length; ++k) {
        const double pos = detail::resample_coordinate(k, length, target_length);
        auto idx = static_cast<std::size_t>(std::ceil(pos - 0.5));
        if (idx > length - 1) {
            idx = length - 1;
        }
        const auto src = s.element(idx);
        std::copy(src.begin(), src.end(), out.begin() + k * dim);
    }
    return TimeSeries(std::move(out), dim);
}

} // namespace tslen
