#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tslen/ngw.hpp"
#include "tslen/parallel.hpp"
#include "tslen/resample.hpp"
#include "tslen/rng.hpp"
#include "tslen/time_series.hpp"

namespace tslen {

enum class Method {
    zero_pad,
    edge_pad,
    noise_pad,
    truncate,
    resample,
    strp_pad,
    random_pad,
    zoom_pad,
    ngw,
};

enum class Position { pre, post, outer, mid, none };

enum class PadFiller { zeros, edge, noise };

inline const char* to_string(Method m) noexcept {
    switch (m) {
    case Method::zero_pad: return "zero_pad";
    case Method::edge_pad: return "edge_pad";
    case Method::noise_pad: return "noise_pad";
    case Method::truncate: return "truncate";
    case Method::resample: return "resample";
    case Method::strp_pad: return "strp_pad";
    case Method::random_pad: return "random_pad";
    case Method::zoom_pad: return "zoom_pad";
    case Method::ngw: return "ngw";
    }
    return "?";
}

inline const char* to_string(Position p) noexcept {
    switch (p) {
    case Position::pre: return "pre";
    case Position::post: return "post";
    case Position::outer: return "outer";
    case Position::mid: return "mid";
    case Position::none: return "n/a";
    }
    return "?";
}

/// Pads a series to target_length, keeping the original elements contiguous
/// (split into two runs for mid padding). Positions:
///   pre   — filler block before the originals
///   post  — filler block after the originals
///   outer — centered, the extra element of an odd filler count going after
///   mid   — originals split at ceil(L/2) with all filler between the halves
/// Fillers: zeros; edge (copies of the nearest retained original endpoint);
/// noise (per-entry uniform draws in [0, noise_high) from the supplied rng).
/// When inserted_positions is given it receives the output slots occupied by
/// filler, in order.
inline TimeSeries pad(const TimeSeries& s, std::size_t target_length, PadFiller filler,
                      Position position, std::mt19937_64* rng = nullptr,
                      double noise_high = 0.001,
                      std::vector<std::size_t>* inserted_positions = nullptr) {
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (length > target_length) {
        throw std::invalid_argument("pad: series longer than target length");
    }
    if (filler == PadFiller::noise && rng == nullptr) {
        throw std::invalid_argument("pad: noise filler requires an rng");
    }
    if (inserted_positions) {
        inserted_positions->clear();
    }
    if (length == target_length) {
        return s;
    }
    const std::size_t n_pad = target_length - length;

    // Layout: [front fill][originals 0..split)[mid fill][originals split..L)[back fill]
    std::size_t front = 0;
    std::size_t mid = 0;
    std::size_t back = 0;
    std::size_t split = length;
    switch (position) {
    case Position::pre:
        front = n_pad;
        break;
    case Position::post:
        back = n_pad;
        break;
    case Position::outer:
        front = n_pad / 2;
        back = n_pad - front;
        break;
    case Position::mid:
        mid = n_pad;
        split = (length + 1) / 2;
        break;
    case Position::none:
        throw std::invalid_argument("pad: position must be pre, post, outer, or mid");
    }

    std::vector<double> out;
    out.reserve(target_length * dim);

    auto emit_fill = [&](std::span<const double> edge_source, std::size_t count) {
        for (std::size_t n = 0; n < count; ++n) {
            if (inserted_positions) {
                inserted_positions->push_back(out.size() / dim);
            }
            for (std::size_t d = 0; d < dim; ++d) {
                switch (filler) {
                case PadFiller::zeros: out.push_back(0.0); break;
                case PadFiller::edge: out.push_back(edge_source[d]); break;
                case PadFiller::noise: out.push_back(detail::uniform_unit(*rng) * noise_high); break;
                }
            }
        }
    };
    auto emit_originals = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const auto e = s.element(t);
            out.insert(out.end(), e.begin(), e.end());
        }
    };

    emit_fill(s.element(0), front);
    emit_originals(0, split);
    if (mid > 0) {
        // Each side of a mid gap copies its own half's boundary element.
        const std::size_t left = mid / 2;
        const auto left_edge = s.element(split - 1);
        const auto right_edge = s.element(split < length ? split : split - 1);
        emit_fill(left_edge, left);
        emit_fill(right_edge, mid - left);
    }
    emit_originals(split, length);
    emit_fill(s.element(length - 1), back);

    return TimeSeries(std::move(out), dim);
}

/// Cuts a series to target_length: pre keeps the last elements, post the
/// first, outer removes floor(excess/2) from the front and the rest from the
/// back. A series already shorter than the target is zero padded at the end
/// instead (the short-test-pattern fallback).
inline TimeSeries truncate(const TimeSeries& s, std::size_t target_length, Position position) {
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (target_length == 0) {
        throw std::invalid_argument("truncate: target_length must be >= 1");
    }
    if (position != Position::pre && position != Position::post &&
        position != Position::outer) {
        throw std::invalid_argument("truncate: position must be pre, post, or outer");
    }
    if (length == target_length) {
        return s;
    }
    if (length < target_length) {
        return pad(s, target_length, PadFiller::zeros, Position::post);
    }

    std::size_t start = 0;
    switch (position) {
    case Position::pre:
        start = length - target_length;
        break;
    case Position::outer:
        start = (length - target_length) / 2;
        break;
    default: // post keeps the front
        break;
    }
    std::vector<double> out(s.values().begin() + start * dim,
                            s.values().begin() + (start + target_length) * dim);
    return TimeSeries(std::move(out), dim);
}

/// Stripe padding: distributes the (target_length - L) zero vectors evenly
/// through the series. Zero k (0-based, n_pad total) goes after the original
/// at index (k+1) * target_length / (n_pad+1) - 1, clamped to a valid gap.
inline TimeSeries strp_pad(const TimeSeries& s, std::size_t target_length,
                           std::vector<std::size_t>* inserted_positions = nullptr) {
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (length > target_length) {
        throw std::invalid_argument("strp_pad: series longer than target length");
    }
    if (inserted_positions) {
        inserted_positions->clear();
    }
    if (length == target_length) {
        return s;
    }
    const std::size_t n_pad = target_length - length;

    std::vector<std::size_t> zeros_after(length, 0);
    for (std::size_t k = 0; k < n_pad; ++k) {
        std::size_t gap = (k + 1) * target_length / (n_pad + 1);
        gap = gap > 0 ? gap - 1 : 0;
        gap = std::min(gap, length - 1);
        ++zeros_after[gap];
    }

    std::vector<double> out;
    out.reserve(target_length * dim);
    for (std::size_t t = 0; t < length; ++t) {
        const auto e = s.element(t);
        out.insert(out.end(), e.begin(), e.end());
        for (std::size_t n = 0; n < zeros_after[t]; ++n) {
            if (inserted_positions) {
                inserted_positions->push_back(out.size() / dim);
            }
            out.insert(out.end(), dim, 0.0);
        }
    }
    return TimeSeries(std::move(out), dim);
}

/// Random padding: the zero vectors occupy target slots drawn uniformly
/// without replacement from the seeded generator. Same seed and input give
/// the same output.
inline TimeSeries random_pad(const TimeSeries& s, std::size_t target_length, std::uint64_t seed,
                             std::vector<std::size_t>* inserted_positions = nullptr) {
    const std::size_t length = s.length();
    const std::size_t dim = s.dim();
    if (length > target_length) {
        throw std::invalid_argument("random_pad: series longer than target length");
    }
    if (inserted_positions) {
        inserted_positions->clear();
    }
    if (length == target_length) {
        return s;
    }
    const std::size_t n_pad = target_length - length;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> slots(target_length);
    std::iota(slots.begin(), slots.end(), 0);
    for (std::size_t k = 0; k < n_pad; ++k) {
        const std::size_t r =
            k + static_cast<std::size_t>(detail::uniform_below(rng, target_length - k));
        std::swap(slots[k], slots[r]);
    }
    std::vector<bool> is_zero(target_length, false);
    for (std::size_t k = 0; k < n_pad; ++k) {
        is_zero[slots[k]] = true;
    }

    std::vector<double> out;
    out.reserve(target_length * dim);
    std::size_t src = 0;
    for (std::size_t t = 0; t < target_length; ++t) {
        if (is_zero[t]) {
            if (inserted_positions) {
                inserted_positions->push_back(t);
            }
            out.insert(out.end(), dim, 0.0);
        } else {
            const auto e = s.element(src++);
            out.insert(out.end(), e.begin(), e.end());
        }
    }
    return TimeSeries(std::move(out), dim);
}

/// One concrete normalization configuration, selectable by name.
struct NormalizerSpec {
    Method method = Method::zero_pad;
    Position position = Position::none;
    std::uint64_t seed = 42;
    double noise_high = 0.001;
    NgwConfig ngw;     // only read when method == Method::ngw
    std::string name;  // display name; filled by parse/all_normalizer_specs
};

inline std::string display_name(const NormalizerSpec& spec) {
    if (!spec.name.empty()) {
        return spec.name;
    }
    std::string base = to_string(spec.method);
    if (spec.position != Position::none) {
        base += ':';
        base += to_string(spec.position);
    }
    return base;
}

inline void validate(const NormalizerSpec& spec) {
    const bool positional = spec.position != Position::none;
    switch (spec.method) {
    case Method::zero_pad:
        if (!positional) {
            throw std::invalid_argument("zero_pad requires a position (pre|post|outer|mid)");
        }
        break;
    case Method::edge_pad:
    case Method::noise_pad:
    case Method::truncate:
        if (!positional || spec.position == Position::mid) {
            throw std::invalid_argument(std::string(to_string(spec.method)) +
                                        " requires a position (pre|post|outer)");
        }
        break;
    default:
        if (positional) {
            throw std::invalid_argument(std::string(to_string(spec.method)) +
                                        " does not take a position");
        }
        break;
    }
    if (spec.method == Method::ngw) {
        validate(spec.ngw);
    }
}

/// Parses the CLI method grammar `name[:position]`. The four canonical NGW
/// variants are fixed configurations; plain `ngw` takes its parameters from
/// `base` (the CLI's --alpha/--beta/--class-wise flags).
inline NormalizerSpec parse_normalizer_spec(const std::string& text, std::uint64_t seed = 42,
                                            const NgwConfig& base = NgwConfig{}) {
    static constexpr const char* kValid =
        "zero_pad:{pre|post|outer|mid}, edge_pad:{pre|post|outer}, "
        "noise_pad:{pre|post|outer}, truncate:{pre|post|outer}, resample, strp_pad, "
        "random_pad, zoom_pad, ngw, ngw_a, ngw_a_cw, ngw_ab, ngw_ab_cw";

    std::string name = text;
    std::optional<Position> position;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        const std::string pos_text = text.substr(colon + 1);
        if (pos_text == "pre") {
            position = Position::pre;
        } else if (pos_text == "post") {
            position = Position::post;
        } else if (pos_text == "outer") {
            position = Position::outer;
        } else if (pos_text == "mid") {
            position = Position::mid;
        } else {
            throw std::invalid_argument("unknown position '" + pos_text + "' in '" + text +
                                        "'; valid methods: " + kValid);
        }
    }

    NormalizerSpec spec;
    spec.seed = seed;
    spec.name = text;
    if (name == "zero_pad") {
        spec.method = Method::zero_pad;
    } else if (name == "edge_pad") {
        spec.method = Method::edge_pad;
    } else if (name == "noise_pad") {
        spec.method = Method::noise_pad;
    } else if (name == "truncate") {
        spec.method = Method::truncate;
    } else if (name == "resample") {
        spec.method = Method::resample;
    } else if (name == "strp_pad") {
        spec.method = Method::strp_pad;
    } else if (name == "random_pad") {
        spec.method = Method::random_pad;
    } else if (name == "zoom_pad") {
        spec.method = Method::zoom_pad;
    } else if (name == "ngw") {
        spec.method = Method::ngw;
        spec.ngw = base;
    } else if (name == "ngw_a") {
        spec.method = Method::ngw;
        spec.ngw = {0.4, 1.0, false};
    } else if (name == "ngw_a_cw") {
        spec.method = Method::ngw;
        spec.ngw = {0.4, 1.0, true};
    } else if (name == "ngw_ab") {
        spec.method = Method::ngw;
        spec.ngw = {0.4, 0.7, false};
    } else if (name == "ngw_ab_cw") {
        spec.method = Method::ngw;
        spec.ngw = {0.4, 0.7, true};
    } else {
        throw std::invalid_argument("unknown method '" + name + "'; valid methods: " + kValid);
    }
    if (position) {
        spec.position = *position;
    }
    validate(spec);
    return spec;
}

/// The 21 configurations compared by the evaluation harness: every padding
/// and truncation variant, the three stretch methods, and the four NGW
/// settings (alpha = 0.4; beta = 0.7 for the "ab" pair; "cw" = class-wise).
inline std::vector<NormalizerSpec> all_normalizer_specs(std::uint64_t seed = 42) {
    const char* names[] = {
        "zero_pad:pre", "zero_pad:post", "zero_pad:outer", "zero_pad:mid",
        "edge_pad:pre", "edge_pad:post", "edge_pad:outer",
        "noise_pad:pre", "noise_pad:post", "noise_pad:outer",
        "truncate:pre", "truncate:post", "truncate:outer",
        "resample", "strp_pad", "random_pad", "zoom_pad",
        "ngw_a", "ngw_a_cw", "ngw_ab", "ngw_ab_cw",
    };
    std::vector<NormalizerSpec> specs;
    specs.reserve(std::size(names));
    for (const char* name : names) {
        specs.push_back(parse_normalizer_spec(name, seed));
    }
    return specs;
}

namespace detail {

// Stream ids keep train and test RNG draws apart.
inline std::uint64_t series_stream(SplitRole role, std::size_t index) {
    return (role == SplitRole::test ? (std::uint64_t{1} << 32) : 0) + index;
}

} // namespace detail

/// Applies one normalization method to a train/test pair. The target length
/// is derived from the train split alone: its maximum length for padding and
/// stretching methods, its minimum for truncation. Test series longer than a
/// padding target are linearly resampled down to it first.
inline std::pair<FixedLengthDataset, FixedLengthDataset>
normalize_baseline(const LabeledDataset& train, const LabeledDataset& test,
                   const NormalizerSpec& spec, unsigned jobs = 1) {
    validate(spec);
    if (train.dim() != test.dim()) {
        throw std::invalid_argument("normalize_baseline: train/test dimensionality differs");
    }
    if (spec.method == Method::ngw) {
        return normalize_ngw(train, test, spec.ngw, jobs);
    }

    std::size_t target = train.series().front().length();
    for (const auto& s : train.series()) {
        target = spec.method == Method::truncate ? std::min(target, s.length())
                                                 : std::max(target, s.length());
    }

    auto transform = [&](const TimeSeries& s, SplitRole role, std::size_t index) {
        switch (spec.method) {
        case Method::truncate:
            return truncate(s, target, spec.position);
        case Method::resample:
            return linear_resample(s, target);
        case Method::zoom_pad:
            return nearest_resample(s, target);
        default:
            break;
        }
        const TimeSeries* input = &s;
        std::optional<TimeSeries> shrunk;
        if (s.length() > target) {
            shrunk = linear_resample(s, target);
            input = &*shrunk;
        }
        switch (spec.method) {
        case Method::zero_pad:
            return pad(*input, target, PadFiller::zeros, spec.position);
        case Method::edge_pad:
            return pad(*input, target, PadFiller::edge, spec.position);
        case Method::noise_pad: {
            std::mt19937_64 rng(
                detail::derive_stream_seed(spec.seed, detail::series_stream(role, index)));
            return pad(*input, target, PadFiller::noise, spec.position, &rng, spec.noise_high);
        }
        case Method::strp_pad:
            return strp_pad(*input, target);
        case Method::random_pad:
            return random_pad(*input, target,
                              detail::derive_stream_seed(spec.seed,
                                                         detail::series_stream(role, index)));
        default:
            throw std::logic_error("normalize_baseline: unhandled method");
        }
    };

    auto apply = [&](const LabeledDataset& ds) {
        std::vector<std::optional<TimeSeries>> slots(ds.size());
        detail::parallel_for(ds.size(), jobs, [&](std::size_t i) {
            slots[i] = transform(ds.series()[i], ds.role(), i);
        });
        std::vector<TimeSeries> series;
        series.reserve(slots.size());
        for (auto& slot : slots) {
            series.push_back(std::move(*slot));
        }
        return FixedLengthDataset(LabeledDataset(std::move(series), ds.labels(), ds.role()),
                                  target);
    };

    return {apply(train), apply(test)};
}

} // namespace tslen
