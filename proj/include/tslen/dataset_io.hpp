#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tslen/time_series.hpp"

namespace tslen {

class DatasetIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyFileError : public DatasetIoError {
public:
    using DatasetIoError::DatasetIoError;
};

/// A non-numeric token in the value region of a row.
class MalformedRowError : public DatasetIoError {
public:
    using DatasetIoError::DatasetIoError;
};

/// NaN followed by a finite value: only trailing NaN padding is legal.
class InteriorNanError : public DatasetIoError {
public:
    using DatasetIoError::DatasetIoError;
};

namespace detail {

inline bool is_nan_token(std::string_view token) {
    if (token.size() != 3) {
        return false;
    }
    const auto lower = [](char c) {
        return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    };
    return lower(token[0]) == 'n' && lower(token[1]) == 'a' && lower(token[2]) == 'n';
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == '\t' || line[pos] == ' ')) {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != '\t' && line[end] != ' ') {
            ++end;
        }
        if (end > pos) {
            fields.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return fields;
}

} // namespace detail

/// Reads a UCR-archive style TSV: one series per row, first field the class
/// label, remaining fields real values. Rows may be shorter than their
/// neighbors or carry trailing NaN padding; the padding is trimmed so each
/// series keeps its true length. Labels are kept verbatim. The split role is
/// inferred from the filename (`*_TEST*` -> test) unless given explicitly.
inline LabeledDataset load_ucr_tsv(const std::filesystem::path& path,
                                   std::optional<SplitRole> role = std::nullopt) {
    std::ifstream in(path);
    if (!in) {
        throw DatasetIoError("cannot open '" + path.string() + "'");
    }
    if (!role) {
        role = path.filename().string().find("_TEST") != std::string::npos ? SplitRole::test
                                                                           : SplitRole::train;
    }

    std::vector<TimeSeries> series;
    std::vector<std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto fields = detail::split_fields(line);
        if (fields.empty()) {
            continue; // blank line
        }
        const auto context = [&](const std::string& what) {
            return path.string() + ":" + std::to_string(line_no) + ": " + what;
        };

        std::vector<double> values;
        values.reserve(fields.size() - 1);
        std::size_t trailing_nans = 0;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            const std::string_view token = fields[f];
            if (detail::is_nan_token(token)) {
                ++trailing_nans;
                continue;
            }
            if (trailing_nans > 0) {
                throw InteriorNanError(context("NaN followed by value '" + std::string(token) +
                                               "'; only trailing NaN padding is allowed"));
            }
            double v = 0.0;
            const auto* begin = token.data();
            const auto* end = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
                throw MalformedRowError(context("invalid value '" + std::string(token) + "'"));
            }
            values.push_back(v);
        }
        if (values.empty()) {
            throw MalformedRowError(context("row has a label but no values"));
        }
        labels.emplace_back(fields[0]);
        series.emplace_back(std::move(values), 1);
    }
    if (series.empty()) {
        throw EmptyFileError("'" + path.string() + "' contains no series");
    }
    return LabeledDataset(std::move(series), std::move(labels), *role);
}

/// Writes a fixed-length dataset in the same TSV convention, values printed
/// with 17 significant digits so a reload reproduces every double exactly.
inline void write_fixed_tsv(const FixedLengthDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw DatasetIoError("cannot open '" + path.string() + "' for writing");
    }
    std::array<char, 64> buf;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << ds.labels()[i];
        for (double v : ds.series()[i].values()) {
            const auto [ptr, ec] =
                std::to_chars(buf.data(), buf.data() + buf.size(), v,
                              std::chars_format::general, 17);
            out << '\t' << std::string_view(buf.data(), ptr - buf.data());
        }
        out << '\n';
    }
    if (!out) {
        throw DatasetIoError("write to '" + path.string() + "' failed");
    }
}

/// Per-dimension extrema of the training split; fit once, applied to both
/// splits, never refit on test data.
struct MinMaxScaler {
    std::vector<double> min_val;
    std::vector<double> max_val;
};

inline MinMaxScaler fit_minmax(const LabeledDataset& train) {
    const std::size_t dim = train.dim();
    MinMaxScaler scaler;
    scaler.min_val.assign(dim, std::numeric_limits<double>::infinity());
    scaler.max_val.assign(dim, -std::numeric_limits<double>::infinity());
    for (const auto& s : train.series()) {
        for (std::size_t t = 0; t < s.length(); ++t) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double v = s.value(t, d);
                scaler.min_val[d] = std::min(scaler.min_val[d], v);
                scaler.max_val[d] = std::max(scaler.max_val[d], v);
            }
        }
    }
    return scaler;
}

/// Maps each value v to 2*(v - min)/(max - min) - 1. Training values land in
/// [-1, 1]; out-of-range test values are not clamped. A degenerate dimension
/// (max == min) maps to 0.
inline LabeledDataset apply_minmax(const LabeledDataset& ds, const MinMaxScaler& scaler) {
    const std::size_t dim = ds.dim();
    if (scaler.min_val.size() != dim || scaler.max_val.size() != dim) {
        throw std::invalid_argument("apply_minmax: scaler dimensionality differs");
    }
    std::vector<TimeSeries> out;
    out.reserve(ds.size());
    for (const auto& s : ds.series()) {
        std::vector<double> values = s.values();
        for (std::size_t t = 0; t < s.length(); ++t) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double span = scaler.max_val[d] - scaler.min_val[d];
                double& v = values[t * dim + d];
                v = span == 0.0 ? 0.0 : 2.0 * (v - scaler.min_val[d]) / span - 1.0;
            }
        }
        out.emplace_back(std::move(values), dim);
    }
    return LabeledDataset(std::move(out), ds.labels(), ds.role());
}

struct LengthStats {
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    double mean_length = 0.0;
};

inline LengthStats length_stats(const LabeledDataset& ds) {
    LengthStats stats;
    stats.min_length = ds.series().front().length();
    stats.max_length = stats.min_length;
    double sum = 0.0;
    for (const auto& s : ds.series()) {
        const std::size_t n = s.length();
        stats.min_length = std::min(stats.min_length, n);
        stats.max_length = std::max(stats.max_length, n);
        sum += static_cast<double>(n);
    }
    stats.mean_length = sum / static_cast<double>(ds.size());
    return stats;
}

} // namespace tslen
