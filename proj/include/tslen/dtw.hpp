#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tslen/time_series.hpp"

namespace tslen {

/// Thrown when the student is too long for the asymmetric step set: the last
/// cell (I, J) is reachable only if J <= 2*I - 1. Callers normalizing data
/// should shrink the student first (see normalize_ngw's resampling guard).
class UnreachableAlignmentError : public std::runtime_error {
public:
    UnreachableAlignmentError(std::size_t teacher_length, std::size_t student_length)
        : std::runtime_error("dtw: student length " + std::to_string(student_length) +
                             " exceeds 2 * " + std::to_string(teacher_length) +
                             " - 1; alignment unreachable") {}
};

/// Euclidean (L2) distance between two element vectors of equal dimension.
inline double local_cost(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("local_cost: dimension mismatch");
    }
    if (a.size() == 1) {
        return std::abs(a[0] - b[0]);
    }
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

/// The element matching produced by the asymmetric warp: matches[i] is the
/// 0-based student index aligned to teacher step i. There are exactly
/// teacher-length matches, matches.front() == 0, matches.back() == J - 1, and
/// consecutive differences lie in {0, 1, 2}.
struct WarpPath {
    std::vector<std::size_t> matches;
};

/// Cumulative sum matrix of the asymmetric recurrence
///   D(i, j) = cost(i, j) + min{D(i-1, j), D(i-1, j-1), D(i-1, j-2)}
/// with D(0, 0) = cost(0, 0), first column accumulated downward, and the rest
/// of row 0 unreachable (+infinity).
struct CumulativeMatrix {
    std::size_t teacher_length = 0;
    std::size_t student_length = 0;
    std::vector<double> values; // row-major, +inf marks unreachable cells

    double at(std::size_t i, std::size_t j) const {
        return values[i * student_length + j];
    }
};

struct DtwResult {
    double distance = 0.0;
    WarpPath path;
};

namespace detail {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Fills one row of the cumulative matrix from its predecessor row.
// `cost(j)` is the local cost of (teacher step i, student step j).
template <typename CostFn>
void accumulate_row(const double* prev, double* curr, std::size_t cols, CostFn&& cost) {
    curr[0] = cost(0) + prev[0];
    if (cols > 1) {
        curr[1] = cost(1) + std::min(prev[1], prev[0]);
    }
    for (std::size_t j = 2; j < cols; ++j) {
        curr[j] = cost(j) + std::min({prev[j], prev[j - 1], prev[j - 2]});
    }
}

inline void require_dims_match(const TimeSeries& teacher, const TimeSeries& student) {
    if (teacher.dim() != student.dim()) {
        throw std::invalid_argument("dtw: series dimensionality differs");
    }
}

inline void require_reachable(const TimeSeries& teacher, const TimeSeries& student) {
    if (student.length() > 2 * teacher.length() - 1) {
        throw UnreachableAlignmentError(teacher.length(), student.length());
    }
}

} // namespace detail

/// Builds the full cumulative matrix for (teacher, student). Exposed so the
/// recurrence itself is testable; dtw() owns traceback and the endpoint value.
inline CumulativeMatrix compute_cumulative_matrix(const TimeSeries& teacher,
                                                  const TimeSeries& student) {
    detail::require_dims_match(teacher, student);
    detail::require_reachable(teacher, student);

    const std::size_t rows = teacher.length();
    const std::size_t cols = student.length();
    CumulativeMatrix m;
    m.teacher_length = rows;
    m.student_length = cols;
    m.values.assign(rows * cols, detail::kUnreachable);

    m.values[0] = local_cost(teacher.element(0), student.element(0));
    for (std::size_t i = 1; i < rows; ++i) {
        const double* prev = m.values.data() + (i - 1) * cols;
        double* curr = m.values.data() + i * cols;
        detail::accumulate_row(prev, curr, cols, [&](std::size_t j) {
            return local_cost(teacher.element(i), student.element(j));
        });
    }
    return m;
}

/// Asymmetric DTW: global distance plus the warp path that realizes it.
///
/// Traceback ties are broken by preferring the diagonal predecessor
/// (i-1, j-1), then (i-1, j), then (i-1, j-2); aligning a series with itself
/// therefore yields the identity path.
inline DtwResult dtw(const TimeSeries& teacher, const TimeSeries& student) {
    const CumulativeMatrix m = compute_cumulative_matrix(teacher, student);
    const std::size_t rows = m.teacher_length;
    const std::size_t cols = m.student_length;

    DtwResult result;
    result.distance = m.at(rows - 1, cols - 1);
    result.path.matches.resize(rows);

    std::size_t j = cols - 1;
    result.path.matches[rows - 1] = j;
    for (std::size_t i = rows - 1; i > 0; --i) {
        std::size_t best_j = j; // vertical predecessor always exists
        double best = m.at(i - 1, j);
        if (j >= 1 && m.at(i - 1, j - 1) <= best) {
            // <= because the diagonal wins ties against the vertical step
            best = m.at(i - 1, j - 1);
            best_j = j - 1;
        }
        if (j >= 2 && m.at(i - 1, j - 2) < best) {
            best = m.at(i - 1, j - 2);
            best_j = j - 2;
        }
        j = best_j;
        result.path.matches[i - 1] = j;
    }
    return result;
}

/// Distance-only DTW with the same recurrence; uses two rolling rows, so it is
/// the kernel of choice for nearest-prototype search and 1-NN scans. Argument
/// order matters: the first series is the teacher ("prototype") whose step
/// count bounds the student's (J <= 2I - 1).
inline double dtw_distance(const TimeSeries& teacher, const TimeSeries& student) {
    detail::require_dims_match(teacher, student);
    detail::require_reachable(teacher, student);

    const std::size_t rows = teacher.length();
    const std::size_t cols = student.length();
    std::vector<double> prev(cols, detail::kUnreachable);
    std::vector<double> curr(cols);

    prev[0] = local_cost(teacher.element(0), student.element(0));
    if (teacher.dim() == 1) {
        // Univariate fast path: skip the span plumbing in the hot loop.
        const double* tv = teacher.values().data();
        const double* sv = student.values().data();
        for (std::size_t i = 1; i < rows; ++i) {
            const double t = tv[i];
            detail::accumulate_row(prev.data(), curr.data(), cols,
                                   [&](std::size_t j) { return std::abs(t - sv[j]); });
            std::swap(prev, curr);
        }
    } else {
        for (std::size_t i = 1; i < rows; ++i) {
            detail::accumulate_row(prev.data(), curr.data(), cols, [&](std::size_t j) {
                return local_cost(teacher.element(i), student.element(j));
            });
            std::swap(prev, curr);
        }
    }
    return prev[cols - 1];
}

} // namespace tslen
