#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "tslen/dtw.hpp"

using tslen::compute_cumulative_matrix;
using tslen::dtw;
using tslen::dtw_distance;
using tslen::local_cost;
using tslen::TimeSeries;
using tslen::UnreachableAlignmentError;
using tslen::WarpPath;

namespace {

void require_valid_path(const WarpPath& path, std::size_t teacher_length,
                        std::size_t student_length) {
    REQUIRE(path.matches.size() == teacher_length);
    REQUIRE(path.matches.front() == 0);
    REQUIRE(path.matches.back() == student_length - 1);
    for (std::size_t i = 1; i < path.matches.size(); ++i) {
        const std::size_t step = path.matches[i] - path.matches[i - 1];
        REQUIRE(path.matches[i] >= path.matches[i - 1]);
        REQUIRE(step <= 2);
    }
}

double path_cost(const TimeSeries& teacher, const TimeSeries& student, const WarpPath& path) {
    double sum = 0.0;
    for (std::size_t i = 0; i < path.matches.size(); ++i) {
        sum += local_cost(teacher.element(i), student.element(path.matches[i]));
    }
    return sum;
}

} // namespace

TEST_CASE("local_cost is the Euclidean distance between elements") {
    const std::vector<double> a{3.0};
    REQUIRE(local_cost(a, a) == 0.0);

    const std::vector<double> origin{0.0, 0.0};
    const std::vector<double> p{3.0, 4.0};
    REQUIRE(local_cost(origin, p) == Catch::Approx(5.0));
    REQUIRE(local_cost(p, origin) == Catch::Approx(5.0));

    const std::vector<double> one{1.0};
    const std::vector<double> minus_two{-2.0};
    REQUIRE(local_cost(one, minus_two) == 3.0);

    REQUIRE_THROWS_AS(local_cost(a, origin), std::invalid_argument);
}

TEST_CASE("dtw on identical series is zero with the identity path") {
    const TimeSeries x({1, 2, 3});
    const auto result = dtw(x, x);
    REQUIRE(result.distance == 0.0);
    REQUIRE(result.path.matches == std::vector<std::size_t>{0, 1, 2});

    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        const auto s = tslen::testing::random_series(rng, 1 + rng() % 30);
        const auto r = dtw(s, s);
        REQUIRE(r.distance == 0.0);
        for (std::size_t i = 0; i < s.length(); ++i) {
            REQUIRE(r.path.matches[i] == i);
        }
        REQUIRE(dtw_distance(s, s) == 0.0);
    }

    // Constant series tie everywhere; diagonal-first keeps the identity.
    const TimeSeries flat({3, 3, 3, 3, 3});
    REQUIRE(dtw(flat, flat).path.matches == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("dtw hand-traced examples") {
    // Only one step sequence reaches (2, 2) at minimal cost.
    const auto two = dtw(TimeSeries({0, 0}), TimeSeries({0, 5}));
    REQUIRE(two.distance == 5.0);
    REQUIRE(two.path.matches == std::vector<std::size_t>{0, 1});

    // Every valid path matches three teacher steps, each at cost 1.
    REQUIRE(dtw_distance(TimeSeries({0, 0, 0}), TimeSeries({1, 1, 1})) == Catch::Approx(3.0));

    // Minimal path for a flat teacher: delay the expensive student element
    // as long as possible (costs 5, 5, 5, 9).
    const auto flat = dtw(TimeSeries({0, 0, 0, 0}), TimeSeries({5, 9}));
    REQUIRE(flat.path.matches == std::vector<std::size_t>{0, 0, 0, 1});
    REQUIRE(flat.distance == Catch::Approx(24.0));
}

TEST_CASE("dtw rejects students longer than 2I - 1") {
    std::mt19937_64 rng(2);
    const TimeSeries teacher({1, 2, 3});
    REQUIRE_NOTHROW(dtw(teacher, tslen::testing::random_series(rng, 5))); // J == 2I - 1
    const auto student = tslen::testing::random_series(rng, 6);
    REQUIRE_THROWS_AS(dtw(teacher, student), UnreachableAlignmentError);
    REQUIRE_THROWS_AS(dtw_distance(teacher, student), UnreachableAlignmentError);
}

TEST_CASE("dtw rejects dimension mismatches") {
    const TimeSeries teacher({1, 2, 3, 4}, 2);
    const TimeSeries student({1, 2, 3});
    REQUIRE_THROWS_AS(dtw(teacher, student), std::invalid_argument);
}

TEST_CASE("cumulative matrix satisfies the recurrence cell by cell") {
    std::mt19937_64 rng(11);
    const auto teacher = tslen::testing::random_series(rng, 6, 2);
    const auto student = tslen::testing::random_series(rng, 9, 2);
    const auto m = compute_cumulative_matrix(teacher, student);

    REQUIRE(m.at(0, 0) == local_cost(teacher.element(0), student.element(0)));
    for (std::size_t j = 1; j < m.student_length; ++j) {
        REQUIRE(std::isinf(m.at(0, j)));
    }
    for (std::size_t i = 1; i < m.teacher_length; ++i) {
        for (std::size_t j = 0; j < m.student_length; ++j) {
            double best = m.at(i - 1, j);
            if (j >= 1) {
                best = std::min(best, m.at(i - 1, j - 1));
            }
            if (j >= 2) {
                best = std::min(best, m.at(i - 1, j - 2));
            }
            if (std::isinf(best)) {
                REQUIRE(std::isinf(m.at(i, j)));
            } else {
                REQUIRE(m.at(i, j) ==
                        local_cost(teacher.element(i), student.element(j)) + best);
            }
        }
    }
}

TEST_CASE("dtw distance equals the brute-force minimum on small instances") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 2000; ++round) {
        const std::size_t dim = 1 + rng() % 2;
        const std::size_t rows = 1 + rng() % 6;
        const std::size_t max_cols = std::min<std::size_t>(2 * rows - 1, 8);
        const std::size_t cols = 1 + rng() % max_cols;
        const auto teacher = tslen::testing::random_series(rng, rows, dim);
        const auto student = tslen::testing::random_series(rng, cols, dim);

        const double expected = tslen::testing::brute_force_dtw_distance(teacher, student);
        const auto result = dtw(teacher, student);
        REQUIRE_THAT(result.distance, Catch::Matchers::WithinAbs(expected, 1e-9));
        REQUIRE(dtw_distance(teacher, student) == result.distance);

        require_valid_path(result.path, rows, cols);
        // The returned path must itself realize the reported distance.
        REQUIRE_THAT(path_cost(teacher, student, result.path),
                     Catch::Matchers::WithinAbs(result.distance, 1e-9));
    }
}

TEST_CASE("warp paths stay valid at realistic lengths") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 300; ++round) {
        const std::size_t rows = 1 + rng() % 60;
        const std::size_t cols = 1 + rng() % (2 * rows - 1);
        const auto teacher = tslen::testing::random_series(rng, rows);
        const auto student = tslen::testing::random_series(rng, cols);
        const auto result = dtw(teacher, student);
        require_valid_path(result.path, rows, cols);
        REQUIRE_THAT(path_cost(teacher, student, result.path),
                     Catch::Matchers::WithinAbs(result.distance, 1e-9));
    }
}

namespace {

// Minimal driver over the library's row kernel with an arbitrary cost
// function; lets the test shift every local cost by a constant.
template <typename CostFn>
double dp_endpoint(std::size_t rows, std::size_t cols, CostFn cost) {
    std::vector<double> prev(cols, std::numeric_limits<double>::infinity());
    std::vector<double> curr(cols);
    prev[0] = cost(std::size_t{0}, std::size_t{0});
    for (std::size_t i = 1; i < rows; ++i) {
        tslen::detail::accumulate_row(prev.data(), curr.data(), cols,
                                      [&](std::size_t j) { return cost(i, j); });
        std::swap(prev, curr);
    }
    return prev[cols - 1];
}

} // namespace

TEST_CASE("dtw runtime does not explode with length") {
    // Soft empirical check that the kernel stays O(I*J): doubling both
    // lengths must not cost more than ~an order of magnitude (quadratic
    // predicts 4x). Generous bounds keep this stable on loaded machines.
    std::mt19937_64 rng(45);
    const auto time_at = [&](std::size_t n) {
        const auto teacher = tslen::testing::random_series(rng, n);
        const auto student = tslen::testing::random_series(rng, n);
        const auto start = std::chrono::steady_clock::now();
        for (int round = 0; round < 3; ++round) {
            (void)dtw_distance(teacher, student);
        }
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    };
    const double base = std::max(time_at(256), 1e-3);
    const double doubled = time_at(512);
    const double quadrupled = time_at(1024);
    REQUIRE(doubled < 12.0 * base);
    REQUIRE(quadrupled < 12.0 * std::max(doubled, 1e-3));
}

TEST_CASE("a constant shift of local costs raises the distance by I times it") {
    // Asymmetric paths match each teacher step exactly once, so adding c to
    // every local cost must add exactly I * c to the optimum.
    std::mt19937_64 rng(44);
    for (int round = 0; round < 100; ++round) {
        const std::size_t rows = 2 + rng() % 8;
        const std::size_t cols = 1 + rng() % (2 * rows - 1);
        const auto teacher = tslen::testing::random_series(rng, rows);
        const auto student = tslen::testing::random_series(rng, cols);
        const auto cost = [&](std::size_t i, std::size_t j) {
            return std::abs(teacher.value(i) - student.value(j));
        };

        const double base = dp_endpoint(rows, cols, cost);
        REQUIRE(base == dtw_distance(teacher, student)); // driver mirrors the kernel

        const double shift = 0.5 + static_cast<double>(rng() % 5);
        const double raised = dp_endpoint(
            rows, cols, [&](std::size_t i, std::size_t j) { return cost(i, j) + shift; });
        REQUIRE_THAT(raised,
                     Catch::Matchers::WithinAbs(base + static_cast<double>(rows) * shift,
                                                1e-9));
    }
}
