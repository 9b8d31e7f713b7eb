#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "tslen/resample.hpp"
#include "tslen/time_series.hpp"

using tslen::FixedLengthDataset;
using tslen::LabeledDataset;
using tslen::SplitRole;
using tslen::TimeSeries;

namespace {

std::vector<double> flat(const TimeSeries& s) { return s.values(); }

} // namespace

TEST_CASE("TimeSeries enforces its invariants") {
    REQUIRE_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(TimeSeries({1.0, 2.0, 3.0}, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
    REQUIRE_THROWS_AS(TimeSeries({std::numeric_limits<double>::infinity()}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(TimeSeries({1.0}, 0), std::invalid_argument);

    const TimeSeries s({1.0, 2.0, 3.0, 4.0}, 2);
    REQUIRE(s.length() == 2);
    REQUIRE(s.dim() == 2);
    REQUIRE(s.value(1, 0) == 3.0);
    REQUIRE(s.element(1)[1] == 4.0);

    REQUIRE_THROWS_AS(TimeSeries::from_elements({{1.0, 2.0}, {3.0}}), std::invalid_argument);
    REQUIRE(TimeSeries::from_elements({{1.0, 2.0}, {3.0, 4.0}}) == s);
}

TEST_CASE("LabeledDataset enforces its invariants") {
    std::vector<TimeSeries> series{TimeSeries({1.0}), TimeSeries({2.0, 3.0})};
    REQUIRE_THROWS_AS(LabeledDataset({}, {}, SplitRole::train), std::invalid_argument);
    REQUIRE_THROWS_AS(LabeledDataset(series, {"a"}, SplitRole::train), std::invalid_argument);

    std::vector<TimeSeries> mixed{TimeSeries({1.0}), TimeSeries({1.0, 2.0}, 2)};
    REQUIRE_THROWS_AS(LabeledDataset(mixed, {"a", "b"}, SplitRole::train),
                      std::invalid_argument);

    const LabeledDataset ds(series, {"a", "b"}, SplitRole::test);
    REQUIRE(ds.size() == 2);
    REQUIRE(ds.role() == SplitRole::test);
}

TEST_CASE("FixedLengthDataset requires uniform target length") {
    std::vector<TimeSeries> series{TimeSeries({1.0, 2.0}), TimeSeries({3.0, 4.0})};
    const LabeledDataset ds(series, {"a", "b"}, SplitRole::train);
    REQUIRE(FixedLengthDataset(ds, 2).target_length() == 2);
    REQUIRE_THROWS_AS(FixedLengthDataset(ds, 3), std::invalid_argument);
}

TEST_CASE("linear_resample matches hand-computed values") {
    REQUIRE(flat(linear_resample(TimeSeries({1, 3}), 3)) == std::vector<double>{1, 2, 3});
    REQUIRE(flat(linear_resample(TimeSeries({5, 5, 5, 5}), 7)) ==
            std::vector<double>{5, 5, 5, 5, 5, 5, 5});
    // Piecewise-linear interpolant of [0, 1, 4, 9] at coordinates 0, 0.5, ..., 3.
    REQUIRE(flat(linear_resample(TimeSeries({0, 1, 4, 9}), 7)) ==
            std::vector<double>{0, 0.5, 1, 2.5, 4, 6.5, 9});
}

TEST_CASE("linear_resample edge cases") {
    REQUIRE_THROWS_AS(linear_resample(TimeSeries({1.0}), 0), std::invalid_argument);
    REQUIRE(flat(linear_resample(TimeSeries({7, 8, 9}), 1)) == std::vector<double>{7});
    REQUIRE(flat(linear_resample(TimeSeries({4.0}), 5)) == std::vector<double>{4, 4, 4, 4, 4});
}

TEST_CASE("linear_resample identity and endpoint properties") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < 200; ++round) {
        const std::size_t length = 1 + rng() % 40;
        const auto s = tslen::testing::random_series(rng, length);
        REQUIRE(linear_resample(s, length) == s); // bit-exact identity

        const std::size_t target = 2 + rng() % 80;
        const auto r = linear_resample(s, target);
        REQUIRE(r.length() == target);
        REQUIRE(r.value(0) == s.value(0));
        REQUIRE(r.value(target - 1) == s.value(length - 1));
    }
}

TEST_CASE("resamplers act per dimension") {
    std::mt19937_64 rng(202);
    const auto mv = tslen::testing::random_series(rng, 9, 3);
    for (std::size_t target : {std::size_t{1}, std::size_t{4}, std::size_t{9}, std::size_t{17}}) {
        const auto linear = linear_resample(mv, target);
        const auto nearest = nearest_resample(mv, target);
        for (std::size_t d = 0; d < 3; ++d) {
            std::vector<double> channel;
            for (std::size_t t = 0; t < mv.length(); ++t) {
                channel.push_back(mv.value(t, d));
            }
            const TimeSeries single(channel, 1);
            const auto linear_1d = linear_resample(single, target);
            const auto nearest_1d = nearest_resample(single, target);
            for (std::size_t t = 0; t < target; ++t) {
                REQUIRE(linear.value(t, d) == linear_1d.value(t));
                REQUIRE(nearest.value(t, d) == nearest_1d.value(t));
            }
        }
    }
}

TEST_CASE("nearest_resample matches hand-computed values") {
    REQUIRE(flat(nearest_resample(TimeSeries({7, 9}), 4)) == std::vector<double>{7, 7, 9, 9});
    REQUIRE(flat(nearest_resample(TimeSeries({1, 2, 3}), 3)) == std::vector<double>{1, 2, 3});
    REQUIRE(flat(nearest_resample(TimeSeries({4, 8}), 2)) == std::vector<double>{4, 8});
    REQUIRE_THROWS_AS(nearest_resample(TimeSeries({1.0}), 0), std::invalid_argument);
}

TEST_CASE("nearest_resample selects a non-decreasing run of input elements") {
    std::mt19937_64 rng(303);
    for (int round = 0; round < 200; ++round) {
        const std::size_t length = 1 + rng() % 30;
        // Strictly increasing values make the source index recoverable.
        std::vector<double> values(length);
        for (std::size_t t = 0; t < length; ++t) {
            values[t] = static_cast<double>(t) * 2.0;
        }
        const TimeSeries s(values, 1);
        const std::size_t target = 1 + rng() % 60;
        const auto r = nearest_resample(s, target);
        REQUIRE(r.length() == target);

        std::size_t prev = 0;
        for (std::size_t t = 0; t < target; ++t) {
            const double v = r.value(t);
            const auto idx = static_cast<std::size_t>(v / 2.0);
            REQUIRE(s.value(idx) == v); // exact copy of some input element
            REQUIRE(idx >= prev);
            prev = idx;
        }
        REQUIRE(r.value(0) == s.value(0));
        if (target >= 2) {
            REQUIRE(r.value(target - 1) == s.value(length - 1));
        }
    }
}
