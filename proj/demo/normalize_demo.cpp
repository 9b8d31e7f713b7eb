// Minimal library walkthrough: build a small varying-length dataset, fix its
// lengths with nearest guided warping, and score it with 1-NN.

#include <iostream>
#include <random>

#include "tslen/tslen.hpp"

namespace {

tslen::LabeledDataset make_dataset(std::mt19937_64& rng, std::size_t count,
                                   tslen::SplitRole role) {
    std::vector<tslen::TimeSeries> series;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t cls = i % 2;
        const std::size_t length = 20 + rng() % 60;
        std::vector<double> values(length);
        for (std::size_t t = 0; t < length; ++t) {
            const double phase = 6.28318530717958648 * static_cast<double>(t) /
                                 static_cast<double>(length);
            values[t] = cls == 0 ? std::sin(phase) : std::sin(2.0 * phase);
        }
        series.emplace_back(std::move(values), 1);
        labels.push_back(cls == 0 ? "slow" : "fast");
    }
    return {std::move(series), std::move(labels), role};
}

} // namespace

int main() {
    std::mt19937_64 rng(7);
    const auto train = make_dataset(rng, 16, tslen::SplitRole::train);
    const auto test = make_dataset(rng, 8, tslen::SplitRole::test);

    const tslen::NgwConfig config{0.4, 0.7, false};
    const auto [fixed_train, fixed_test] = tslen::normalize_ngw(train, test, config);
    std::cout << "normalized every series to " << fixed_train.target_length() << " steps\n";

    const auto report = tslen::one_nn_classify(fixed_train, fixed_test, tslen::Metric::dtw);
    std::cout << "1-NN DTW accuracy after NGW: " << report.accuracy << "\n";

    const auto specs = tslen::all_normalizer_specs();
    const auto ranking = tslen::compare_methods(train, test, specs, tslen::Metric::euclidean);
    std::cout << "best of " << ranking.size() << " methods on this toy data: "
              << ranking.front().method << " (accuracy " << ranking.front().accuracy << ")\n";
    return 0;
}
