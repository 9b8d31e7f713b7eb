// tslen command line: dataset statistics, length normalization, NGW
// parameter sweeps, and whole-method comparisons over UCR-style TSV data.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tslen/tslen.hpp"

namespace fs = std::filesystem;

namespace {

struct CliConfig {
    std::string dataset_dir = ".";
    std::string dataset_name;
    std::string method;
    double alpha = 0.4;
    double beta = 1.0;
    bool class_wise = false;
    std::uint64_t seed = 42;
    std::string output_dir = "out";
    unsigned jobs = 1;
    std::string metric = "dtw";
    bool omit_timing = false;
    std::vector<double> alphas;
    std::vector<double> betas;
};

fs::path resolve_split(const CliConfig& config, const char* split) {
    const std::string file = config.dataset_name + "_" + split + ".tsv";
    const fs::path nested = fs::path(config.dataset_dir) / config.dataset_name / file;
    if (fs::exists(nested)) {
        return nested;
    }
    const fs::path flat = fs::path(config.dataset_dir) / file;
    if (fs::exists(flat)) {
        return flat;
    }
    throw tslen::DatasetIoError("dataset file not found: tried '" + nested.string() +
                                "' and '" + flat.string() + "'");
}

std::pair<tslen::LabeledDataset, tslen::LabeledDataset> load_pair(const CliConfig& config) {
    auto train = tslen::load_ucr_tsv(resolve_split(config, "TRAIN"), tslen::SplitRole::train);
    auto test = tslen::load_ucr_tsv(resolve_split(config, "TEST"), tslen::SplitRole::test);
    return {std::move(train), std::move(test)};
}

// Preprocessing order: scale with train extrema first, then normalize lengths.
std::pair<tslen::LabeledDataset, tslen::LabeledDataset>
load_scaled_pair(const CliConfig& config) {
    auto [train, test] = load_pair(config);
    const auto scaler = tslen::fit_minmax(train);
    return {tslen::apply_minmax(train, scaler), tslen::apply_minmax(test, scaler)};
}

tslen::Metric parse_metric(const std::string& name) {
    if (name == "dtw") {
        return tslen::Metric::dtw;
    }
    if (name == "euclidean") {
        return tslen::Metric::euclidean;
    }
    throw std::invalid_argument("unknown metric '" + name + "' (use dtw or euclidean)");
}

std::string stats_line(const tslen::LengthStats& stats) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "min=%zu max=%zu mean=%.1f", stats.min_length,
                  stats.max_length, stats.mean_length);
    return buf;
}

std::string spec_slug(const tslen::NormalizerSpec& spec) {
    std::string slug = tslen::display_name(spec);
    for (char& c : slug) {
        if (c == ':') {
            c = '_';
        }
    }
    return slug;
}

void write_pair(const tslen::FixedLengthDataset& train, const tslen::FixedLengthDataset& test,
                const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    tslen::write_fixed_tsv(train, dir / (name + "_TRAIN.tsv"));
    tslen::write_fixed_tsv(test, dir / (name + "_TEST.tsv"));
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) {
        throw tslen::DatasetIoError("cannot open '" + path.string() + "' for writing");
    }
    out << body;
}

int cmd_stats(const CliConfig& config) {
    const auto [train, test] = load_pair(config);
    std::cout << config.dataset_name << " TRAIN: " << stats_line(tslen::length_stats(train))
              << "\n";
    std::cout << config.dataset_name << " TEST: " << stats_line(tslen::length_stats(test))
              << "\n";
    return 0;
}

int cmd_normalize(const CliConfig& config) {
    const auto spec = tslen::parse_normalizer_spec(
        config.method, config.seed, {config.alpha, config.beta, config.class_wise});
    const auto [train, test] = load_scaled_pair(config);

    const auto started = std::chrono::steady_clock::now();
    const auto [fixed_train, fixed_test] =
        tslen::normalize_baseline(train, test, spec, config.jobs);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    write_pair(fixed_train, fixed_test, config.output_dir, config.dataset_name);
    std::cout << "# method=" << tslen::display_name(spec) << " seed=" << config.seed
              << " jobs=" << config.jobs << "\n";
    std::cout << "target_length=" << fixed_train.target_length() << " wall_time_s=" << elapsed
              << "\n";
    return 0;
}

int cmd_sweep(const CliConfig& config) {
    if (config.alphas.empty() || config.betas.empty()) {
        throw std::invalid_argument("sweep requires --alphas and --betas");
    }
    const auto metric = parse_metric(config.metric);
    const auto [train, test] = load_scaled_pair(config);

    std::string csv = "alpha,beta,status,target_length,accuracy,wall_time_s\n";
    char buf[160];
    for (const double alpha : config.alphas) {
        for (const double beta : config.betas) {
            const tslen::NgwConfig ngw{alpha, beta, config.class_wise};
            try {
                tslen::validate(ngw);
            } catch (const std::invalid_argument&) {
                std::cerr << "warning: skipping invalid pair alpha=" << alpha
                          << " beta=" << beta << "\n";
                std::snprintf(buf, sizeof buf, "%g,%g,invalid,,,\n", alpha, beta);
                csv += buf;
                continue;
            }
            const auto started = std::chrono::steady_clock::now();
            const auto [fixed_train, fixed_test] =
                tslen::normalize_ngw(train, test, ngw, config.jobs);
            const auto report =
                tslen::one_nn_classify(fixed_train, fixed_test, metric, config.jobs);
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            std::snprintf(buf, sizeof buf, "%g,%g,ok,%zu,%.6f,%.6f\n", alpha, beta,
                          fixed_train.target_length(), report.accuracy,
                          config.omit_timing ? 0.0 : elapsed);
            csv += buf;
        }
    }

    fs::create_directories(config.output_dir);
    const fs::path csv_path = fs::path(config.output_dir) / "sweep.csv";
    write_text(csv_path, csv);
    std::cout << "# sweep seed=" << config.seed << " class_wise=" << config.class_wise
              << " metric=" << config.metric << "\n";
    std::cout << csv;
    return 0;
}

int cmd_compare(const CliConfig& config) {
    const auto metric = parse_metric(config.metric);
    const auto [train, test] = load_scaled_pair(config);
    const auto specs = tslen::all_normalizer_specs(config.seed);

    const auto sink = [&](const tslen::NormalizerSpec& spec,
                          const tslen::FixedLengthDataset& fixed_train,
                          const tslen::FixedLengthDataset& fixed_test) {
        write_pair(fixed_train, fixed_test, fs::path(config.output_dir) / spec_slug(spec),
                   config.dataset_name);
    };
    const auto reports = tslen::compare_methods(train, test, specs, metric, config.jobs, sink);
    for (const auto& report : reports) {
        if (!report.error.empty()) {
            std::cerr << "warning: " << report.method << " failed: " << report.error << "\n";
        }
    }

    const std::string csv = tslen::reports_to_csv(reports, !config.omit_timing);
    fs::create_directories(config.output_dir);
    write_text(fs::path(config.output_dir) / "ranking.csv", csv);
    std::cout << "# compare seed=" << config.seed << " metric=" << config.metric
              << " jobs=" << config.jobs << "\n";
    std::cout << csv;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tslen: fixed-length normalization for varying-length time series datasets"};
    app.require_subcommand(1);

    CliConfig config;

    const auto add_dataset_flags = [&](CLI::App* cmd) {
        cmd->add_option("--dataset-dir", config.dataset_dir,
                        "Directory holding <Name>/<Name>_TRAIN.tsv (UCR layout) or the TSVs "
                        "directly");
        cmd->add_option("--dataset", config.dataset_name, "Dataset name, e.g. GestureMidAirD1")
            ->required();
    };
    const auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seed", config.seed, "RNG seed for stochastic methods");
        cmd->add_option("--out", config.output_dir, "Output directory");
        cmd->add_option("--jobs", config.jobs, "Worker threads for per-series steps")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--omit-timing", config.omit_timing,
                      "Write wall_time_s as 0 in CSV outputs (byte-reproducible runs)");
    };

    auto* stats = app.add_subcommand("stats", "Print per-split length statistics");
    add_dataset_flags(stats);

    auto* normalize =
        app.add_subcommand("normalize", "Normalize one dataset and write fixed-length TSVs");
    add_dataset_flags(normalize);
    add_run_flags(normalize);
    normalize->add_option("--method", config.method, "Method, e.g. zero_pad:pre or ngw")
        ->required();
    normalize->add_option("--alpha", config.alpha, "NGW prototype quantile (0, 1]");
    normalize->add_option("--beta", config.beta, "NGW target-length quantile [alpha, 1]");
    normalize->add_flag("--class-wise", config.class_wise, "Class-wise prototype selection");

    auto* sweep = app.add_subcommand("sweep", "Grid-sweep NGW alpha/beta with 1-NN scoring");
    add_dataset_flags(sweep);
    add_run_flags(sweep);
    sweep->add_option("--alphas", config.alphas, "Comma-separated alpha grid")
        ->delimiter(',')
        ->required();
    sweep->add_option("--betas", config.betas, "Comma-separated beta grid")
        ->delimiter(',')
        ->required();
    sweep->add_flag("--class-wise", config.class_wise, "Class-wise prototype selection");
    sweep->add_option("--metric", config.metric, "1-NN metric: dtw or euclidean");

    auto* compare =
        app.add_subcommand("compare", "Evaluate all 21 methods with 1-NN; write ranking.csv");
    add_dataset_flags(compare);
    add_run_flags(compare);
    compare->add_option("--metric", config.metric, "1-NN metric: dtw or euclidean");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (stats->parsed()) {
            return cmd_stats(config);
        }
        if (normalize->parsed()) {
            return cmd_normalize(config);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config);
        }
        return cmd_compare(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
