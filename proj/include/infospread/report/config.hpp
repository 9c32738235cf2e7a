#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "infospread/common/date.hpp"
#include "infospread/timeseries/adf.hpp"

namespace infospread::report {

enum class VarInput { raw, rolling, log };

[[nodiscard]] std::string_view to_string(VarInput v) noexcept;

/// Everything a pipeline run reads. Relative paths in the file resolve
/// against the config file's directory.
struct PipelineConfig {
    std::filesystem::path config_path;
    std::string config_text;

    // inputs
    std::optional<std::filesystem::path> claimreview;
    std::optional<std::filesystem::path> euvsdisinfo;
    std::filesystem::path posts;
    std::filesystem::path keywords;
    std::optional<std::filesystem::path> embeddings;  // lexical fallback when absent
    std::filesystem::path gazetteer;

    DateRange window{Date{std::chrono::year{2022} / 2 / 1}, Date{std::chrono::year{2022} / 4 / 30}};
    double alpha = 0.01;
    std::uint64_t seed = 42;
    std::filesystem::path output = "out";

    // timeseries
    std::size_t rolling_window = 7;
    bool include_retweets = true;

    // engagement
    std::size_t top_hashtags = 100;
    std::size_t crosstab_rows = 8;
    std::size_t top_domains = 10;
    double lag_bin_width = 1.0;

    // causality
    VarInput var_input = VarInput::raw;
    std::size_t max_lag = 7;
    std::optional<std::size_t> lag;  // fixed order instead of AIC selection
    std::size_t horizon = 14;
    std::size_t bootstrap_draws = 1000;
    timeseries::AdfRegression adf_regression = timeseries::AdfRegression::constant;
    bool difference_if_nonstationary = true;

    // topics
    std::optional<std::size_t> k = 6;
    std::size_t k_min = 2;
    std::size_t k_max = 10;
    std::size_t max_iter = 300;
    std::size_t top_words = 10;
    std::size_t lexical_dimension = 1024;

    // dedup
    double dedup_threshold = 0.8;
    std::vector<double> dedup_sweep{0.6, 0.7, 0.8, 0.9};
};

/// Parses and validates a YAML config. Throws ConfigError listing every
/// problem found, one per line.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);
[[nodiscard]] PipelineConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir);

}  // namespace infospread::report
