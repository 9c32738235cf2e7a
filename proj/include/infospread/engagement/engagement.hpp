#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infospread/ingest/records.hpp"

namespace infospread::engagement {

enum class Metric { followers, tweets, retweets, replies, likes, quote_count };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::followers, Metric::tweets,  Metric::retweets,
                                                   Metric::replies,   Metric::likes,   Metric::quote_count};

[[nodiscard]] std::string_view to_string(Metric m) noexcept;
[[nodiscard]] double metric_value(const ingest::PostRecord& p, Metric m) noexcept;

struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    /// Denominator n - 1; the default reported spread.
    double std_sample = 0.0;
    /// Denominator n.
    double std_population = 0.0;
};

[[nodiscard]] SampleStats describe(std::span<const double> values);

/// Two-sample unequal-variance t-test with Welch-Satterthwaite df.
struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    /// Two-sided.
    double p_value = 1.0;
    bool skipped = false;
    std::string skip_reason;
};

/// Both samples need n >= 2. When both samples are constant the test is
/// skipped (reason "constant_in_both_samples") and p_value stays 1.
[[nodiscard]] WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct MetricComparison {
    Metric metric = Metric::followers;
    SampleStats a;
    SampleStats b;
    WelchResult test;
    /// p_value <= alpha and the test ran.
    bool significant = false;
};

struct EngagementSummary {
    double alpha = 0.01;
    std::vector<MetricComparison> metrics;
};

/// Per-metric means, spreads and Welch tests between two post sets.
[[nodiscard]] EngagementSummary metric_summary(std::span<const ingest::PostRecord> posts_a,
                                               std::span<const ingest::PostRecord> posts_b, double alpha = 0.01);

/// Biased moment coefficient g1 = m3 / m2^(3/2) with central moments over n.
/// Throws PreconditionError for n < 3 and NumericalError for zero variance.
[[nodiscard]] double fisher_pearson_skewness(std::span<const double> values);

struct DebunkLag {
    std::string debunk_id;
    double mean_lag_days = 0.0;
    std::size_t posts = 0;
};

struct LagStats {
    std::vector<DebunkLag> per_debunk;
    /// Absent when fewer than three debunks contribute or all lags coincide.
    std::optional<double> skewness_g1;
};

/// Per debunk: mean over matched disinformation posts of
/// (post UTC date - debunk date) in whole days. Debunks without matched posts
/// are left out. Output is sorted by debunk id.
[[nodiscard]] LagStats lag_days(std::span<const ingest::DebunkRecord> debunks,
                                std::span<const ingest::MatchedPost> disinfo_posts);

struct HistogramBin {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t count = 0;
};

/// Fixed-width bins anchored at floor(min / width) * width; the last bin is
/// closed on the right.
[[nodiscard]] std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width = 1.0);

struct HashtagCount {
    std::string hashtag;
    std::size_t count = 0;
};

/// Descending by count, ties lexicographic; hashtags are case-folded.
[[nodiscard]] std::vector<HashtagCount> top_hashtags(std::span<const ingest::PostRecord> posts, std::size_t n);

struct CountryPair {
    std::string affected;
    std::string author;
};

struct CrosstabRow {
    std::string affected;  // "Other" for the remainder row
    std::string author;
    std::size_t count = 0;
    /// Rounded to one decimal.
    double percent = 0.0;
};

/// (affected country, author country) pairs for every disinformation post with
/// a resolved author country, crossed with every affected country listed by
/// the debunks it matched.
[[nodiscard]] std::vector<CountryPair> country_pairs(std::span<const ingest::DebunkRecord> debunks,
                                                     std::span<const ingest::MatchedPost> disinfo_posts);

/// Percentages over all pairs; the top_n most frequent pairs (ties
/// lexicographic) and an "Other" row with the remainder.
[[nodiscard]] std::vector<CrosstabRow> country_crosstab(std::span<const CountryPair> pairs, std::size_t top_n = 8);

}  // namespace infospread::engagement
