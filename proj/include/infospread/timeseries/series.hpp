#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "infospread/common/date.hpp"
#include "infospread/ingest/records.hpp"

namespace infospread::timeseries {

/// Gap-free daily values; missing days are explicit zeros.
struct DailySeries {
    std::string label;
    Date start{};
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] Date date_at(std::size_t i) const noexcept { return start + std::chrono::days{static_cast<int>(i)}; }
};

/// Two or more aligned series as a T x m matrix (one column per label).
struct SeriesMatrix {
    Date start{};
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    [[nodiscard]] Eigen::Index rows() const noexcept { return values.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return values.cols(); }
    /// Column index of a label; throws PreconditionError when absent.
    [[nodiscard]] Eigen::Index column(std::string_view label) const;
};

/// Aligns series sharing start date and length. Throws PreconditionError otherwise.
[[nodiscard]] SeriesMatrix stack(std::span<const DailySeries> series);
[[nodiscard]] DailySeries column_series(const SeriesMatrix& m, Eigen::Index col);

/// Posts per UTC day over the window; retweets count unless excluded.
[[nodiscard]] DailySeries daily_counts(std::span<const ingest::PostRecord> posts, DateRange window,
                                       bool include_retweets = true, std::string label = "count");
[[nodiscard]] DailySeries daily_counts(std::span<const ingest::MatchedPost> posts, DateRange window,
                                       bool include_retweets = true, std::string label = "count");

/// Trailing mean; the first window-1 days average the available prefix.
[[nodiscard]] DailySeries rolling_mean(const DailySeries& series, std::size_t window);

/// order-th difference; the start date moves forward by order days.
[[nodiscard]] DailySeries difference(const DailySeries& series, std::size_t order = 1);

/// log(1 + x) transform, for count series with zeros.
[[nodiscard]] DailySeries log1p(const DailySeries& series);

/// Long-format CSV with header `date,label,count`.
[[nodiscard]] std::string to_csv(std::span<const DailySeries> series);
/// Groups rows by label, in first-appearance order; days must be consecutive per label.
[[nodiscard]] std::vector<DailySeries> from_csv(std::string_view content);

}  // namespace infospread::timeseries
