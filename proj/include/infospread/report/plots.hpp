#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infospread/engagement/engagement.hpp"
#include "infospread/timeseries/series.hpp"

namespace infospread::report {

/// Stacked area chart of aligned daily series (e.g. 7-day rolling counts).
[[nodiscard]] std::string plot_stacked_series(const std::vector<timeseries::DailySeries>& series, const std::string& title);

/// Histogram bars with a Gaussian kernel density overlay scaled to counts.
[[nodiscard]] std::string plot_histogram(const std::vector<engagement::HistogramBin>& bins,
                                         const std::vector<double>& samples, const std::string& title);

/// m x m grid of impulse responses, one panel per (response, impulse), with bands.
[[nodiscard]] std::string plot_irf_grid(const std::vector<std::string>& labels, const std::vector<Eigen::MatrixXd>& value,
                                        const std::vector<Eigen::MatrixXd>& lower,
                                        const std::vector<Eigen::MatrixXd>& upper);

/// One panel per target variable, stacked source proportions per horizon.
[[nodiscard]] std::string plot_fevd(const std::vector<std::string>& labels, const std::vector<Eigen::MatrixXd>& proportions);

/// One line per series.
[[nodiscard]] std::string plot_lines(const std::vector<timeseries::DailySeries>& series, const std::string& title);

/// k x k heatmap with cell values.
[[nodiscard]] std::string plot_heatmap(const std::vector<std::string>& labels, const Eigen::MatrixXd& values,
                                       const std::string& title);

}  // namespace infospread::report
