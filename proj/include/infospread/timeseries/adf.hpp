#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace infospread::timeseries {

enum class AdfRegression {
    constant,           ///< dy_t = a + g y_{t-1} + sum phi_i dy_{t-i} + e
    constant_and_trend  ///< adds b t
};

struct AdfReport {
    double test_statistic = 0.0;
    double p_value = 1.0;
    /// Critical values at 1%, 5%, 10% (strictly increasing), finite-sample
    /// adjusted for the regression's observation count.
    std::array<double, 3> critical_values{};
    std::size_t n_lags_used = 0;
    std::size_t n_obs = 0;
    AdfRegression regression = AdfRegression::constant;
    /// Smallest of {0.01, 0.05, 0.10} whose critical value the statistic beats.
    std::optional<double> stationary_at;
};

/// Schwert's rule 12 * (n / 100)^(1/4), capped so the regression stays identified.
[[nodiscard]] std::size_t default_adf_max_lag(std::size_t n, AdfRegression regression = AdfRegression::constant);

/// Augmented Dickey-Fuller test. The lag order is chosen by AIC over
/// 0..max_lag on a common sample, then the chosen regression is refit on all
/// available observations. Requires values.size() >= max_lag + 10.
[[nodiscard]] AdfReport adf_test(std::span<const double> values, std::size_t max_lag,
                                 AdfRegression regression = AdfRegression::constant);

/// MacKinnon (1994) response-surface p-value for a single-series tau statistic.
[[nodiscard]] double mackinnon_p_value(double tau, AdfRegression regression);

/// MacKinnon (2010) critical values at 1%, 5%, 10% for n observations.
[[nodiscard]] std::array<double, 3> mackinnon_critical_values(std::size_t n, AdfRegression regression);

}  // namespace infospread::timeseries
