#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infospread/numeric/linalg.hpp"
#include "infospread/timeseries/series.hpp"

namespace infospread::causality {

using linalg::cholesky;

/// Fitted VAR(k): y_t = c + A_1 y_{t-1} + ... + A_k y_{t-k} + u_t.
struct VarModel {
    std::size_t lag_order = 0;
    std::vector<std::string> labels;
    Eigen::VectorXd intercepts;
    /// A_1..A_k, each m x m; row = equation (response), column = regressor.
    std::vector<Eigen::MatrixXd> coeffs;
    /// (T - k) x m.
    Eigen::MatrixXd residuals;
    /// Residual covariance U^T U / (T - k).
    Eigen::MatrixXd sigma;
    /// ln det(sigma) + 2 (m^2 k + m) / (T - k).
    double aic = 0.0;
    std::size_t t_effective = 0;
    /// First k observations, used to start bootstrap resimulation.
    Eigen::MatrixXd presample;

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(intercepts.size()); }
};

/// Per-equation OLS with intercept on k lags of every variable.
/// Throws PreconditionError unless T - k > m k + 1, NumericalError for a
/// singular regressor matrix.
[[nodiscard]] VarModel fit_var(const timeseries::SeriesMatrix& data, std::size_t lag);
[[nodiscard]] VarModel fit_var(const Eigen::MatrixXd& data, std::size_t lag, std::vector<std::string> labels = {});

struct LagSelection {
    std::size_t lag = 1;
    /// AIC for lags 1..max_lag, all on the common sample (rows max_lag..T-1).
    std::vector<double> aic;
};

/// argmin AIC over 1..max_lag; ties go to the smaller lag.
[[nodiscard]] LagSelection select_lag(const timeseries::SeriesMatrix& data, std::size_t max_lag);
[[nodiscard]] LagSelection select_lag(const Eigen::MatrixXd& data, std::size_t max_lag);

/// Largest modulus among the companion matrix eigenvalues.
[[nodiscard]] double spectral_radius(const std::vector<Eigen::MatrixXd>& coeffs);

}  // namespace infospread::causality
