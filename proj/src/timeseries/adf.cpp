#include "infospread/timeseries/adf.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include "infospread/common/error.hpp"
#include "infospread/numeric/linalg.hpp"

namespace infospread::timeseries {

namespace {

// MacKinnon, J.G. (1994), "Approximate Asymptotic Distribution Functions for
// Unit-Root and Cointegration Tests", JBES 12(2), tables for N = 1.
// p = Phi(poly(tau)); small-p polynomial below tau_star, large-p above.
struct PValueSurface {
    double tau_star;
    double tau_min;
    double tau_max;
    std::array<double, 3> small;  // ascending powers
    std::array<double, 4> large;  // ascending powers
};

constexpr PValueSurface kConstantSurface{
    -1.61, -18.83, 2.74, {2.1659, 1.4412, 3.8269e-2}, {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr PValueSurface kTrendSurface{
    -2.89, -16.18, 0.7, {3.2512, 1.6047, 4.9588e-2}, {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

// MacKinnon, J.G. (2010), "Critical Values for Cointegration Tests", Queen's
// Economics Dept. WP 1227, Table 2, N = 1: cv(n) = b0 + b1/n + b2/n^2 + b3/n^3.
constexpr std::array<std::array<double, 4>, 3> kConstantCritical{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};
constexpr std::array<std::array<double, 4>, 3> kTrendCritical{{
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.38},
}};

constexpr std::array<double, 3> kLevels{0.01, 0.05, 0.10};

std::size_t deterministic_terms(AdfRegression r) {
    return r == AdfRegression::constant ? 1 : 2;
}

/// Rows t = first..last of the ADF regression with `lags` lagged differences.
/// Column order: level y_{t-1}, dy_{t-1..t-lags}, constant, [trend].
struct Design {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

Design build_design(std::span<const double> v, std::size_t lags, std::size_t n_rows, AdfRegression reg) {
    const std::size_t n = v.size();
    const std::size_t ndiff = n - 1;
    const std::size_t first = ndiff - n_rows;  // index into the diff series
    const std::size_t cols = 1 + lags + deterministic_terms(reg);
    Design d{Eigen::MatrixXd(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(cols)),
             Eigen::VectorXd(static_cast<Eigen::Index>(n_rows))};
    const auto dy = [&](std::size_t i) { return v[i + 1] - v[i]; };
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t t = first + r;  // diff index of the response
        const auto row = static_cast<Eigen::Index>(r);
        d.y(row) = dy(t);
        d.x(row, 0) = v[t];
        for (std::size_t i = 1; i <= lags; ++i) {
            d.x(row, static_cast<Eigen::Index>(i)) = dy(t - i);
        }
        d.x(row, static_cast<Eigen::Index>(1 + lags)) = 1.0;
        if (reg == AdfRegression::constant_and_trend) {
            d.x(row, static_cast<Eigen::Index>(2 + lags)) = static_cast<double>(r + 1);
        }
    }
    return d;
}

double gaussian_aic(double rss, std::size_t n, std::size_t p) {
    const double nn = static_cast<double>(n);
    const double llf = -0.5 * nn * (std::log(2.0 * std::numbers::pi) + std::log(rss / nn) + 1.0);
    return -2.0 * llf + 2.0 * static_cast<double>(p);
}

}  // namespace

std::size_t default_adf_max_lag(std::size_t n, AdfRegression regression) {
    const auto schwert = static_cast<std::size_t>(std::ceil(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    const std::size_t terms = deterministic_terms(regression);
    const std::size_t cap = n / 2 > terms + 1 ? n / 2 - terms - 1 : 0;
    return std::min(schwert, cap);
}

double mackinnon_p_value(double tau, AdfRegression regression) {
    const PValueSurface& s = regression == AdfRegression::constant ? kConstantSurface : kTrendSurface;
    if (tau > s.tau_max) {
        return 1.0;
    }
    if (tau < s.tau_min) {
        return 0.0;
    }
    double z = 0.0;
    if (tau <= s.tau_star) {
        z = s.small[0] + tau * (s.small[1] + tau * s.small[2]);
    } else {
        z = s.large[0] + tau * (s.large[1] + tau * (s.large[2] + tau * s.large[3]));
    }
    return boost::math::cdf(boost::math::normal(), z);
}

std::array<double, 3> mackinnon_critical_values(std::size_t n, AdfRegression regression) {
    const auto& table = regression == AdfRegression::constant ? kConstantCritical : kTrendCritical;
    const double inv = 1.0 / static_cast<double>(n);
    std::array<double, 3> cv{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& b = table[i];
        cv[i] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    }
    return cv;
}

AdfReport adf_test(std::span<const double> values, std::size_t max_lag, AdfRegression regression) {
    const std::size_t n = values.size();
    if (n < max_lag + 10) {
        throw PreconditionError("adf_test: series of length " + std::to_string(n) + " too short for max_lag " +
                                std::to_string(max_lag) + " (need max_lag + 10)");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw PreconditionError("adf_test: series contains non-finite values");
        }
    }

    // Lag search on the common sample that the largest lag allows.
    const std::size_t common_rows = n - 1 - max_lag;
    std::size_t best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        Design d = build_design(values, lag, common_rows, regression);
        const linalg::OlsFit fit = linalg::ols(d.x, d.y);
        const double aic = gaussian_aic(fit.rss(0), common_rows, static_cast<std::size_t>(d.x.cols()));
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }

    const std::size_t rows = n - 1 - best_lag;
    Design d = build_design(values, best_lag, rows, regression);
    const linalg::OlsFit fit = linalg::ols(d.x, d.y);
    const auto dof = static_cast<double>(rows) - static_cast<double>(d.x.cols());
    const double sigma2 = fit.rss(0) / dof;
    const double se = std::sqrt(sigma2 * fit.xtx_inverse(0, 0));
    if (!(se > 0.0)) {
        throw NumericalError("adf_test: zero standard error on the lagged level (perfect fit)");
    }

    AdfReport report;
    report.regression = regression;
    report.n_lags_used = best_lag;
    report.n_obs = rows;
    report.test_statistic = fit.coefficients(0, 0) / se;
    report.p_value = mackinnon_p_value(report.test_statistic, regression);
    report.critical_values = mackinnon_critical_values(rows, regression);
    for (std::size_t i = 0; i < 3; ++i) {
        if (report.test_statistic < report.critical_values[i]) {
            report.stationary_at = kLevels[i];
            break;
        }
    }
    return report;
}

}  // namespace infospread::timeseries
