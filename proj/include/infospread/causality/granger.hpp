#pragma once

#include <string>
#include <string_view>

#include "infospread/timeseries/series.hpp"

namespace infospread::causality {

struct GrangerReport {
    std::string cause;
    std::string effect;
    double f_statistic = 0.0;
    std::size_t df_num = 0;
    std::size_t df_den = 0;
    double p_value = 1.0;
};

/// Does `cause` Granger-cause `effect` at lag k? Compares the effect's VAR
/// equation (intercept + k lags of every variable) against the same equation
/// without the cause's lags:
///   F = ((RSS_r - RSS_u) / k) / (RSS_u / (T_eff - m k - 1)).
/// Throws NumericalError when the unrestricted fit is exact (RSS_u = 0) or the
/// regressors are singular, e.g. a constant cause series.
[[nodiscard]] GrangerReport granger_test(const timeseries::SeriesMatrix& data, std::size_t lag,
                                         std::string_view cause, std::string_view effect);

}  // namespace infospread::causality
