#include "infospread/causality/granger.hpp"

#include <algorithm>
#include <sstream>

#include <boost/math/distributions/fisher_f.hpp>

#include "infospread/common/error.hpp"
#include "infospread/numeric/linalg.hpp"

namespace infospread::causality {

GrangerReport granger_test(const timeseries::SeriesMatrix& data, std::size_t lag, std::string_view cause,
                           std::string_view effect) {
    const Eigen::Index ci = data.column(cause);
    const Eigen::Index ei = data.column(effect);
    if (ci == ei) {
        throw PreconditionError("granger_test: cause and effect are the same series");
    }
    const Eigen::Index T = data.rows();
    const Eigen::Index m = data.cols();
    const auto k = static_cast<Eigen::Index>(lag);
    if (lag == 0 || !(T - k > m * k + 1)) {
        std::ostringstream msg;
        msg << "granger_test: " << T << " observations are too few for lag " << lag;
        throw PreconditionError(msg.str());
    }
    const Eigen::Index n = T - k;

    Eigen::MatrixXd full(n, 1 + m * k);
    Eigen::MatrixXd restricted(n, 1 + (m - 1) * k);
    full.col(0).setOnes();
    restricted.col(0).setOnes();
    Eigen::Index rc = 1;
    for (Eigen::Index i = 1; i <= k; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto column = data.values.block(k - i, j, n, 1);
            full.col(1 + (i - 1) * m + j) = column;
            if (j != ci) {
                restricted.col(rc++) = column;
            }
        }
    }
    const Eigen::VectorXd y = data.values.block(k, ei, n, 1);

    const linalg::OlsFit u = linalg::ols(full, y);
    const linalg::OlsFit r = linalg::ols(restricted, y);
    const double rss_u = u.rss(0);
    const double rss_r = r.rss(0);
    const Eigen::VectorXd centered = y.array() - y.mean();
    if (!(rss_u > 1e-14 * std::max(centered.squaredNorm(), 1e-300))) {
        throw NumericalError("granger_test: unrestricted regression fits exactly (RSS = 0); F undefined");
    }

    GrangerReport rep;
    rep.cause = std::string(cause);
    rep.effect = std::string(effect);
    rep.df_num = lag;
    rep.df_den = static_cast<std::size_t>(n - m * k - 1);
    rep.f_statistic = std::max(0.0, ((rss_r - rss_u) / static_cast<double>(rep.df_num)) /
                                        (rss_u / static_cast<double>(rep.df_den)));
    const boost::math::fisher_f dist(static_cast<double>(rep.df_num), static_cast<double>(rep.df_den));
    rep.p_value = boost::math::cdf(boost::math::complement(dist, rep.f_statistic));
    return rep;
}

}  // namespace infospread::causality
