#include "infospread/causality/var.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "infospread/common/error.hpp"

namespace infospread::causality {

namespace {

/// Regressor matrix [1, y_{t-1}, ..., y_{t-k}] for t = k..T-1.
Eigen::MatrixXd lagged_design(const Eigen::MatrixXd& data, std::size_t lag) {
    const Eigen::Index T = data.rows();
    const Eigen::Index m = data.cols();
    const auto k = static_cast<Eigen::Index>(lag);
    Eigen::MatrixXd z(T - k, 1 + m * k);
    z.col(0).setOnes();
    for (Eigen::Index i = 1; i <= k; ++i) {
        z.block(0, 1 + (i - 1) * m, T - k, m) = data.block(k - i, 0, T - k, m);
    }
    return z;
}

}  // namespace

VarModel fit_var(const timeseries::SeriesMatrix& data, std::size_t lag) {
    return fit_var(data.values, lag, data.labels);
}

VarModel fit_var(const Eigen::MatrixXd& data, std::size_t lag, std::vector<std::string> labels) {
    const Eigen::Index T = data.rows();
    const Eigen::Index m = data.cols();
    const auto k = static_cast<Eigen::Index>(lag);
    if (lag == 0) {
        throw PreconditionError("fit_var: lag must be at least 1");
    }
    if (m < 1) {
        throw PreconditionError("fit_var: no series");
    }
    if (!(T - k > m * k + 1)) {
        std::ostringstream msg;
        msg << "fit_var: " << T << " observations are too few for VAR(" << lag << ") in " << m
            << " variables (need T - k > m k + 1)";
        throw PreconditionError(msg.str());
    }
    if (!data.allFinite()) {
        throw PreconditionError("fit_var: data contains non-finite values");
    }
    if (labels.empty()) {
        for (Eigen::Index j = 0; j < m; ++j) {
            labels.push_back("y" + std::to_string(j + 1));
        }
    }

    const Eigen::MatrixXd z = lagged_design(data, lag);
    const Eigen::MatrixXd y = data.bottomRows(T - k);
    const linalg::OlsFit fit = linalg::ols(z, y);

    VarModel model;
    model.lag_order = lag;
    model.labels = std::move(labels);
    model.t_effective = static_cast<std::size_t>(T - k);
    model.intercepts = fit.coefficients.row(0).transpose();
    for (Eigen::Index i = 0; i < k; ++i) {
        model.coeffs.push_back(fit.coefficients.block(1 + i * m, 0, m, m).transpose());
    }
    model.residuals = fit.residuals;
    const auto teff = static_cast<double>(T - k);
    model.sigma = model.residuals.transpose() * model.residuals / teff;
    model.sigma = 0.5 * (model.sigma + model.sigma.transpose()).eval();
    model.presample = data.topRows(k);

    const double n_params = static_cast<double>(m * m * k + m);
    double log_det = 0.0;
    try {
        log_det = linalg::log_det_spd(model.sigma);
    } catch (const DecompositionError&) {
        log_det = -std::numeric_limits<double>::infinity();
    }
    model.aic = log_det + 2.0 * n_params / teff;
    return model;
}

LagSelection select_lag(const timeseries::SeriesMatrix& data, std::size_t max_lag) {
    return select_lag(data.values, max_lag);
}

LagSelection select_lag(const Eigen::MatrixXd& data, std::size_t max_lag) {
    if (max_lag == 0) {
        throw PreconditionError("select_lag: max_lag must be at least 1");
    }
    const auto p = static_cast<Eigen::Index>(max_lag);
    if (data.rows() <= p) {
        throw PreconditionError("select_lag: max_lag exceeds the series length");
    }
    LagSelection sel;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        // Drop the first max_lag - lag rows so every candidate is estimated
        // on rows max_lag..T-1.
        const auto skip = static_cast<Eigen::Index>(max_lag - lag);
        const VarModel model = fit_var(Eigen::MatrixXd(data.bottomRows(data.rows() - skip)), lag);
        sel.aic.push_back(model.aic);
        if (model.aic < best) {
            best = model.aic;
            sel.lag = lag;
        }
    }
    return sel;
}

double spectral_radius(const std::vector<Eigen::MatrixXd>& coeffs) {
    if (coeffs.empty()) {
        return 0.0;
    }
    const Eigen::Index m = coeffs.front().rows();
    const auto k = static_cast<Eigen::Index>(coeffs.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m * k, m * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        companion.block(0, i * m, m, m) = coeffs[static_cast<std::size_t>(i)];
    }
    if (k > 1) {
        companion.block(m, 0, m * (k - 1), m * (k - 1)).setIdentity();
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace infospread::causality
