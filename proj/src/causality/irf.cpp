#include "infospread/causality/irf.hpp"

#include <algorithm>
#include <cmath>

#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"

namespace infospread::causality {

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, std::size_t horizon) {
    const auto m = static_cast<Eigen::Index>(model.dim());
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(horizon + 1);
    psi.push_back(Eigen::MatrixXd::Identity(m, m));
    for (std::size_t h = 1; h <= horizon; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t i = 1; i <= std::min(h, model.lag_order); ++i) {
            acc += psi[h - i] * model.coeffs[i - 1];
        }
        psi.push_back(std::move(acc));
    }
    return psi;
}

std::vector<Eigen::MatrixXd> orthogonalized_responses(const VarModel& model, std::size_t horizon) {
    const Eigen::MatrixXd p = cholesky(model.sigma);
    std::vector<Eigen::MatrixXd> theta = ma_coefficients(model, horizon);
    for (auto& t : theta) {
        t = (t * p).eval();
    }
    return theta;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw PreconditionError("percentile: empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

Eigen::MatrixXd resimulate(const VarModel& model, const Eigen::MatrixXd& chol, Rng& rng) {
    const auto m = static_cast<Eigen::Index>(model.dim());
    const auto k = static_cast<Eigen::Index>(model.lag_order);
    const Eigen::Index T = static_cast<Eigen::Index>(model.t_effective) + k;
    Eigen::MatrixXd y(T, m);
    y.topRows(k) = model.presample;
    Eigen::VectorXd z(m);
    for (Eigen::Index t = k; t < T; ++t) {
        Eigen::VectorXd next = model.intercepts;
        for (Eigen::Index i = 1; i <= k; ++i) {
            next += model.coeffs[static_cast<std::size_t>(i - 1)] * y.row(t - i).transpose();
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            z(j) = rng.normal();
        }
        y.row(t) = (next + chol * z).transpose();
    }
    return y;
}

}  // namespace

IrfResult irf(const VarModel& model, std::size_t horizon, std::size_t n_boot, std::uint64_t seed, bool orthogonalized) {
    if (horizon == 0) {
        throw PreconditionError("irf: horizon must be at least 1");
    }
    const Eigen::MatrixXd chol = cholesky(model.sigma);
    const auto respond = [&](const VarModel& mdl) {
        return orthogonalized ? orthogonalized_responses(mdl, horizon) : ma_coefficients(mdl, horizon);
    };

    IrfResult result;
    result.horizon = horizon;
    result.orthogonalized = orthogonalized;
    result.responses = respond(model);
    result.lower = result.responses;
    result.upper = result.responses;
    result.bootstrap_draws = n_boot;
    if (n_boot == 0) {
        return result;
    }

    const auto m = static_cast<Eigen::Index>(model.dim());
    std::vector<std::vector<Eigen::MatrixXd>> draws;
    draws.reserve(n_boot);
    for (std::size_t b = 0; b < n_boot; ++b) {
        Rng rng = Rng::substream(seed, "irf-bootstrap", b);
        try {
            const VarModel refit = fit_var(resimulate(model, chol, rng), model.lag_order, model.labels);
            draws.push_back(respond(refit));
        } catch (const NumericalError&) {
            ++result.failed_draws;
        }
    }
    if (draws.size() < (n_boot + 1) / 2) {
        throw NumericalError("irf: more than half of the bootstrap refits failed");
    }

    std::vector<double> sample(draws.size());
    for (std::size_t h = 0; h <= horizon; ++h) {
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                for (std::size_t b = 0; b < draws.size(); ++b) {
                    sample[b] = draws[b][h](i, j);
                }
                const double point = result.responses[h](i, j);
                result.lower[h](i, j) = std::min(percentile(sample, 0.025), point);
                result.upper[h](i, j) = std::max(percentile(sample, 0.975), point);
            }
        }
    }
    return result;
}

FevdResult fevd(const VarModel& model, std::size_t horizon) {
    if (horizon == 0) {
        throw PreconditionError("fevd: horizon must be at least 1");
    }
    const std::vector<Eigen::MatrixXd> theta = orthogonalized_responses(model, horizon - 1);
    const auto m = static_cast<Eigen::Index>(model.dim());
    FevdResult result;
    Eigen::MatrixXd cumulative = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t h = 0; h < horizon; ++h) {
        cumulative += theta[h].cwiseAbs2();
        Eigen::MatrixXd share(m, m);
        for (Eigen::Index j = 0; j < m; ++j) {
            const double total = cumulative.row(j).sum();
            if (!(total > 0.0)) {
                throw NumericalError("fevd: zero forecast-error variance for variable " + std::to_string(j));
            }
            share.row(j) = cumulative.row(j) / total;
        }
        result.proportions.push_back(std::move(share));
    }
    return result;
}

}  // namespace infospread::causality
