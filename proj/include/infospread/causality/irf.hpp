#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "infospread/causality/var.hpp"

namespace infospread::causality {

/// Responses indexed [step][response var, impulse var], steps 0..horizon.
struct IrfResult {
    std::size_t horizon = 0;
    bool orthogonalized = true;
    std::vector<Eigen::MatrixXd> responses;
    /// Pointwise 95% percentile bands; always bracket the point estimate.
    std::vector<Eigen::MatrixXd> lower;
    std::vector<Eigen::MatrixXd> upper;
    std::size_t bootstrap_draws = 0;
    /// Draws discarded because the refit failed (singular regressors or a
    /// non-positive-definite residual covariance).
    std::size_t failed_draws = 0;
};

/// Proportions indexed [h][target, source] for h = 1..horizon (entry 0 is the
/// one-step-ahead decomposition). Rows sum to one.
struct FevdResult {
    std::vector<Eigen::MatrixXd> proportions;
};

/// Psi_0 = I, Psi_h = sum_{i=1..min(h,k)} Psi_{h-i} A_i.
[[nodiscard]] std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, std::size_t horizon);

/// Theta_h = Psi_h P with P = cholesky(sigma).
[[nodiscard]] std::vector<Eigen::MatrixXd> orthogonalized_responses(const VarModel& model, std::size_t horizon);

/// Impulse responses with a seeded parametric bootstrap: each draw resimulates
/// the fitted model from its presample with Gaussian innovations N(0, sigma),
/// refits VAR(k) and recomputes the responses. Draw b uses the substream
/// derived from (seed, b), so results do not depend on evaluation order.
/// n_boot = 0 gives bands equal to the point estimate.
[[nodiscard]] IrfResult irf(const VarModel& model, std::size_t horizon, std::size_t n_boot, std::uint64_t seed,
                            bool orthogonalized = true);

/// omega_{j<-l}(h) = sum_{i<h} Theta_i[j,l]^2 / sum_{l'} sum_{i<h} Theta_i[j,l']^2.
/// Throws NumericalError when a target's total variance is zero.
[[nodiscard]] FevdResult fevd(const VarModel& model, std::size_t horizon);

/// Linear-interpolation percentile (q in [0, 1]) of an unsorted sample.
[[nodiscard]] double percentile(std::vector<double> values, double q);

}  // namespace infospread::causality
