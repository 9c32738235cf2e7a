#pragma once

#include <Eigen/Dense>

namespace infospread::linalg {

/// Lower-triangular L with L * L^T = a.
///
/// Requires a symmetric input (|a - a^T| <= 1e-10 entrywise, else
/// PreconditionError). A non-positive pivot raises DecompositionError whose
/// pivot() names the failing row.
[[nodiscard]] Eigen::MatrixXd cholesky(const Eigen::MatrixXd& a);

/// Ordinary least squares through column-pivoted Householder QR.
struct OlsFit {
    Eigen::MatrixXd coefficients;  // p x m (one column per response)
    Eigen::MatrixXd residuals;     // n x m
    Eigen::VectorXd rss;           // per response column
    /// (X^T X)^{-1}, for standard errors.
    Eigen::MatrixXd xtx_inverse;
    /// max |R_ii| / min |R_ii| of the QR factor; a cheap conditioning diagnostic.
    double condition = 1.0;
};

/// Throws PreconditionError when n <= p and NumericalError (quoting the
/// condition diagnostic) when X is rank deficient or its condition estimate
/// exceeds 1e12.
[[nodiscard]] OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// log det of a symmetric positive-definite matrix via its Cholesky factor.
[[nodiscard]] double log_det_spd(const Eigen::MatrixXd& a);

}  // namespace infospread::linalg
