#include "infospread/numeric/linalg.hpp"

#include <cmath>
#include <sstream>

#include "infospread/common/error.hpp"

namespace infospread::linalg {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kMaxCondition = 1e12;

}  // namespace

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw PreconditionError("cholesky: matrix is not square");
    }
    const Eigen::Index n = a.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance) {
                std::ostringstream msg;
                msg << "cholesky: matrix is not symmetric at (" << i << ", " << j << ")";
                throw PreconditionError(msg.str());
            }
        }
    }
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > 0.0)) {
            std::ostringstream msg;
            msg << "cholesky: matrix is not positive definite (pivot " << j << " = " << d << ")";
            throw DecompositionError(msg.str(), static_cast<std::size_t>(j));
        }
        l(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (y.rows() != n) {
        throw PreconditionError("ols: design and response row counts differ");
    }
    if (n <= p) {
        std::ostringstream msg;
        msg << "ols: " << n << " observations cannot identify " << p << " coefficients";
        throw PreconditionError(msg.str());
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
    const double max_diag = p > 0 ? diag.maxCoeff() : 1.0;
    const double min_diag = p > 0 ? diag.minCoeff() : 1.0;
    const double condition = min_diag > 0.0 ? max_diag / min_diag : std::numeric_limits<double>::infinity();
    if (qr.rank() < p || !(condition < kMaxCondition)) {
        std::ostringstream msg;
        msg << "ols: regressor matrix is singular or near-singular (rank " << qr.rank() << " of " << p
            << ", condition estimate " << condition << ")";
        throw NumericalError(msg.str());
    }
    OlsFit fit;
    fit.condition = condition;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - x * fit.coefficients;
    fit.rss = fit.residuals.colwise().squaredNorm().transpose();

    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    fit.xtx_inverse = perm * (r_inv * r_inv.transpose()) * perm.transpose();
    return fit;
}

double log_det_spd(const Eigen::MatrixXd& a) {
    const Eigen::MatrixXd l = cholesky(a);
    return 2.0 * l.diagonal().array().log().sum();
}

}  // namespace infospread::linalg
