#include "infospread/synth/synth.hpp"

#include <cmath>

#include "infospread/causality/var.hpp"
#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/numeric/linalg.hpp"

namespace infospread::synth {

timeseries::SeriesMatrix simulate_var(const VarSpec& spec) {
    const std::size_t m = spec.dim();
    const std::size_t k = spec.lag();
    if (m == 0 || k == 0) {
        throw PreconditionError("simulate_var: need at least one m x m coefficient matrix");
    }
    for (const auto& a : spec.coeffs) {
        if (a.rows() != static_cast<Eigen::Index>(m) || a.cols() != static_cast<Eigen::Index>(m)) {
            throw PreconditionError("simulate_var: coefficient matrices must all be m x m");
        }
    }
    if (spec.sigma.rows() != static_cast<Eigen::Index>(m) || spec.sigma.cols() != static_cast<Eigen::Index>(m)) {
        throw PreconditionError("simulate_var: sigma must be m x m");
    }
    if (spec.intercepts.size() != 0 && spec.intercepts.size() != static_cast<Eigen::Index>(m)) {
        throw PreconditionError("simulate_var: intercepts must have m entries");
    }
    if (!spec.labels.empty() && spec.labels.size() != m) {
        throw PreconditionError("simulate_var: labels must have m entries");
    }
    if (spec.length == 0) {
        throw PreconditionError("simulate_var: T must be positive");
    }
    if (spec.require_stationary) {
        const double rho = causality::spectral_radius(spec.coeffs);
        if (!(rho < 1.0)) {
            throw PreconditionError("simulate_var: spec is not stationary (spectral radius " + std::to_string(rho) +
                                    ")");
        }
    }
    Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    if (!spec.sigma.isZero(0.0)) {
        chol = linalg::cholesky(spec.sigma);
    }
    const Eigen::VectorXd c =
        spec.intercepts.size() == 0 ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)) : spec.intercepts;

    const std::size_t burn = kBurnInPerLag * k;
    const std::size_t total = burn + spec.length;
    // Rows 0..k-1 are the zero initial state.
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total + k), static_cast<Eigen::Index>(m));
    Rng rng = Rng::substream(spec.seed, "simulate-var");
    Eigen::VectorXd e(static_cast<Eigen::Index>(m));
    for (std::size_t t = k; t < total + k; ++t) {
        Eigen::VectorXd next = c;
        for (std::size_t i = 0; i < k; ++i) {
            next.noalias() += spec.coeffs[i] * y.row(static_cast<Eigen::Index>(t - i - 1)).transpose();
        }
        for (Eigen::Index j = 0; j < e.size(); ++j) {
            e(j) = rng.normal();
        }
        next.noalias() += chol * e;
        y.row(static_cast<Eigen::Index>(t)) = next.transpose();
    }

    timeseries::SeriesMatrix out;
    out.start = spec.start;
    if (spec.labels.empty()) {
        for (std::size_t j = 0; j < m; ++j) {
            out.labels.push_back("y" + std::to_string(j));
        }
    } else {
        out.labels = spec.labels;
    }
    out.values = y.bottomRows(static_cast<Eigen::Index>(spec.length));
    return out;
}

namespace {

std::uint64_t draw(Rng& rng, const MetricDistribution& d) {
    switch (d.family) {
        case Family::negative_binomial:
            return rng.negative_binomial(d.mean, d.shape);
        case Family::lognormal: {
            const double mu = std::log(d.mean) - 0.5 * d.shape * d.shape;
            return static_cast<std::uint64_t>(std::llround(std::exp(rng.normal(mu, d.shape))));
        }
    }
    return 0;
}

void check(const MetricDistribution& d, std::size_t index) {
    const bool ok = std::isfinite(d.mean) && std::isfinite(d.shape) && d.mean > 0.0 &&
                    (d.family == Family::negative_binomial ? d.shape > 0.0 : d.shape >= 0.0);
    if (!ok) {
        throw PreconditionError("simulate_posts: invalid parameters for metric " + std::to_string(index));
    }
}

}  // namespace

std::vector<ingest::PostRecord> simulate_posts(const PostSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw PreconditionError("simulate_posts: n must be at least 1");
    }
    if (!spec.window.valid()) {
        throw PreconditionError("simulate_posts: window end precedes window start");
    }
    for (std::size_t i = 0; i < spec.metrics.size(); ++i) {
        check(spec.metrics[i], i);
    }
    Rng rng = Rng::substream(seed, "simulate-posts");
    const std::uint64_t seconds = static_cast<std::uint64_t>(spec.window.days()) * 86400;
    const Timestamp origin{std::chrono::sys_seconds{spec.window.first}};
    std::vector<ingest::PostRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ingest::PostRecord p;
        p.id = spec.id_prefix + std::to_string(i);
        p.created_at = origin + std::chrono::seconds{static_cast<std::int64_t>(rng.below(seconds))};
        p.author_followers = draw(rng, spec.metrics[0]);
        p.author_tweet_count = draw(rng, spec.metrics[1]);
        p.retweet_count = draw(rng, spec.metrics[2]);
        p.reply_count = draw(rng, spec.metrics[3]);
        p.like_count = draw(rng, spec.metrics[4]);
        p.quote_count = draw(rng, spec.metrics[5]);
        p.stream_label = spec.label;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace infospread::synth
