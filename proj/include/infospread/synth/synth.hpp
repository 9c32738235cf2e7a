#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infospread/common/date.hpp"
#include "infospread/ingest/records.hpp"
#include "infospread/timeseries/series.hpp"

namespace infospread::synth {

/// Steps simulated and discarded per lag before the first kept observation.
inline constexpr std::size_t kBurnInPerLag = 10;

struct VarSpec {
    std::vector<std::string> labels;     // defaults to y0..y{m-1}
    std::vector<Eigen::MatrixXd> coeffs;  // A_1..A_k, each m x m
    Eigen::VectorXd intercepts;           // empty means zero
    Eigen::MatrixXd sigma;                // symmetric PD, or all zeros for a noise-free run
    std::size_t length = 0;               // T
    std::uint64_t seed = 0;
    bool require_stationary = false;
    Date start = Date{std::chrono::year{2022} / 2 / 1};

    [[nodiscard]] std::size_t dim() const noexcept {
        return coeffs.empty() ? 0 : static_cast<std::size_t>(coeffs.front().rows());
    }
    [[nodiscard]] std::size_t lag() const noexcept { return coeffs.size(); }
};

/// Draws T observations of y_t = c + sum A_i y_{t-i} + L e_t with e_t iid
/// N(0, I) and L = cholesky(sigma), after a zero-initialized burn-in of
/// 10 * k steps. Throws PreconditionError for inconsistent shapes or an
/// explosive spec when require_stationary is set, DecompositionError when
/// sigma is not positive definite.
[[nodiscard]] timeseries::SeriesMatrix simulate_var(const VarSpec& spec);

enum class Family { negative_binomial, lognormal };

/// Negative binomial: mean and dispersion r (variance mean + mean^2 / r).
/// Lognormal: mean of the distribution and sd of log values; draws are
/// rounded to the nearest integer.
struct MetricDistribution {
    Family family = Family::negative_binomial;
    double mean = 1.0;
    double shape = 1.0;
};

struct PostSpec {
    std::string id_prefix = "p";
    DateRange window{Date{std::chrono::year{2022} / 2 / 1}, Date{std::chrono::year{2022} / 4 / 30}};
    // followers, tweets, retweets, replies, likes, quote_count
    std::array<MetricDistribution, 6> metrics{};
    std::optional<ingest::StreamLabel> label;
};

/// n posts with uniform timestamps over the window. Throws PreconditionError
/// for n == 0 or invalid distribution parameters.
[[nodiscard]] std::vector<ingest::PostRecord> simulate_posts(const PostSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace infospread::synth
