#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace infospread {

/// The toolkit's single seedable generator.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++
/// standard). Distributions are implemented here rather than taken from
/// <random>, whose algorithms are implementation-defined, so that draws are
/// identical across standard libraries. Bump kVersion whenever any draw
/// sequence changes.
class Rng {
public:
    static constexpr std::string_view kVersion = "mt19937_64+splitmix/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Generator for a named purpose; consumers with distinct labels never
    /// share or shift each other's draws.
    [[nodiscard]] static Rng substream(std::uint64_t seed, std::string_view purpose);
    [[nodiscard]] static Rng substream(std::uint64_t seed, std::string_view purpose, std::uint64_t index);

    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    [[nodiscard]] double uniform();
    /// Uniform integer on [0, n).
    [[nodiscard]] std::uint64_t below(std::uint64_t n);
    [[nodiscard]] double normal();
    [[nodiscard]] double normal(double mean, double sd) { return mean + sd * normal(); }
    /// Gamma(shape, scale=1), Marsaglia-Tsang.
    [[nodiscard]] double gamma(double shape);
    [[nodiscard]] std::uint64_t poisson(double mean);
    /// Negative binomial parametrized by mean and dispersion r (variance mean + mean^2/r).
    [[nodiscard]] std::uint64_t negative_binomial(double mean, double dispersion);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;
/// Seed derived from (seed, purpose label, index); FNV-1a over the label.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0) noexcept;

}  // namespace infospread
