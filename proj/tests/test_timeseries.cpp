#include <doctest.h>

#include <cmath>

#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/timeseries/adf.hpp"
#include "infospread/timeseries/series.hpp"
#include "support.hpp"

using namespace infospread;
using namespace infospread::timeseries;

namespace {

Date d(int y, unsigned m, unsigned day) { return Date{std::chrono::year{y} / m / day}; }

ingest::PostRecord post_at(const std::string& id, const std::string& ts, bool retweet = false) {
    ingest::PostRecord p;
    p.id = id;
    p.created_at = parse_timestamp(ts);
    p.is_retweet = retweet;
    return p;
}

std::vector<double> white_noise(std::uint64_t seed, std::size_t n) {
    Rng rng = Rng::substream(seed, "test-white-noise");
    std::vector<double> v(n);
    for (auto& x : v) {
        x = rng.normal();
    }
    return v;
}

}  // namespace

TEST_CASE("daily_counts fills gaps with zeros and honours UTC days") {
    std::vector<ingest::PostRecord> posts = {
        post_at("a", "2022-02-01T10:00:00Z"),
        post_at("b", "2022-02-01T23:30:00-02:00"),  // 2022-02-02 UTC
        post_at("c", "2022-02-04T00:00:00Z", true),
        post_at("d", "2022-03-01T00:00:00Z"),  // outside
    };
    const DateRange w{d(2022, 2, 1), d(2022, 2, 5)};
    const DailySeries s = daily_counts(posts, w);
    CHECK(s.values == std::vector<double>{1, 1, 0, 1, 0});
    CHECK(s.start == w.first);
    const DailySeries no_rt = daily_counts(posts, w, false);
    CHECK(no_rt.values == std::vector<double>{1, 1, 0, 0, 0});
}

TEST_CASE("rolling mean, differencing, log1p") {
    DailySeries s{"x", d(2022, 2, 1), {1, 2, 3, 4, 5, 6, 7, 8}};
    const DailySeries r = rolling_mean(s, 7);
    CHECK(r.values[0] == doctest::Approx(1.0));
    CHECK(r.values[1] == doctest::Approx(1.5));
    CHECK(r.values[6] == doctest::Approx(4.0));
    CHECK(r.values[7] == doctest::Approx(5.0));
    CHECK(rolling_mean(s, 1).values == s.values);
    CHECK_THROWS_AS((void)rolling_mean(s, 0), PreconditionError);

    const DailySeries diff = difference(s, 1);
    CHECK(diff.values == std::vector<double>(7, 1.0));
    CHECK(diff.start == d(2022, 2, 2));
    CHECK(difference(s, 2).values == std::vector<double>(6, 0.0));

    const DailySeries l = log1p(DailySeries{"x", d(2022, 2, 1), {0.0, std::exp(1.0) - 1.0}});
    CHECK(l.values[0] == 0.0);
    CHECK(l.values[1] == doctest::Approx(1.0));
}

TEST_CASE("series CSV round trip and stacking") {
    std::vector<DailySeries> series = {{"disinformation", d(2022, 2, 1), {3, 0, 5}}, {"debunk", d(2022, 2, 1), {1, 2, 0}}};
    const std::string text = to_csv(series);
    CHECK(text.rfind("date,label,count\n", 0) == 0);
    const auto back = from_csv(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].label == "disinformation");
    CHECK(back[1].values == series[1].values);
    CHECK(back[1].start == d(2022, 2, 1));

    const SeriesMatrix m = stack(series);
    CHECK(m.rows() == 3);
    CHECK(m.column("debunk") == 1);
    CHECK(m.values(2, 0) == 5.0);
    CHECK_THROWS_AS((void)m.column("nope"), PreconditionError);
    series[1].values.push_back(1);
    CHECK_THROWS_AS((void)stack(series), PreconditionError);
}

TEST_CASE("adf matches statsmodels adfuller") {
    for (const auto& c : test_support::oracles().at("adf")) {
        CAPTURE(c.at("name").get<std::string>());
        const auto values = c.at("series").get<std::vector<double>>();
        const AdfRegression reg =
            c.at("regression").get<std::string>() == "ct" ? AdfRegression::constant_and_trend : AdfRegression::constant;
        const AdfReport r = adf_test(values, default_adf_max_lag(values.size(), reg), reg);
        CHECK(r.n_lags_used == c.at("lags").get<std::size_t>());
        CHECK(r.n_obs == c.at("nobs").get<std::size_t>());
        CHECK(r.test_statistic == doctest::Approx(c.at("statistic").get<double>()).epsilon(1e-9));
        CHECK(r.p_value == doctest::Approx(c.at("p_value").get<double>()).epsilon(1e-7));
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.critical_values[i] == doctest::Approx(c.at("critical").at(i).get<double>()).epsilon(1e-9));
        }
        CHECK(r.critical_values[0] < r.critical_values[1]);
        CHECK(r.critical_values[1] < r.critical_values[2]);
    }
}

TEST_CASE("adf power on white noise and size on a random walk") {
    int noise_rejects = 0;
    int walk_keeps = 0;
    const int runs = 1000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const auto noise = white_noise(seed, 500);
        std::vector<double> walk(noise.size());
        double acc = 0.0;
        const auto steps = white_noise(seed + 10'000, 500);
        for (std::size_t i = 0; i < walk.size(); ++i) {
            acc += steps[i];
            walk[i] = acc;
        }
        const std::size_t lag = default_adf_max_lag(500);
        noise_rejects += adf_test(noise, lag).p_value < 0.01 ? 1 : 0;
        walk_keeps += adf_test(walk, lag).p_value >= 0.05 ? 1 : 0;
    }
    CHECK(noise_rejects == runs);
    // Nominal size 5%: the keep rate should sit near 0.95.
    CHECK(walk_keeps >= 930);
    CHECK(walk_keeps <= 970);
}

TEST_CASE("adf statistic is scale invariant") {
    auto v = white_noise(99, 300);
    const AdfReport base = adf_test(v, 8);
    for (auto& x : v) {
        x = 250.0 * x + 17.0;
    }
    const AdfReport scaled = adf_test(v, 8);
    CHECK(std::abs(scaled.test_statistic - base.test_statistic) < 1e-8);
    CHECK(scaled.n_lags_used == base.n_lags_used);
}

TEST_CASE("adf p-value surface is monotone and bounded") {
    double prev = 0.0;
    for (double tau = -25.0; tau <= 5.0; tau += 0.05) {
        const double p = mackinnon_p_value(tau, AdfRegression::constant);
        CHECK(p >= prev - 1e-12);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
    CHECK_THROWS_AS((void)adf_test(std::vector<double>(12, 1.0), 5), PreconditionError);
}
