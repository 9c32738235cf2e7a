#include <doctest.h>

#include <cmath>

#include "infospread/causality/var.hpp"
#include "infospread/common/error.hpp"
#include "infospread/engagement/engagement.hpp"
#include "infospread/synth/synth.hpp"

using namespace infospread;
using namespace infospread::synth;

namespace {

VarSpec base_spec() {
    VarSpec s;
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.1, 0.0, 0.4;
    s.coeffs = {a};
    s.sigma = Eigen::MatrixXd::Identity(2, 2);
    s.length = 500;
    s.seed = 1;
    return s;
}

MetricDistribution nb(double mean, double r) { return {Family::negative_binomial, mean, r}; }

}  // namespace

TEST_CASE("null process is all zeros") {
    VarSpec s = base_spec();
    s.coeffs = {Eigen::MatrixXd::Zero(2, 2)};
    s.sigma = Eigen::MatrixXd::Zero(2, 2);
    const auto out = simulate_var(s);
    CHECK(out.rows() == 500);
    CHECK(out.values.isZero(0.0));
}

TEST_CASE("simulate_var is deterministic and exactly T long") {
    const VarSpec s = base_spec();
    const auto a = simulate_var(s);
    const auto b = simulate_var(s);
    CHECK(a.values == b.values);
    CHECK(a.rows() == static_cast<Eigen::Index>(s.length));
    CHECK(a.labels == std::vector<std::string>{"y0", "y1"});
    VarSpec other = s;
    other.seed = 2;
    CHECK(simulate_var(other).values != a.values);
}

TEST_CASE("innovation covariance is recovered") {
    VarSpec s = base_spec();
    s.sigma.resize(2, 2);
    s.sigma << 2, 1, 1, 2;
    s.length = 100'000;
    const auto model = causality::fit_var(simulate_var(s), 1);
    CHECK((model.sigma - s.sigma).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("intercepts move the mean") {
    VarSpec s = base_spec();
    s.intercepts = Eigen::Vector2d(1.0, 2.0);
    s.length = 20'000;
    const auto out = simulate_var(s);
    // Stationary mean (I - A)^-1 c.
    const Eigen::Vector2d mu = (Eigen::Matrix2d::Identity() - s.coeffs[0]).inverse() * s.intercepts;
    CHECK(out.values.col(0).mean() == doctest::Approx(mu(0)).epsilon(0.05));
    CHECK(out.values.col(1).mean() == doctest::Approx(mu(1)).epsilon(0.05));
}

TEST_CASE("simulate_var errors") {
    VarSpec s = base_spec();
    s.sigma.resize(2, 2);
    s.sigma << 1, 2, 2, 1;
    CHECK_THROWS_AS((void)simulate_var(s), DecompositionError);

    VarSpec explosive = base_spec();
    explosive.coeffs[0] << 1.1, 0.0, 0.0, 0.5;
    explosive.require_stationary = true;
    try {
        (void)simulate_var(explosive);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("spectral radius") != std::string::npos);
    }
    explosive.require_stationary = false;
    explosive.length = 20;
    CHECK_NOTHROW((void)simulate_var(explosive));

    VarSpec bad = base_spec();
    bad.coeffs.push_back(Eigen::MatrixXd::Zero(3, 3));
    CHECK_THROWS_AS((void)simulate_var(bad), PreconditionError);
    VarSpec empty = base_spec();
    empty.length = 0;
    CHECK_THROWS_AS((void)simulate_var(empty), PreconditionError);
}

TEST_CASE("simulate_posts") {
    PostSpec a;
    PostSpec b;
    a.id_prefix = "dis";
    b.id_prefix = "deb";
    for (auto& m : a.metrics) m = nb(5.0, 1.0);
    for (auto& m : b.metrics) m = nb(5.0, 1.0);
    a.metrics[2] = nb(15.0, 0.8);
    b.metrics[2] = nb(2.0, 0.8);
    a.metrics[0] = {Family::lognormal, 1000.0, 1.5};
    b.metrics[0] = {Family::lognormal, 1000.0, 1.5};

    CHECK_THROWS_AS((void)simulate_posts(a, 0, 1), PreconditionError);
    const auto pa = simulate_posts(a, 5000, 1);
    const auto pb = simulate_posts(b, 5000, 2);
    REQUIRE(pa.size() == 5000);
    for (const auto& p : pa) {
        CHECK(a.window.contains(to_date(p.created_at)));
    }
    const auto summary = engagement::metric_summary(pa, pb, 0.01);
    CHECK(summary.metrics[2].significant);
    CHECK(summary.metrics[2].a.mean == doctest::Approx(15.0).epsilon(0.05));
    CHECK(summary.metrics[2].b.mean == doctest::Approx(2.0).epsilon(0.05));
    CHECK(summary.metrics[0].a.mean == doctest::Approx(1000.0).epsilon(0.15));

    const auto again = simulate_posts(a, 5000, 1);
    bool same = true;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        same = same && pa[i].id == again[i].id && pa[i].created_at == again[i].created_at &&
               pa[i].retweet_count == again[i].retweet_count && pa[i].author_followers == again[i].author_followers;
    }
    CHECK(same);

    PostSpec invalid = a;
    invalid.metrics[3] = nb(-1.0, 1.0);
    CHECK_THROWS_AS((void)simulate_posts(invalid, 10, 1), PreconditionError);
    invalid.metrics[3] = nb(1.0, 0.0);
    CHECK_THROWS_AS((void)simulate_posts(invalid, 10, 1), PreconditionError);
}
