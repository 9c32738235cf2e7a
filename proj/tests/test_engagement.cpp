#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/engagement/engagement.hpp"

using namespace infospread;
using namespace infospread::engagement;

namespace {

double moment_skew(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double x : v) {
        m2 += (x - mean) * (x - mean) / n;
        m3 += (x - mean) * (x - mean) * (x - mean) / n;
    }
    return m3 / std::pow(m2, 1.5);
}

ingest::PostRecord post_with(std::string id, std::uint64_t retweets, std::vector<std::string> tags = {}) {
    ingest::PostRecord p;
    p.id = std::move(id);
    p.retweet_count = retweets;
    p.like_count = 2 * retweets;
    p.hashtags = std::move(tags);
    return p;
}

ingest::MatchedPost matched(const std::string& id, const std::string& ts, std::vector<std::string> debunks,
                            std::optional<std::string> country = std::nullopt) {
    ingest::MatchedPost m;
    m.post.id = id;
    m.post.created_at = parse_timestamp(ts);
    m.debunk_ids = std::move(debunks);
    m.author_country = std::move(country);
    return m;
}

ingest::DebunkRecord debunk(const std::string& id, const std::string& date,
                            std::optional<std::vector<std::string>> affected = std::nullopt) {
    ingest::DebunkRecord d;
    d.id = id;
    d.date_published = parse_date(date);
    d.affected_countries = std::move(affected);
    return d;
}

}  // namespace

TEST_CASE("welch t matches the closed form") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {2, 4, 6, 8, 10};
    const WelchResult r = welch_t_test(a, b);
    // se^2 = 2.5/5 + 10/5; df = se^4 / ((0.5^2 + 2^2) / 4)
    const double t = -3.0 / std::sqrt(2.5);
    const double df = 6.25 / (0.25 / 4.0 + 4.0 / 4.0);
    CHECK(std::abs(r.t - t) < 1e-10);
    CHECK(std::abs(r.df - df) < 1e-10);
    CHECK(std::abs(r.p_value - 0.10753119493062718) < 1e-10);  // scipy.stats.ttest_ind(equal_var=False)

    const WelchResult swapped = welch_t_test(b, a);
    CHECK(swapped.t == doctest::Approx(-r.t));
    CHECK(swapped.p_value == doctest::Approx(r.p_value));

    const WelchResult same = welch_t_test(a, a);
    CHECK(same.t == 0.0);
    CHECK(same.p_value == doctest::Approx(1.0));

    const std::vector<double> c = {3, 3, 3};
    const WelchResult skipped = welch_t_test(c, c);
    CHECK(skipped.skipped);
    CHECK_FALSE(skipped.skip_reason.empty());
    CHECK_THROWS_AS((void)welch_t_test(std::vector<double>{1}, b), PreconditionError);
}

TEST_CASE("describe reports sample and population std") {
    const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
    const SampleStats s = describe(v);
    CHECK(s.n == 8);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.std_population == doctest::Approx(2.0));
    CHECK(s.std_sample == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("metric_summary flags large retweet differences") {
    std::vector<ingest::PostRecord> a;
    std::vector<ingest::PostRecord> b;
    for (int i = 0; i < 50; ++i) {
        a.push_back(post_with("a" + std::to_string(i), 10 + static_cast<std::uint64_t>(i % 7)));
        b.push_back(post_with("b" + std::to_string(i), static_cast<std::uint64_t>(i % 3)));
    }
    const EngagementSummary s = metric_summary(a, b, 0.01);
    REQUIRE(s.metrics.size() == 6);
    for (const auto& m : s.metrics) {
        CHECK(m.significant == (!m.test.skipped && m.test.p_value <= 0.01));
        CHECK(m.test.p_value >= 0.0);
        CHECK(m.test.p_value <= 1.0);
    }
    const auto& retweets = s.metrics[2];
    CHECK(retweets.metric == Metric::retweets);
    CHECK(retweets.significant);
    CHECK(s.metrics[0].test.skipped);  // followers are all zero
    CHECK_THROWS_AS((void)metric_summary(a, std::vector<ingest::PostRecord>{}), PreconditionError);
}

TEST_CASE("fisher-pearson skewness") {
    CHECK(std::abs(fisher_pearson_skewness(std::vector<double>{1, 2, 3})) < 1e-12);
    CHECK(std::abs(fisher_pearson_skewness(std::vector<double>{-4, -1, 0, 1, 4})) < 1e-12);
    const std::vector<double> v = {1, 1, 1, 10};
    CHECK(std::abs(fisher_pearson_skewness(v) - moment_skew(v)) < 1e-12);
    CHECK(std::abs(fisher_pearson_skewness(v) - 2.0 / std::sqrt(3.0)) < 1e-12);
    CHECK_THROWS_AS((void)fisher_pearson_skewness(std::vector<double>{1, 2}), PreconditionError);
    CHECK_THROWS_AS((void)fisher_pearson_skewness(std::vector<double>{2, 2, 2}), NumericalError);

    Rng rng = Rng::substream(3, "skew-props");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(30);
        for (auto& e : x) {
            e = rng.gamma(1.5);
        }
        const double g = fisher_pearson_skewness(x);
        std::vector<double> affine = x;
        std::vector<double> negated = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            affine[i] = 3.5 * x[i] - 20.0;
            negated[i] = -x[i];
        }
        CHECK(fisher_pearson_skewness(affine) == doctest::Approx(g).epsilon(1e-10));
        CHECK(fisher_pearson_skewness(negated) == doctest::Approx(-g).epsilon(1e-10));
    }
}

TEST_CASE("lag_days per debunk") {
    const std::vector<ingest::DebunkRecord> debunks = {debunk("d1", "2022-03-01"), debunk("d2", "2022-03-10"),
                                                       debunk("d3", "2022-03-20")};
    const std::vector<ingest::MatchedPost> posts = {
        matched("p1", "2022-03-01T00:05:00Z", {"d1"}),
        matched("p2", "2022-03-01T23:55:00Z", {"d1"}),
        matched("p3", "2022-03-11T08:00:00Z", {"d2"}),
        matched("p4", "2022-03-13T22:00:00Z", {"d2"}),
        matched("p5", "2022-03-15T00:00:00Z", {"d3"}),
    };
    const LagStats s = lag_days(debunks, posts);
    REQUIRE(s.per_debunk.size() == 3);
    CHECK(s.per_debunk[0].mean_lag_days == 0.0);
    CHECK(s.per_debunk[1].mean_lag_days == 2.0);
    CHECK(s.per_debunk[1].posts == 2);
    CHECK(s.per_debunk[2].mean_lag_days == -5.0);  // posts may predate the debunk
    REQUIRE(s.skewness_g1.has_value());
    CHECK(*s.skewness_g1 == doctest::Approx(moment_skew({0.0, 2.0, -5.0})));
}

TEST_CASE("histogram bins") {
    const std::vector<double> v = {-1.0, 0.0, 0.5, 1.0, 2.5};
    const auto bins = histogram(v, 1.0);
    REQUIRE(bins.size() == 4);
    CHECK(bins.front().lower == -1.0);
    CHECK(bins.back().upper == 3.0);
    std::size_t total = 0;
    for (const auto& b : bins) {
        total += b.count;
    }
    CHECK(total == v.size());
    CHECK(bins[1].count == 2);
}

TEST_CASE("top_hashtags folds case and breaks ties lexicographically") {
    std::vector<ingest::PostRecord> posts = {post_with("1", 0, {"a"}), post_with("2", 0, {"a"}), post_with("3", 0, {"b"})};
    posts[1].hashtags = {"A"};
    const auto top = top_hashtags(posts, 10);
    REQUIRE(top.size() == 2);
    CHECK(top[0].hashtag == "a");
    CHECK(top[0].count == 2);
    CHECK(top[1].hashtag == "b");

    // 20-post fixture against an exhaustive count, in two post orders.
    Rng rng = Rng::substream(5, "hashtags");
    const std::vector<std::string> vocab = {"ukraine", "foxnews", "nato", "putin", "war", "peace"};
    std::vector<ingest::PostRecord> many;
    std::map<std::string, std::size_t> truth;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::string> tags;
        for (int j = 0; j < 3; ++j) {
            tags.push_back(vocab[rng.below(vocab.size())]);
            ++truth[tags.back()];
        }
        many.push_back(post_with(std::to_string(i), 0, tags));
    }
    const auto ranked = top_hashtags(many, 100);
    CHECK(ranked.size() == truth.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(ranked[i].count == truth[ranked[i].hashtag]);
        if (i > 0) {
            CHECK((ranked[i - 1].count > ranked[i].count ||
                   (ranked[i - 1].count == ranked[i].count && ranked[i - 1].hashtag < ranked[i].hashtag)));
        }
    }
    std::reverse(many.begin(), many.end());
    const auto reversed = top_hashtags(many, 100);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(reversed[i].hashtag == ranked[i].hashtag);
    }
    CHECK_THROWS_AS((void)top_hashtags(posts, 0), PreconditionError);
}

TEST_CASE("country crosstab") {
    const std::vector<CountryPair> single = {{"Ukraine", "Russia"}};
    const auto one = country_crosstab(single);
    REQUIRE(one.size() == 1);
    CHECK(one[0].percent == 100.0);

    std::vector<CountryPair> pairs;
    std::map<std::pair<std::string, std::string>, std::size_t> truth;
    const std::vector<std::pair<std::string, std::string>> layout = {
        {"Ukraine", "Russia"}, {"Ukraine", "Russia"}, {"Ukraine", "Russia"}, {"Ukraine", "United States"},
        {"Poland", "Russia"},  {"Poland", "Russia"},  {"Germany", "India"},  {"Germany", "Germany"},
        {"Latvia", "Latvia"},  {"Ukraine", "India"},  {"France", "France"},  {"Spain", "Spain"}};
    for (const auto& [a, b] : layout) {
        pairs.push_back({a, b});
        ++truth[{a, b}];
    }
    const auto table = country_crosstab(pairs, 3);
    REQUIRE(table.size() == 4);
    CHECK(table[0].affected == "Ukraine");
    CHECK(table[0].author == "Russia");
    CHECK(table[0].count == 3);
    CHECK(table[0].percent == 25.0);
    CHECK(table[1].affected == "Poland");
    CHECK(table.back().affected == "Other");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : table) {
        sum += row.percent;
        count += row.count;
        if (row.affected != "Other") {
            CHECK(row.count == truth[{row.affected, row.author}]);
        }
    }
    CHECK(count == pairs.size());
    CHECK(std::abs(sum - 100.0) <= 0.5);

    const std::vector<ingest::DebunkRecord> debunks = {debunk("d1", "2022-03-01", std::vector<std::string>{"Ukraine", "Poland"}),
                                                       debunk("d2", "2022-03-01")};
    const std::vector<ingest::MatchedPost> posts = {matched("p1", "2022-03-02T00:00:00Z", {"d1"}, "Russia"),
                                                    matched("p2", "2022-03-02T00:00:00Z", {"d1"}),
                                                    matched("p3", "2022-03-02T00:00:00Z", {"d2"}, "India")};
    const auto derived = country_pairs(debunks, posts);
    REQUIRE(derived.size() == 2);
    CHECK(derived[0].affected == "Ukraine");
    CHECK(derived[1].author == "Russia");
}
