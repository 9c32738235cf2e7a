#include "infospread/engagement/engagement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "infospread/common/error.hpp"

namespace infospread::engagement {

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::followers: return "followers";
        case Metric::tweets: return "tweets";
        case Metric::retweets: return "retweets";
        case Metric::replies: return "replies";
        case Metric::likes: return "likes";
        case Metric::quote_count: return "quote_count";
    }
    return "?";
}

double metric_value(const ingest::PostRecord& p, Metric m) noexcept {
    switch (m) {
        case Metric::followers: return static_cast<double>(p.author_followers);
        case Metric::tweets: return static_cast<double>(p.author_tweet_count);
        case Metric::retweets: return static_cast<double>(p.retweet_count);
        case Metric::replies: return static_cast<double>(p.reply_count);
        case Metric::likes: return static_cast<double>(p.like_count);
        case Metric::quote_count: return static_cast<double>(p.quote_count);
    }
    return 0.0;
}

SampleStats describe(std::span<const double> values) {
    SampleStats s;
    s.n = values.size();
    if (s.n == 0) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.std_population = std::sqrt(ss / static_cast<double>(s.n));
    s.std_sample = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    return s;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw PreconditionError("welch_t_test: each sample needs at least two values");
    }
    const SampleStats sa = describe(a);
    const SampleStats sb = describe(b);
    const double va = sa.std_sample * sa.std_sample / static_cast<double>(sa.n);
    const double vb = sb.std_sample * sb.std_sample / static_cast<double>(sb.n);
    WelchResult r;
    if (va == 0.0 && vb == 0.0) {
        r.skipped = true;
        r.skip_reason = "constant_in_both_samples";
        return r;
    }
    const double se2 = va + vb;
    r.t = (sa.mean - sb.mean) / std::sqrt(se2);
    r.df = se2 * se2 /
           (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
    const boost::math::students_t dist(r.df);
    r.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))), 0.0, 1.0);
    return r;
}

EngagementSummary metric_summary(std::span<const ingest::PostRecord> posts_a,
                                 std::span<const ingest::PostRecord> posts_b, double alpha) {
    if (posts_a.empty() || posts_b.empty()) {
        throw PreconditionError("metric_summary: both post lists must be non-empty");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw PreconditionError("metric_summary: alpha must lie in (0, 1)");
    }
    EngagementSummary summary;
    summary.alpha = alpha;
    for (Metric m : kAllMetrics) {
        std::vector<double> a;
        std::vector<double> b;
        a.reserve(posts_a.size());
        b.reserve(posts_b.size());
        for (const auto& p : posts_a) {
            a.push_back(metric_value(p, m));
        }
        for (const auto& p : posts_b) {
            b.push_back(metric_value(p, m));
        }
        MetricComparison c;
        c.metric = m;
        c.a = describe(a);
        c.b = describe(b);
        if (a.size() >= 2 && b.size() >= 2) {
            c.test = welch_t_test(a, b);
        } else {
            c.test.skipped = true;
            c.test.skip_reason = "sample_too_small";
        }
        c.significant = !c.test.skipped && c.test.p_value <= alpha;
        summary.metrics.push_back(std::move(c));
    }
    return summary;
}

double fisher_pearson_skewness(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw PreconditionError("fisher_pearson_skewness: need at least three values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    if (m2 <= 0.0) {
        throw NumericalError("fisher_pearson_skewness: zero variance, skewness undefined");
    }
    return m3 / std::pow(m2, 1.5);
}

LagStats lag_days(std::span<const ingest::DebunkRecord> debunks, std::span<const ingest::MatchedPost> disinfo_posts) {
    std::map<std::string, Date> debunk_dates;
    for (const auto& d : debunks) {
        debunk_dates.emplace(d.id, d.date_published);
    }
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& m : disinfo_posts) {
        if (m.label != ingest::StreamLabel::disinformation) {
            continue;
        }
        const Date post_day = to_date(m.post.created_at);
        for (const auto& id : m.debunk_ids) {
            const auto it = debunk_dates.find(id);
            if (it == debunk_dates.end()) {
                continue;
            }
            auto& [sum, count] = acc[id];
            sum += static_cast<double>(days_between(it->second, post_day));
            ++count;
        }
    }
    LagStats stats;
    std::vector<double> lags;
    for (const auto& [id, entry] : acc) {
        const double mean = entry.first / static_cast<double>(entry.second);
        stats.per_debunk.push_back({id, mean, entry.second});
        lags.push_back(mean);
    }
    if (lags.size() >= 3) {
        try {
            stats.skewness_g1 = fisher_pearson_skewness(lags);
        } catch (const NumericalError&) {
            stats.skewness_g1.reset();
        }
    }
    return stats;
}

std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width) {
    if (!(bin_width > 0.0)) {
        throw PreconditionError("histogram: bin width must be positive");
    }
    std::vector<HistogramBin> bins;
    if (values.empty()) {
        return bins;
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double start = std::floor(*lo_it / bin_width) * bin_width;
    const auto nbins = static_cast<std::size_t>(std::floor((*hi_it - start) / bin_width)) + 1;
    bins.resize(nbins);
    for (std::size_t i = 0; i < nbins; ++i) {
        bins[i].lower = start + static_cast<double>(i) * bin_width;
        bins[i].upper = bins[i].lower + bin_width;
    }
    for (double v : values) {
        auto idx = static_cast<std::size_t>(std::floor((v - start) / bin_width));
        idx = std::min(idx, nbins - 1);
        ++bins[idx].count;
    }
    return bins;
}

std::vector<HashtagCount> top_hashtags(std::span<const ingest::PostRecord> posts, std::size_t n) {
    if (n == 0) {
        throw PreconditionError("top_hashtags: n must be at least 1");
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& p : posts) {
        for (const auto& tag : p.hashtags) {
            std::string t;
            t.reserve(tag.size());
            for (char c : tag) {
                t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            }
            if (!t.empty() && t.front() == '#') {
                t.erase(0, 1);
            }
            if (!t.empty()) {
                ++counts[t];
            }
        }
    }
    std::vector<HashtagCount> ranked;
    ranked.reserve(counts.size());
    for (const auto& [tag, count] : counts) {
        ranked.push_back({tag, count});
    }
    // counts is ordered lexicographically, so a stable sort keeps ties in that order.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const HashtagCount& a, const HashtagCount& b) { return a.count > b.count; });
    if (ranked.size() > n) {
        ranked.resize(n);
    }
    return ranked;
}

std::vector<CountryPair> country_pairs(std::span<const ingest::DebunkRecord> debunks,
                                       std::span<const ingest::MatchedPost> disinfo_posts) {
    std::map<std::string, const ingest::DebunkRecord*> by_id;
    for (const auto& d : debunks) {
        by_id.emplace(d.id, &d);
    }
    std::vector<CountryPair> pairs;
    for (const auto& m : disinfo_posts) {
        if (m.label != ingest::StreamLabel::disinformation || !m.author_country) {
            continue;
        }
        for (const auto& id : m.debunk_ids) {
            const auto it = by_id.find(id);
            if (it == by_id.end() || !it->second->affected_countries) {
                continue;
            }
            for (const auto& affected : *it->second->affected_countries) {
                pairs.push_back({affected, *m.author_country});
            }
        }
    }
    return pairs;
}

std::vector<CrosstabRow> country_crosstab(std::span<const CountryPair> pairs, std::size_t top_n) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (const auto& p : pairs) {
        ++counts[{p.affected, p.author}];
    }
    std::vector<CrosstabRow> rows;
    for (const auto& [key, count] : counts) {
        rows.push_back({key.first, key.second, count, 0.0});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CrosstabRow& a, const CrosstabRow& b) { return a.count > b.count; });
    std::size_t rest = 0;
    if (rows.size() > top_n) {
        for (std::size_t i = top_n; i < rows.size(); ++i) {
            rest += rows[i].count;
        }
        rows.resize(top_n);
    }
    if (rest > 0) {
        rows.push_back({"Other", "", rest, 0.0});
    }
    const auto total = static_cast<double>(pairs.size());
    for (auto& r : rows) {
        r.percent = std::round(1000.0 * static_cast<double>(r.count) / total) / 10.0;
    }
    return rows;
}

}  // namespace infospread::engagement
