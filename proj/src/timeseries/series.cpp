#include "infospread/timeseries/series.hpp"

#include <cmath>
#include <map>

#include "infospread/common/csv.hpp"
#include "infospread/common/error.hpp"

namespace infospread::timeseries {

Eigen::Index SeriesMatrix::column(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) {
            return static_cast<Eigen::Index>(i);
        }
    }
    throw PreconditionError("series matrix has no column '" + std::string(label) + "'");
}

SeriesMatrix stack(std::span<const DailySeries> series) {
    if (series.empty()) {
        throw PreconditionError("stack: no series given");
    }
    SeriesMatrix m;
    m.start = series.front().start;
    const std::size_t T = series.front().size();
    m.values.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(series.size()));
    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto& s = series[j];
        if (s.start != m.start || s.size() != T) {
            throw PreconditionError("stack: series '" + s.label + "' is not aligned with '" + series.front().label + "'");
        }
        m.labels.push_back(s.label);
        for (std::size_t t = 0; t < T; ++t) {
            m.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = s.values[t];
        }
    }
    return m;
}

DailySeries column_series(const SeriesMatrix& m, Eigen::Index col) {
    DailySeries s;
    s.label = m.labels.at(static_cast<std::size_t>(col));
    s.start = m.start;
    s.values.resize(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index t = 0; t < m.rows(); ++t) {
        s.values[static_cast<std::size_t>(t)] = m.values(t, col);
    }
    return s;
}

namespace {

template <typename Range, typename Get>
DailySeries count_by_day(const Range& items, DateRange window, bool include_retweets, std::string label, Get get) {
    if (!window.valid()) {
        throw PreconditionError("daily_counts: window end precedes window start");
    }
    DailySeries s;
    s.label = std::move(label);
    s.start = window.first;
    s.values.assign(window.days(), 0.0);
    for (const auto& item : items) {
        const ingest::PostRecord& p = get(item);
        if (!include_retweets && p.is_retweet) {
            continue;
        }
        const Date d = to_date(p.created_at);
        if (window.contains(d)) {
            s.values[static_cast<std::size_t>(days_between(window.first, d))] += 1.0;
        }
    }
    return s;
}

}  // namespace

DailySeries daily_counts(std::span<const ingest::PostRecord> posts, DateRange window, bool include_retweets,
                         std::string label) {
    return count_by_day(posts, window, include_retweets, std::move(label),
                        [](const ingest::PostRecord& p) -> const ingest::PostRecord& { return p; });
}

DailySeries daily_counts(std::span<const ingest::MatchedPost> posts, DateRange window, bool include_retweets,
                         std::string label) {
    return count_by_day(posts, window, include_retweets, std::move(label),
                        [](const ingest::MatchedPost& m) -> const ingest::PostRecord& { return m.post; });
}

DailySeries rolling_mean(const DailySeries& series, std::size_t window) {
    if (window == 0) {
        throw PreconditionError("rolling_mean: window must be at least 1");
    }
    DailySeries out{series.label, series.start, std::vector<double>(series.size())};
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t from = i + 1 >= window ? i + 1 - window : 0;
        double sum = 0.0;
        for (std::size_t j = from; j <= i; ++j) {
            sum += series.values[j];
        }
        out.values[i] = sum / static_cast<double>(i + 1 - from);
    }
    return out;
}

DailySeries difference(const DailySeries& series, std::size_t order) {
    if (order == 0) {
        throw PreconditionError("difference: order must be at least 1");
    }
    if (series.size() <= order) {
        throw PreconditionError("difference: series of length " + std::to_string(series.size()) +
                                " too short for order " + std::to_string(order));
    }
    std::vector<double> v = series.values;
    for (std::size_t k = 0; k < order; ++k) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            v[i] = v[i + 1] - v[i];
        }
        v.pop_back();
    }
    return {series.label, series.start + std::chrono::days{static_cast<int>(order)}, std::move(v)};
}

DailySeries log1p(const DailySeries& series) {
    DailySeries out = series;
    for (double& v : out.values) {
        if (v < 0.0) {
            throw PreconditionError("log1p: negative value in series '" + series.label + "'");
        }
        v = std::log1p(v);
    }
    return out;
}

std::string to_csv(std::span<const DailySeries> series) {
    std::string out = "date,label,count\n";
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out += format_date(s.date_at(i)) + "," + csv::escape(s.label) + "," + csv::real(s.values[i]) + "\n";
        }
    }
    return out;
}

std::vector<DailySeries> from_csv(std::string_view content) {
    const csv::Table table(csv::parse(content));
    const std::size_t c_date = table.column("date");
    const std::size_t c_label = table.column("label");
    const std::size_t c_count = table.column("count");
    std::vector<DailySeries> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Date d = parse_date(table.get(i, c_date));
        const std::string& label = table.get(i, c_label);
        double value = 0.0;
        try {
            value = std::stod(table.get(i, c_count));
        } catch (const std::exception&) {
            throw FormatError("series csv row " + std::to_string(i + 2) + ": bad count");
        }
        auto [it, inserted] = index.try_emplace(label, out.size());
        if (inserted) {
            out.push_back({label, d, {}});
        }
        DailySeries& s = out[it->second];
        if (s.date_at(s.size()) != d) {
            throw FormatError("series csv row " + std::to_string(i + 2) + ": non-consecutive date for '" + label + "'");
        }
        s.values.push_back(value);
    }
    return out;
}

}  // namespace infospread::timeseries
