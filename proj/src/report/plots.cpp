#include "infospread/report/plots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "infospread/common/error.hpp"
#include "infospread/report/svg.hpp"

namespace infospread::report {

namespace {

constexpr double kWidth = 820;
constexpr double kHeight = 440;

std::vector<std::string> date_labels(const timeseries::DailySeries& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(format_date(s.date_at(i)).substr(5));  // MM-DD
    }
    return out;
}

void legend(Svg& svg, double x, double y, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double yy = y + 16.0 * static_cast<double>(i);
        svg.rect(x, yy - 9, 12, 10, palette(i));
        svg.text(x + 17, yy, labels[i], "start", 10.0);
    }
}

void check_aligned(const std::vector<timeseries::DailySeries>& series) {
    if (series.empty() || series.front().size() == 0) {
        throw PreconditionError("plot: no series to draw");
    }
    for (const auto& s : series) {
        if (s.size() != series.front().size() || s.start != series.front().start) {
            throw PreconditionError("plot: series are not aligned");
        }
    }
}

double max_or(double v, double fallback) { return v > 0.0 ? v : fallback; }

}  // namespace

std::string plot_stacked_series(const std::vector<timeseries::DailySeries>& series, const std::string& title) {
    check_aligned(series);
    const std::size_t n = series.front().size();
    std::vector<std::vector<double>> cumulative(series.size() + 1, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            cumulative[s + 1][i] = cumulative[s][i] + series[s].values[i];
        }
    }
    const double top = *std::max_element(cumulative.back().begin(), cumulative.back().end());
    Svg svg(kWidth, kHeight);
    svg.text(kWidth / 2, 22, title, "middle", 14.0);
    Panel p{70, 40, kWidth - 230, kHeight - 100, 0, static_cast<double>(n > 1 ? n - 1 : 1), 0, max_or(top * 1.05, 1.0)};
    for (std::size_t s = 0; s < series.size(); ++s) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; ++i) {
            pts.emplace_back(p.px(static_cast<double>(i)), p.py(cumulative[s + 1][i]));
        }
        for (std::size_t i = n; i-- > 0;) {
            pts.emplace_back(p.px(static_cast<double>(i)), p.py(cumulative[s][i]));
        }
        svg.polygon(pts, palette(s), 0.75);
    }
    p.axes(svg, 10, 6, date_labels(series.front()));
    svg.text(p.left + p.width / 2, kHeight - 20, "date", "middle", 11.0);
    svg.text(18, p.top + p.height / 2, "posts per day", "middle", 11.0,
             "transform=\"rotate(-90 18 " + num(p.top + p.height / 2) + ")\"");
    std::vector<std::string> labels;
    for (const auto& s : series) {
        labels.push_back(s.label);
    }
    legend(svg, p.left + p.width + 20, p.top + 12, labels);
    return svg.str();
}

std::string plot_histogram(const std::vector<engagement::HistogramBin>& bins, const std::vector<double>& samples,
                           const std::string& title) {
    if (bins.empty()) {
        throw PreconditionError("plot_histogram: no bins");
    }
    const double lo = bins.front().lower;
    const double hi = bins.back().upper;
    std::size_t peak = 0;
    for (const auto& b : bins) {
        peak = std::max(peak, b.count);
    }
    // Gaussian KDE, Silverman bandwidth, scaled to expected counts per bin.
    std::vector<std::pair<double, double>> density;
    const double n = static_cast<double>(samples.size());
    double dens_peak = 0.0;
    if (samples.size() >= 2) {
        const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : samples) {
            ss += (v - mean) * (v - mean);
        }
        const double sd = std::sqrt(ss / (n - 1.0));
        if (sd > 0.0) {
            const double h = 1.06 * sd * std::pow(n, -0.2);
            const double width = bins.front().upper - bins.front().lower;
            for (int i = 0; i <= 200; ++i) {
                const double x = lo + (hi - lo) * i / 200.0;
                double f = 0.0;
                for (double v : samples) {
                    const double z = (x - v) / h;
                    f += std::exp(-0.5 * z * z);
                }
                f *= width / (h * std::sqrt(2.0 * std::numbers::pi));
                density.emplace_back(x, f);
                dens_peak = std::max(dens_peak, f);
            }
        }
    }
    Svg svg(kWidth, kHeight);
    svg.text(kWidth / 2, 22, title, "middle", 14.0);
    Panel p{70, 40, kWidth - 110, kHeight - 100, lo, hi, 0,
            max_or(std::max(static_cast<double>(peak), dens_peak) * 1.1, 1.0)};
    for (const auto& b : bins) {
        const double x0 = p.px(b.lower);
        const double x1 = p.px(b.upper);
        const double y = p.py(static_cast<double>(b.count));
        svg.rect(x0, y, std::max(0.0, x1 - x0 - 1.0), p.top + p.height - y, palette(1), "fill-opacity=\"0.70\"");
    }
    if (!density.empty()) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [x, f] : density) {
            pts.emplace_back(p.px(x), p.py(f));
        }
        svg.polyline(pts, palette(0), 2.0);
    }
    p.axes(svg, 10, 6);
    svg.text(p.left + p.width / 2, kHeight - 20, "mean lag (days)", "middle", 11.0);
    svg.text(18, p.top + p.height / 2, "debunks", "middle", 11.0,
             "transform=\"rotate(-90 18 " + num(p.top + p.height / 2) + ")\"");
    return svg.str();
}

std::string plot_irf_grid(const std::vector<std::string>& labels, const std::vector<Eigen::MatrixXd>& value,
                          const std::vector<Eigen::MatrixXd>& lower, const std::vector<Eigen::MatrixXd>& upper) {
    const std::size_t m = labels.size();
    if (value.empty() || m == 0 || lower.size() != value.size() || upper.size() != value.size()) {
        throw PreconditionError("plot_irf_grid: inconsistent responses");
    }
    const std::size_t steps = value.size();
    const double cell_w = 380;
    const double cell_h = 250;
    Svg svg(40 + cell_w * static_cast<double>(m), 50 + cell_h * static_cast<double>(m));
    svg.text(20 + cell_w * static_cast<double>(m) / 2, 22, "Orthogonalized impulse responses (95% bootstrap bands)",
             "middle", 14.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < m; ++i) {
            const auto ri = static_cast<Eigen::Index>(r);
            const auto ii = static_cast<Eigen::Index>(i);
            double lo = 0.0;
            double hi = 0.0;
            for (std::size_t h = 0; h < steps; ++h) {
                lo = std::min({lo, lower[h](ri, ii), value[h](ri, ii)});
                hi = std::max({hi, upper[h](ri, ii), value[h](ri, ii)});
            }
            const double pad = (hi - lo) * 0.08 + 1e-9;
            Panel p{60 + cell_w * static_cast<double>(i), 50 + cell_h * static_cast<double>(r), cell_w - 80, cell_h - 70,
                    0, static_cast<double>(steps - 1), lo - pad, hi + pad};
            std::vector<std::pair<double, double>> band;
            std::vector<std::pair<double, double>> line;
            for (std::size_t h = 0; h < steps; ++h) {
                band.emplace_back(p.px(static_cast<double>(h)), p.py(upper[h](ri, ii)));
                line.emplace_back(p.px(static_cast<double>(h)), p.py(value[h](ri, ii)));
            }
            for (std::size_t h = steps; h-- > 0;) {
                band.emplace_back(p.px(static_cast<double>(h)), p.py(lower[h](ri, ii)));
            }
            svg.polygon(band, palette(1), 0.25);
            svg.line(p.left, p.py(0.0), p.left + p.width, p.py(0.0), "#777777", 0.8, "stroke-dasharray=\"4 3\"");
            svg.polyline(line, palette(1), 2.0);
            std::vector<std::string> ticks;
            for (std::size_t h = 0; h < steps; ++h) {
                ticks.push_back(std::to_string(h));
            }
            p.axes(svg, 8, 5, ticks);
            svg.text(p.left + p.width / 2, p.top - 6, labels[i] + " -> " + labels[r], "middle", 11.0);
            svg.text(p.left + p.width / 2, p.top + p.height + 30, "days after shock", "middle", 9.0);
        }
    }
    return svg.str();
}

std::string plot_fevd(const std::vector<std::string>& labels, const std::vector<Eigen::MatrixXd>& proportions) {
    const std::size_t m = labels.size();
    if (proportions.empty() || m == 0) {
        throw PreconditionError("plot_fevd: nothing to draw");
    }
    const std::size_t horizon = proportions.size();
    const double cell_h = 230;
    Svg svg(kWidth, 60 + cell_h * static_cast<double>(m));
    svg.text(kWidth / 2, 22, "Forecast error variance decomposition", "middle", 14.0);
    for (std::size_t t = 0; t < m; ++t) {
        const auto ti = static_cast<Eigen::Index>(t);
        Panel p{70, 50 + cell_h * static_cast<double>(t), kWidth - 230, cell_h - 60, 0.5,
                static_cast<double>(horizon) + 0.5, 0, 1};
        const double bar = p.width / static_cast<double>(horizon) * 0.8;
        for (std::size_t h = 0; h < horizon; ++h) {
            double base = 0.0;
            for (std::size_t s = 0; s < m; ++s) {
                const double v = proportions[h](ti, static_cast<Eigen::Index>(s));
                const double y_top = p.py(base + v);
                svg.rect(p.px(static_cast<double>(h + 1)) - bar / 2, y_top, bar, p.py(base) - y_top, palette(s));
                base += v;
            }
        }
        p.axes(svg, std::min<std::size_t>(horizon, 14), 5);
        svg.text(p.left + p.width / 2, p.top - 6, "variance of " + labels[t], "middle", 11.0);
        svg.text(p.left + p.width / 2, p.top + p.height + 30, "horizon (days)", "middle", 9.0);
    }
    std::vector<std::string> legend_labels;
    for (const auto& l : labels) {
        legend_labels.push_back("shock: " + l);
    }
    legend(svg, kWidth - 145, 62, legend_labels);
    return svg.str();
}

std::string plot_lines(const std::vector<timeseries::DailySeries>& series, const std::string& title) {
    check_aligned(series);
    const std::size_t n = series.front().size();
    double top = 0.0;
    for (const auto& s : series) {
        for (double v : s.values) {
            top = std::max(top, v);
        }
    }
    Svg svg(kWidth, kHeight);
    svg.text(kWidth / 2, 22, title, "middle", 14.0);
    Panel p{70, 40, kWidth - 230, kHeight - 100, 0, static_cast<double>(n > 1 ? n - 1 : 1), 0, max_or(top * 1.05, 1.0)};
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < series.size(); ++s) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; ++i) {
            pts.emplace_back(p.px(static_cast<double>(i)), p.py(series[s].values[i]));
        }
        svg.polyline(pts, palette(s), 1.5);
        labels.push_back(series[s].label);
    }
    p.axes(svg, 10, 6, date_labels(series.front()));
    svg.text(p.left + p.width / 2, kHeight - 20, "date", "middle", 11.0);
    legend(svg, p.left + p.width + 20, p.top + 12, labels);
    return svg.str();
}

std::string plot_heatmap(const std::vector<std::string>& labels, const Eigen::MatrixXd& values,
                         const std::string& title) {
    const auto k = static_cast<std::size_t>(values.rows());
    if (k == 0 || values.cols() != values.rows() || labels.size() != k) {
        throw PreconditionError("plot_heatmap: need a square matrix with one label per row");
    }
    const double cell = std::min(60.0, 480.0 / static_cast<double>(k));
    const double left = 110;
    const double top = 50;
    Svg svg(left + cell * static_cast<double>(k) + 40, top + cell * static_cast<double>(k) + 60);
    svg.text((left + cell * static_cast<double>(k)) / 2 + 20, 24, title, "middle", 14.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double v = std::clamp(values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 0.0, 1.0);
            // White to dark blue.
            const int r = static_cast<int>(std::lround(255 - v * (255 - 8)));
            const int g = static_cast<int>(std::lround(255 - v * (255 - 48)));
            const int b = static_cast<int>(std::lround(255 - v * (255 - 107)));
            char fill[16];
            std::snprintf(fill, sizeof fill, "#%02x%02x%02x", r, g, b);
            const double x = left + cell * static_cast<double>(j);
            const double y = top + cell * static_cast<double>(i);
            svg.rect(x, y, cell, cell, fill, "stroke=\"white\" stroke-width=\"1.00\"");
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            svg.text(x + cell / 2, y + cell / 2 + 4, buf, "middle", std::min(11.0, cell / 3.5),
                     v > 0.55 ? "fill=\"white\"" : "");
        }
        svg.text(left - 6, top + cell * (static_cast<double>(i) + 0.5) + 4, labels[i], "end", 10.0);
        svg.text(left + cell * (static_cast<double>(i) + 0.5), top + cell * static_cast<double>(k) + 16, labels[i],
                 "middle", 10.0);
    }
    return svg.str();
}

}  // namespace infospread::report
