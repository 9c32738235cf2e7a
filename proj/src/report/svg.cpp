#include "infospread/report/svg.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace infospread::report {

std::string num(double v) {
    if (std::abs(v) < 0.005) {
        v = 0.0;  // avoid "-0.00"
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

Svg::Svg(double width, double height) : width_(width), height_(height) {}

void Svg::rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
             "\" fill=\"" + std::string(fill) + "\"";
    if (!extra.empty()) {
        body_ += " " + std::string(extra);
    }
    body_ += "/>\n";
}

void Svg::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
               std::string_view extra) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
             "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
    if (!extra.empty()) {
        body_ += " " + std::string(extra);
    }
    body_ += "/>\n";
}

namespace {

std::string points(const std::vector<std::pair<double, double>>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            s += ' ';
        }
        s += num(pts[i].first) + "," + num(pts[i].second);
    }
    return s;
}

}  // namespace

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width) {
    body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) +
             "\" points=\"" + points(pts) + "\"/>\n";
}

void Svg::polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill, double opacity) {
    body_ += "<polygon fill=\"" + std::string(fill) + "\" fill-opacity=\"" + num(opacity) + "\" stroke=\"none\" points=\"" +
             points(pts) + "\"/>\n";
}

void Svg::text(double x, double y, std::string_view content, std::string_view anchor, double size,
               std::string_view extra) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) + "\" text-anchor=\"" +
             std::string(anchor) + "\"";
    if (!extra.empty()) {
        body_ += " " + std::string(extra);
    }
    body_ += ">" + xml_escape(content) + "</text>\n";
}

std::string Svg::str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) +
           "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ +
           "</svg>\n";
}

double Panel::px(double x) const {
    const double span = x_max - x_min;
    return left + (span == 0.0 ? 0.5 : (x - x_min) / span) * width;
}

double Panel::py(double y) const {
    const double span = y_max - y_min;
    return top + height - (span == 0.0 ? 0.5 : (y - y_min) / span) * height;
}

void Panel::axes(Svg& svg, std::size_t x_ticks, std::size_t y_ticks, const std::vector<std::string>& x_labels) const {
    svg.rect(left, top, width, height, "none", "stroke=\"#333333\" stroke-width=\"1.00\"");
    for (double v : nice_ticks(y_min, y_max, y_ticks)) {
        const double y = py(v);
        svg.line(left - 4, y, left, y, "#333333");
        svg.line(left, y, left + width, y, "#e5e5e5", 0.5);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
        svg.text(left - 6, y + 3.5, buf, "end", 9.0);
    }
    if (!x_labels.empty()) {
        const std::size_t step = std::max<std::size_t>(1, (x_labels.size() + x_ticks - 1) / std::max<std::size_t>(1, x_ticks));
        for (std::size_t i = 0; i < x_labels.size(); i += step) {
            const double x = px(x_min + static_cast<double>(i));
            svg.line(x, top + height, x, top + height + 4, "#333333");
            svg.text(x, top + height + 15, x_labels[i], "middle", 9.0);
        }
        return;
    }
    for (double v : nice_ticks(x_min, x_max, x_ticks)) {
        const double x = px(v);
        svg.line(x, top + height, x, top + height + 4, "#333333");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
        svg.text(x, top + height + 15, buf, "middle", 9.0);
    }
}

std::vector<double> nice_ticks(double lo, double hi, std::size_t target) {
    if (!(hi > lo) || target == 0) {
        return {lo};
    }
    const double raw = (hi - lo) / static_cast<double>(target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    // Index-based so ticks do not drift with repeated addition.
    const double first = std::ceil(lo / step - 1e-9);
    for (double i = first; i * step <= hi + step * 1e-9; i += 1.0) {
        ticks.push_back(i == 0.0 ? 0.0 : i * step);
    }
    return ticks;
}

std::string_view palette(std::size_t i) noexcept {
    static constexpr std::array<std::string_view, 10> colors = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % colors.size()];
}

}  // namespace infospread::report
