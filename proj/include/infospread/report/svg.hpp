#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace infospread::report {

/// Minimal SVG document builder. Coordinates are printed with two decimals
/// so output is byte-stable across platforms.
class Svg {
public:
    Svg(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra = {});
    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
              std::string_view extra = {});
    void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width = 1.5);
    void polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill, double opacity = 1.0);
    void text(double x, double y, std::string_view content, std::string_view anchor = "start", double size = 11.0,
              std::string_view extra = {});

    [[nodiscard]] std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

[[nodiscard]] std::string num(double v);
[[nodiscard]] std::string xml_escape(std::string_view s);

/// Plot area with linear data-to-pixel mapping and simple axes.
struct Panel {
    double left = 0, top = 0, width = 0, height = 0;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

    [[nodiscard]] double px(double x) const;
    [[nodiscard]] double py(double y) const;
    /// Frame, ticks and tick labels; x ticks use `x_labels` when given.
    void axes(Svg& svg, std::size_t x_ticks, std::size_t y_ticks, const std::vector<std::string>& x_labels = {}) const;
};

/// Round-number tick values inside [lo, hi].
[[nodiscard]] std::vector<double> nice_ticks(double lo, double hi, std::size_t target);

/// Fixed categorical palette.
[[nodiscard]] std::string_view palette(std::size_t i) noexcept;

}  // namespace infospread::report
