#include "invop/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace invop {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const LogLogChart& chart) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    for (const auto& s : chart.series) {
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            lo_x = std::min(lo_x, std::log10(x));
            hi_x = std::max(hi_x, std::log10(x));
            lo_y = std::min(lo_y, std::log10(y));
            hi_y = std::max(hi_y, std::log10(y));
        }
    }
    if (!std::isfinite(lo_x)) {
        lo_x = lo_y = 0.0;
        hi_x = hi_y = 1.0;
    }
    lo_x = std::floor(lo_x);
    lo_y = std::floor(lo_y);
    hi_x = std::max(std::ceil(hi_x), lo_x + 1.0);
    hi_y = std::max(std::ceil(hi_y), lo_y + 1.0);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (std::log10(x) - lo_x) / (hi_x - lo_x) * plot_w; };
    auto py = [&](double y) {
        return kTop + plot_h - (std::log10(y) - lo_y) / (hi_y - lo_y) * plot_h;
    };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kWidth, kHeight);
    svg += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       kLeft + plot_w / 2, escape(chart.title));

    for (double d = lo_x; d <= hi_x; d += 1.0) {
        const double x = kLeft + (d - lo_x) / (hi_x - lo_x) * plot_w;
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n"
            "<text x=\"{0:.2f}\" y=\"{3}\" text-anchor=\"middle\">1e{4}</text>\n",
            x, kTop, kTop + plot_h, kTop + plot_h + 18, static_cast<int>(d));
    }
    for (double d = lo_y; d <= hi_y; d += 1.0) {
        const double y = kTop + plot_h - (d - lo_y) / (hi_y - lo_y) * plot_h;
        svg += fmt::format(
            "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n"
            "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">1e{5}</text>\n",
            kLeft, y, kLeft + plot_w, kLeft - 6, y + 4, static_cast<int>(d));
    }
    svg += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        kLeft, kTop, plot_w, plot_h);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + plot_w / 2, kHeight - 16, escape(chart.x_label));
    svg += fmt::format(
        "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
        kTop + plot_h / 2, escape(chart.y_label));

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const char* color = kPalette[k % kPalette.size()];
        std::string points;
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", px(x), py(y));
        }
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
                           color, s.dashed ? " stroke-dasharray=\"6 4\"" : "", points);
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
        const double lx = kWidth - kRight + 12.0;
        svg += fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"{4}/>\n"
            "<text x=\"{5}\" y=\"{6}\">{7}</text>\n",
            lx, ly, lx + 24, color, s.dashed ? " stroke-dasharray=\"6 4\"" : "", lx + 30, ly + 4,
            escape(s.name));
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace invop
