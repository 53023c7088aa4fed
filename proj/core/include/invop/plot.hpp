#pragma once

#include <string>
#include <utility>
#include <vector>

namespace invop {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (x, y), both > 0
    bool dashed = false;
};

struct LogLogChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Self-contained SVG document: decade gridlines, one polyline per series,
/// legend. Non-positive points are dropped.
std::string render_svg(const LogLogChart& chart);

}  // namespace invop
