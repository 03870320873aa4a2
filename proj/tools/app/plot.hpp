// Standalone SVG line charts.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nonmark::app {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Axes, tick labels, one polyline per series (broken at non-finite samples) and a
/// legend. Identical input gives identical bytes. Throws InputError when there is
/// nothing to draw.
std::string render_svg(const Plot& plot);

/// render_svg written to `path`; throws InputError when the file cannot be written.
void emit_plot(const Plot& plot, const std::filesystem::path& path);

} // namespace nonmark::app
