#include "plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "nonmark/error.hpp"

namespace nonmark::app {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;
constexpr int kTicks = 5;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

struct Range {
    double lo{std::numeric_limits<double>::infinity()};
    double hi{-std::numeric_limits<double>::infinity()};

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void settle() {
        if (!(hi > lo)) {
            const double pad = std::isfinite(lo) && lo != 0.0 ? 0.5 * std::abs(lo) : 1.0;
            lo = (std::isfinite(lo) ? lo : 0.0) - pad;
            hi = lo + 2.0 * pad;
        }
    }
};

} // namespace

std::string render_svg(const Plot& plot) {
    Range xr, yr;
    std::size_t points = 0;
    for (const auto& s : plot.series) {
        if (s.x.size() != s.y.size()) {
            throw InputError("plot series '" + s.name + "' has mismatched x and y lengths");
        }
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (std::isfinite(s.x[k]) && std::isfinite(s.y[k])) {
                xr.include(s.x[k]);
                yr.include(s.y[k]);
                ++points;
            }
        }
    }
    if (plot.series.empty() || points == 0) {
        throw InputError("nothing to plot: empty series");
    }
    xr.settle();
    yr.settle();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" +
           fixed(kHeight) + "\" viewBox=\"0 0 " + fixed(kWidth) + " " + fixed(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(plot.title) + "</text>\n";
    svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        const double x = px(fx), y = py(fy);
        svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
               fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(fx) + "</text>\n";
        svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
               fixed(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(plot.x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fixed(kTop + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
           fixed(kTop + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const char* colour = kPalette[i % kPalette.size()];
        std::string points_attr;
        auto flush = [&] {
            if (!points_attr.empty()) {
                svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" +
                       points_attr + "\"/>\n";
                points_attr.clear();
            }
        };
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
                flush();
                continue;
            }
            if (!points_attr.empty()) {
                points_attr += ' ';
            }
            points_attr += fixed(px(s.x[k])) + "," + fixed(py(s.y[k]));
        }
        flush();

        const double ly = kTop + 14 + 20.0 * static_cast<double>(i);
        const double lx = kLeft + pw + 14;
        svg += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" +
               fixed(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const Plot& plot, const std::filesystem::path& path) {
    const std::string svg = render_svg(plot);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot open '" + path.string() + "' for writing");
    }
    out << svg;
    out.close();
    if (!out) {
        throw InputError("failed writing '" + path.string() + "'");
    }
}

} // namespace nonmark::app
