#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "regulens/corpus_store.hpp"

namespace regulens {

struct LineSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y)
};

struct HeatmapGrid {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values; // rows x cols
};

struct ChartOptions {
    int width = 720;
    int height = 420;
    int margin = 56;
    int ticks = 5;
};

namespace svg {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string label_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string escape_text(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> p = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    return p;
}

// One hue, lightness linear in the normalized value (high = dark).
inline std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    double lightness = 0.92 - 0.60 * t;
    double saturation = 0.55;
    double hue = 210.0;
    // hsl -> rgb
    double c = (1.0 - std::fabs(2.0 * lightness - 1.0)) * saturation;
    double hp = hue / 60.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    double m = lightness - c / 2.0;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround((r + m) * 255.0)),
                  static_cast<int>(std::lround((g + m) * 255.0)),
                  static_cast<int>(std::lround((b + m) * 255.0)));
    return buf;
}

inline std::string document_open(int width, int height) {
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
    return s;
}

} // namespace svg

// Standalone SVG 1.1 line chart: one polyline per series, axis ticks with
// labels, and a legend naming each series.
inline std::string render_line_chart(const std::vector<LineSeries>& series,
                                     const ChartOptions& opts = {}) {
    bool any = false;
    for (const auto& s : series) any = any || !s.points.empty();
    if (series.empty() || !any)
        throw std::runtime_error("chart: empty data");

    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    bool first = true;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    y_min = std::min(y_min, 0.0); // counts sit on a zero baseline
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double left = opts.margin, top = opts.margin;
    const double right = opts.width - opts.margin;
    const double bottom = opts.height - opts.margin;
    auto sx = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    auto sy = [&](double y) {
        return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
    };

    std::string out = svg::document_open(opts.width, opts.height);
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opts.width) +
           "\" height=\"" + std::to_string(opts.height) + "\" fill=\"#ffffff\"/>\n";
    // axes
    out += "<line x1=\"" + svg::num(left) + "\" y1=\"" + svg::num(bottom) +
           "\" x2=\"" + svg::num(right) + "\" y2=\"" + svg::num(bottom) +
           "\" stroke=\"#333333\"/>\n";
    out += "<line x1=\"" + svg::num(left) + "\" y1=\"" + svg::num(top) +
           "\" x2=\"" + svg::num(left) + "\" y2=\"" + svg::num(bottom) +
           "\" stroke=\"#333333\"/>\n";
    // ticks
    for (int t = 0; t <= opts.ticks; ++t) {
        double fx = x_min + (x_max - x_min) * t / opts.ticks;
        double fy = y_min + (y_max - y_min) * t / opts.ticks;
        out += "<line x1=\"" + svg::num(sx(fx)) + "\" y1=\"" + svg::num(bottom) +
               "\" x2=\"" + svg::num(sx(fx)) + "\" y2=\"" +
               svg::num(bottom + 5) + "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + svg::num(sx(fx)) + "\" y=\"" +
               svg::num(bottom + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"middle\">" +
               svg::escape_text(svg::label_num(fx)) + "</text>\n";
        out += "<line x1=\"" + svg::num(left - 5) + "\" y1=\"" +
               svg::num(sy(fy)) + "\" x2=\"" + svg::num(left) + "\" y2=\"" +
               svg::num(sy(fy)) + "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + svg::num(left - 8) + "\" y=\"" +
               svg::num(sy(fy) + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "text-anchor=\"end\">" +
               svg::escape_text(svg::label_num(fy)) + "</text>\n";
    }
    // series
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].points.empty()) continue;
        const auto& color = svg::palette()[i % svg::palette().size()];
        std::string pts;
        for (auto [x, y] : series[i].points) {
            if (!pts.empty()) pts.push_back(' ');
            pts += svg::num(sx(x)) + "," + svg::num(sy(y));
        }
        out += "<polyline fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    }
    // legend
    double ly = top;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& color = svg::palette()[i % svg::palette().size()];
        out += "<rect x=\"" + svg::num(right - 150) + "\" y=\"" + svg::num(ly) +
               "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + svg::num(right - 132) + "\" y=\"" +
               svg::num(ly + 10) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               svg::escape_text(series[i].label) + "</text>\n";
        ly += 18;
    }
    out += "</svg>\n";
    return out;
}

// Standalone SVG 1.1 heatmap: exactly one rect and one value label per cell,
// fill lightness linear in the cell value. Row/column names ride along as
// hover titles so the cell counts stay exact.
inline std::string render_heatmap(const HeatmapGrid& grid,
                                  const ChartOptions& opts = {}) {
    std::size_t rows = grid.values.size();
    std::size_t cols = rows == 0 ? 0 : grid.values[0].size();
    if (rows == 0 || cols == 0) throw std::runtime_error("chart: empty data");
    for (const auto& row : grid.values)
        if (row.size() != cols)
            throw std::runtime_error("chart: ragged heatmap rows");

    double v_min = grid.values[0][0], v_max = grid.values[0][0];
    for (const auto& row : grid.values)
        for (double v : row) {
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    double span = v_max - v_min;

    const double left = opts.margin, top = opts.margin;
    const double cw = (opts.width - 2.0 * opts.margin) / static_cast<double>(cols);
    const double ch = (opts.height - 2.0 * opts.margin) / static_cast<double>(rows);

    std::string out = svg::document_open(opts.width, opts.height);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double v = grid.values[r][c];
            double t = span == 0.0 ? 0.0 : (v - v_min) / span;
            double x = left + cw * static_cast<double>(c);
            double y = top + ch * static_cast<double>(r);
            std::string title;
            if (r < grid.row_labels.size() && c < grid.col_labels.size())
                title = grid.row_labels[r] + " / " + grid.col_labels[c] + ": " +
                        svg::label_num(v);
            out += "<rect x=\"" + svg::num(x) + "\" y=\"" + svg::num(y) +
                   "\" width=\"" + svg::num(cw) + "\" height=\"" + svg::num(ch) +
                   "\" fill=\"" + svg::ramp_color(t) +
                   "\" stroke=\"#ffffff\">";
            if (!title.empty())
                out += "<title>" + svg::escape_text(title) + "</title>";
            out += "</rect>\n";
            out += "<text x=\"" + svg::num(x + cw / 2) + "\" y=\"" +
                   svg::num(y + ch / 2 + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" "
                   "text-anchor=\"middle\" fill=\"" +
                   (t > 0.55 ? "#ffffff" : "#1a1a1a") + "\">" +
                   svg::escape_text(svg::label_num(v)) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

inline void emit_svg_chart(const std::vector<LineSeries>& series,
                           const std::filesystem::path& path,
                           const ChartOptions& opts = {}) {
    detail::write_file(path, render_line_chart(series, opts));
}

inline void emit_svg_chart(const HeatmapGrid& grid,
                           const std::filesystem::path& path,
                           const ChartOptions& opts = {}) {
    detail::write_file(path, render_heatmap(grid, opts));
}

} // namespace regulens
