#ifndef EPSCHAIN_SVG_HPP
#define EPSCHAIN_SVG_HPP

// Static SVG 1.1 figure of a planar cloud with optional chain overlays.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "epschain/space.hpp"

namespace epschain::svg {

struct Overlay {
    std::vector<VertexId> vertices;
    std::string color;  // empty: next palette color
    std::string label;
};

struct PlotOptions {
    double width = 900.0;
    double margin = 24.0;
    double point_radius = 1.6;
    double stroke_width = 1.4;
    std::string title;
};

namespace detail {

inline const char* part_colors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};
inline const char* overlay_colors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#e377c2"};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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

}  // namespace detail

inline std::string render(const PointCloud& cloud, const std::vector<Overlay>& overlays = {},
                          const PlotOptions& opt = {}) {
    if (!cloud.has_coordinates())
        throw std::invalid_argument("only clouds with coordinates can be plotted");
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const Point2& p : cloud.points()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    if (cloud.empty())
        x0 = y0 = 0.0, x1 = y1 = 1.0;
    const double span_x = std::max(x1 - x0, 1e-9), span_y = std::max(y1 - y0, 1e-9);
    const double inner = opt.width - 2.0 * opt.margin;
    const double unit = inner / std::max(span_x, span_y);
    const double height = span_y * unit + 2.0 * opt.margin + (opt.title.empty() ? 0.0 : 18.0);
    const double top = opt.margin + (opt.title.empty() ? 0.0 : 18.0);
    auto px = [&](double x) { return detail::num(opt.margin + (x - x0) * unit); };
    auto py = [&](double y) { return detail::num(top + (y1 - y) * unit); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::num(opt.width) +
         "\" height=\"" + detail::num(height) + "\" viewBox=\"0 0 " + detail::num(opt.width) + " " +
         detail::num(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        s += "<text x=\"" + detail::num(opt.margin) + "\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">" +
             detail::escape(opt.title) + "</text>\n";

    const auto& parts = cloud.parts();
    auto part_color = [&](std::size_t i) -> const char* {
        if (!cloud.has_labels())
            return detail::part_colors[0];
        auto it = std::find(parts.begin(), parts.end(), cloud.label(i));
        return detail::part_colors[static_cast<std::size_t>(it - parts.begin()) % std::size(detail::part_colors)];
    };
    s += "<g stroke=\"none\">\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point2& p = cloud.points()[i];
        s += "<circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) + "\" r=\"" + detail::num(opt.point_radius) +
             "\" fill=\"" + part_color(i) + "\"/>\n";
    }
    s += "</g>\n";

    for (std::size_t k = 0; k < overlays.size(); ++k) {
        const Overlay& o = overlays[k];
        for (VertexId v : o.vertices)
            cloud.check(v);
        const std::string color =
            o.color.empty() ? detail::overlay_colors[k % std::size(detail::overlay_colors)] : o.color;
        s += "<g>\n";
        if (!o.label.empty())
            s += "<title>" + detail::escape(o.label) + "</title>\n";
        s += "<polyline fill=\"none\" stroke=\"" + detail::escape(color) + "\" stroke-width=\"" +
             detail::num(opt.stroke_width) + "\" points=\"";
        for (std::size_t i = 0; i < o.vertices.size(); ++i) {
            const Point2& p = cloud.points()[o.vertices[i]];
            if (i)
                s += ' ';
            s += px(p.x) + "," + py(p.y);
        }
        s += "\"/>\n";
        if (!o.vertices.empty()) {
            for (VertexId v : {o.vertices.front(), o.vertices.back()}) {
                const Point2& p = cloud.points()[v];
                s += "<circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) + "\" r=\"" +
                     detail::num(opt.point_radius * 2.2) + "\" fill=\"" + detail::escape(color) + "\"/>\n";
            }
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace epschain::svg

#endif
