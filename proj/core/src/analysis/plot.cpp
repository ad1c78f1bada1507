#include "dfarm/analysis/plot.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dfarm::analysis {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;
constexpr int kTicks = 5;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

struct Frame {
    double x0, x1, y0, y1;   // data range
    double left, right, top, bottom;  // pixel box

    double px(double x) const { return left + (x - x0) / (x1 - x0) * (right - left); }
    double py(double y) const { return bottom - (y - y0) / (y1 - y0) * (bottom - top); }
};

std::pair<double, double> padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.03;
    return {lo - pad, hi + pad};
}

void open_document(std::ostringstream& out, const PlotLabels& labels) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n"
        << "<text class=\"title\" x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(labels.title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Frame& f, const PlotLabels& labels) {
    out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.bottom) << "\" x2=\"" << num(f.right) << "\" y2=\""
        << num(f.bottom) << "\"/>\n"
        << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.bottom) << "\" x2=\"" << num(f.left) << "\" y2=\""
        << num(f.top) << "\"/>\n";
    for (int t = 0; t <= kTicks; ++t) {
        const double xv = f.x0 + (f.x1 - f.x0) * t / kTicks;
        const double yv = f.y0 + (f.y1 - f.y0) * t / kTicks;
        out << "<line x1=\"" << num(f.px(xv)) << "\" y1=\"" << num(f.bottom) << "\" x2=\"" << num(f.px(xv))
            << "\" y2=\"" << num(f.bottom + 5) << "\"/>\n"
            << "<line x1=\"" << num(f.left - 5) << "\" y1=\"" << num(f.py(yv)) << "\" x2=\"" << num(f.left)
            << "\" y2=\"" << num(f.py(yv)) << "\"/>\n";
    }
    out << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int t = 0; t <= kTicks; ++t) {
        const double xv = f.x0 + (f.x1 - f.x0) * t / kTicks;
        const double yv = f.y0 + (f.y1 - f.y0) * t / kTicks;
        out << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.bottom + 18) << "\" text-anchor=\"middle\">"
            << xml_escape(csv::format_short(xv, 4)) << "</text>\n"
            << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">"
            << xml_escape(csv::format_short(yv, 4)) << "</text>\n";
    }
    out << "</g>\n"
        << "<text class=\"xlabel\" x=\"" << num((f.left + f.right) / 2) << "\" y=\"" << num(kHeight - 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(labels.x_label)
        << "</text>\n"
        << "<text class=\"ylabel\" x=\"18\" y=\"" << num((f.top + f.bottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
        << num((f.top + f.bottom) / 2) << ")\">" << xml_escape(labels.y_label) << "</text>\n";
}

// Diverging blue-yellow-red ramp over t in [0, 1].
std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 3> stops{{{44, 123, 182}, {255, 255, 191}, {215, 25, 28}}};
    t = std::clamp(t, 0.0, 1.0);
    const double s = t < 0.5 ? t * 2.0 : (t - 0.5) * 2.0;
    const auto& a = t < 0.5 ? stops[0] : stops[1];
    const auto& b = t < 0.5 ? stops[1] : stops[2];
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a[0] + (b[0] - a[0]) * s)),
                  static_cast<int>(std::lround(a[1] + (b[1] - a[1]) * s)),
                  static_cast<int>(std::lround(a[2] + (b[2] - a[2]) * s)));
    return buf;
}

}  // namespace

std::string scatter_svg(std::span<const double> x, std::span<const double> y, const PlotLabels& labels) {
    if (x.empty()) throw InvalidArgument("scatter plot needs at least one point");
    if (x.size() != y.size()) throw InvalidArgument("scatter plot needs equal-length x and y");
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    const auto [x0, x1] = padded_range(*xmin, *xmax);
    const auto [y0, y1] = padded_range(*ymin, *ymax);
    const Frame f{x0, x1, y0, y1, kLeft, kWidth - 30.0, kTop, kHeight - kBottom};

    std::ostringstream out;
    open_document(out, labels);
    draw_axes(out, f, labels);
    out << "<g class=\"points\" fill=\"#2c7bb6\" fill-opacity=\"0.6\">\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << "<circle class=\"point\" cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i]))
            << "\" r=\"2.5\"/>\n";
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string histogram_svg(const Histogram& histogram, const PlotLabels& labels) {
    if (histogram.counts.empty() || histogram.edges.size() != histogram.counts.size() + 1)
        throw InvalidArgument("histogram plot needs at least one bin");
    const double peak = static_cast<double>(*std::max_element(histogram.counts.begin(), histogram.counts.end()));
    auto [x0, x1] = std::pair{histogram.edges.front(), histogram.edges.back()};
    if (!(x1 > x0)) std::tie(x0, x1) = padded_range(x0, x1);
    const Frame f{x0, x1, 0.0, peak > 0.0 ? peak * 1.05 : 1.0, kLeft, kWidth - 30.0, kTop, kHeight - kBottom};

    std::ostringstream out;
    open_document(out, labels);
    out << "<g class=\"bars\" fill=\"#2c7bb6\" stroke=\"white\" stroke-width=\"0.5\">\n";
    for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
        double left = f.px(histogram.edges[b]), right = f.px(histogram.edges[b + 1]);
        if (right - left < 1.0) right = left + 1.0;
        const double top = f.py(static_cast<double>(histogram.counts[b]));
        out << "<rect class=\"bar\" x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left)
            << "\" height=\"" << num(f.bottom - top) << "\"/>\n";
    }
    out << "</g>\n";
    draw_axes(out, f, labels);
    out << "</svg>\n";
    return out.str();
}

std::string heatmap_svg(const std::vector<std::vector<double>>& grid, std::span<const double> x_centers,
                        std::span<const double> y_centers, const PlotLabels& labels) {
    if (grid.empty() || grid.front().empty()) throw InvalidArgument("heatmap needs a non-empty grid");
    if (grid.size() != y_centers.size()) throw InvalidArgument("heatmap rows do not match y centres");
    for (const auto& row : grid)
        if (row.size() != x_centers.size()) throw InvalidArgument("heatmap columns do not match x centres");

    double vmin = grid[0][0], vmax = grid[0][0];
    for (const auto& row : grid)
        for (double v : row) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    const auto half_step = [](std::span<const double> c) { return c.size() > 1 ? 0.5 * (c[1] - c[0]) : 0.5; };
    const double hx = half_step(x_centers), hy = half_step(y_centers);
    const Frame f{x_centers.front() - hx, x_centers.back() + hx, y_centers.front() - hy, y_centers.back() + hy,
                  kLeft, kWidth - 120.0, kTop, kHeight - kBottom};
    const double span = vmax > vmin ? vmax - vmin : 1.0;

    std::ostringstream out;
    open_document(out, labels);
    out << "<g class=\"cells\" stroke=\"none\">\n";
    for (std::size_t r = 0; r < grid.size(); ++r)
        for (std::size_t c = 0; c < grid[r].size(); ++c) {
            const double x = f.px(x_centers[c] - hx), x2 = f.px(x_centers[c] + hx);
            const double y = f.py(y_centers[r] + hy), y2 = f.py(y_centers[r] - hy);
            out << "<rect class=\"cell\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(x2 - x)
                << "\" height=\"" << num(y2 - y) << "\" fill=\"" << ramp((grid[r][c] - vmin) / span) << "\"/>\n";
        }
    out << "</g>\n";
    draw_axes(out, f, labels);

    constexpr int kSwatches = 20;
    const double lx = kWidth - 95.0, lw = 20.0;
    const double lh = (f.bottom - f.top) / kSwatches;
    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int s = 0; s < kSwatches; ++s) {
        const double t = (s + 0.5) / kSwatches;
        out << "<rect class=\"legend-swatch\" x=\"" << num(lx) << "\" y=\"" << num(f.bottom - (s + 1) * lh)
            << "\" width=\"" << num(lw) << "\" height=\"" << num(lh) << "\" fill=\"" << ramp(t) << "\"/>\n";
    }
    out << "<text x=\"" << num(lx + lw + 4) << "\" y=\"" << num(f.bottom) << "\">"
        << xml_escape(csv::format_short(vmin, 5)) << "</text>\n"
        << "<text x=\"" << num(lx + lw + 4) << "\" y=\"" << num(f.top + 8) << "\">"
        << xml_escape(csv::format_short(vmax, 5)) << "</text>\n</g>\n</svg>\n";
    return out.str();
}

}  // namespace dfarm::analysis
