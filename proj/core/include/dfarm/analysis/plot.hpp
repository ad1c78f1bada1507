#pragma once

#include "dfarm/analysis/eda.hpp"

#include <span>
#include <string>
#include <vector>

namespace dfarm::analysis {

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

// Self-contained SVG 1.1 documents with axes, tick labels and a title.
// Output depends only on the inputs. Points are <circle class="point">,
// histogram bars <rect class="bar">, heatmap cells <rect class="cell">.
std::string scatter_svg(std::span<const double> x, std::span<const double> y, const PlotLabels& labels);
std::string histogram_svg(const Histogram& histogram, const PlotLabels& labels);
// grid[r][c] is the value at (x_centers[c], y_centers[r]); row 0 is drawn at
// the bottom. A colour legend spans the value range.
std::string heatmap_svg(const std::vector<std::vector<double>>& grid, std::span<const double> x_centers,
                        std::span<const double> y_centers, const PlotLabels& labels);

}  // namespace dfarm::analysis
