#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rydfibre {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    /// Optional horizontal reference line (e.g. ratio = 1).
    bool reference = false;
    double reference_y = 0.0;
};

/// Minimal standalone SVG line plot. Non-finite points are skipped.
std::string render_svg(const PlotSpec& spec, int width = 640, int height = 420);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace rydfibre
