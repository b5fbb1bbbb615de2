#pragma once

#include <span>
#include <string>
#include <vector>

namespace initrec::io {

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
};

/// Minimal standalone SVG line plot (axes box, polylines, legend).
/// log_y plots log10 of the y values; non-positive entries are dropped.
void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const LineSeries> series, bool log_y = false);

}  // namespace initrec::io
