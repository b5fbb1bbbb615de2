#include "initrec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "initrec/csv.hpp"

namespace initrec::io {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string fmt_tick(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const LineSeries> series, bool log_y) {
    Range rx, ry;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (log_y) {
                if (!(y > 0.0)) continue;
                y = std::log10(y);
            }
            if (!std::isfinite(s.x[i]) || !std::isfinite(y)) continue;
            rx.expand(s.x[i]);
            ry.expand(y);
        }
    rx.pad();
    ry.pad();
    const auto px = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * (kW - kLeft - kRight); };
    const auto py = [&](double y) { return kH - kBottom - (y - ry.lo) / (ry.hi - ry.lo) * (kH - kTop - kBottom); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes box and ticks
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight
        << "\" height=\"" << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = rx.lo + k * (rx.hi - rx.lo) / 4.0;
        const double yv = ry.lo + k * (ry.hi - ry.lo) / 4.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << kH - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(xv) << "</text>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">"
            << fmt_tick(log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
    }
    out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\""
        << " transform=\"rotate(-90 18 " << kH / 2 << ")\">" << y_label << "</text>\n";

    double legend_y = kTop + 14;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (log_y) {
                if (!(y > 0.0)) continue;
                y = std::log10(y);
            }
            if (!std::isfinite(s.x[i]) || !std::isfinite(y)) continue;
            out << px(s.x[i]) << ',' << py(y) << ' ';
        }
        out << "\"/>\n";
        out << "<line x1=\"" << kW - kRight - 150 << "\" y1=\"" << legend_y << "\" x2=\""
            << kW - kRight - 120 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kW - kRight - 114 << "\" y=\"" << legend_y + 4
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
    atomic_write_text(path, out.str());
}

}  // namespace initrec::io
