#include "rydfibre/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "rydfibre/error.hpp"

namespace rydfibre {
namespace {

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            default: o += c;
        }
    }
    return o;
}

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

std::string px(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

// Round step for roughly n ticks over [lo, hi].
double nice_step(double lo, double hi, int n) {
    const double raw = (hi - lo) / n;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::string render_svg(const PlotSpec& spec, int width, int height) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (spec.reference) {
        ylo = std::min(ylo, spec.reference_y);
        yhi = std::max(yhi, spec.reference_y);
    }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    if (xhi == xlo) xhi = xlo + 1.0;
    if (yhi == ylo) yhi = ylo + 1.0;
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    const double ml = 70, mr = 20, mt = 36, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * pw; };
    auto sy = [&](double y) { return mt + (yhi - y) / (yhi - ylo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << esc(spec.title) << "</text>\n";
    o << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(xlo, xhi, 6);
    for (double t = std::ceil(xlo / xs) * xs; t <= xhi + 1e-9 * xs; t += xs) {
        o << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(mt + ph) << "\" x2=\"" << px(sx(t))
          << "\" y2=\"" << px(mt + ph + 5) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(mt + ph + 18)
          << "\" text-anchor=\"middle\">" << num(std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
    }
    const double ys = nice_step(ylo, yhi, 6);
    for (double t = std::ceil(ylo / ys) * ys; t <= yhi + 1e-9 * ys; t += ys) {
        o << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(ml)
          << "\" y2=\"" << px(sy(t)) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(sy(t) + 4) << "\" text-anchor=\"end\">"
          << num(std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
    }
    o << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
      << esc(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(16," << px(mt + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << esc(spec.y_label) << "</text>\n";

    if (spec.reference)
        o << "<line x1=\"" << px(ml) << "\" y1=\"" << px(sy(spec.reference_y)) << "\" x2=\""
          << px(ml + pw) << "\" y2=\"" << px(sy(spec.reference_y))
          << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const char* color = palette[k % 6];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            o << px(sx(s.x[i])) << ',' << px(sy(s.y[i])) << ' ';
        }
        o << "\"/>\n";
        o << "<text x=\"" << px(ml + 10) << "\" y=\"" << px(mt + 16 + 15 * k) << "\" fill=\"" << color
          << "\">" << esc(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    f << render_svg(spec);
}

}  // namespace rydfibre
