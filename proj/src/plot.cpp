#include "hbnum/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "text_util.hpp"

namespace hbnum {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Roughly five round tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) out.push_back(t);
    return out;
}

}  // namespace

void write_density_svg(std::ostream& out, const DensityPlot& plot) {
    const auto& xs = plot.curve.x;
    const auto& ds = plot.curve.density;
    if (xs.size() < 2 || xs.size() != ds.size()) throw std::invalid_argument("density plot: malformed curve");

    double x_lo = xs.front();
    double x_hi = xs.back();
    for (double v : plot.histogram) {
        x_lo = std::min(x_lo, v);
        x_hi = std::max(x_hi, v);
    }

    // Histogram bins share the plot range; heights are density-scaled.
    std::vector<double> hist;
    double bin_width = 0.0;
    if (!plot.histogram.empty()) {
        const std::size_t bins = std::max<std::size_t>(5, static_cast<std::size_t>(std::sqrt(plot.histogram.size())) * 2);
        bin_width = (x_hi - x_lo) / static_cast<double>(bins);
        hist.assign(bins, 0.0);
        for (double v : plot.histogram) {
            auto k = static_cast<std::size_t>((v - x_lo) / bin_width);
            hist[std::min(k, bins - 1)] += 1.0;
        }
        for (double& h : hist) h /= static_cast<double>(plot.histogram.size()) * bin_width;
    }

    double y_hi = *std::max_element(ds.begin(), ds.end());
    for (double h : hist) y_hi = std::max(y_hi, h);
    y_hi *= 1.08;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - y / y_hi * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.title)
        << "</text>\n";

    for (std::size_t k = 0; k < hist.size(); ++k) {
        const double x0 = sx(x_lo + bin_width * static_cast<double>(k));
        const double x1 = sx(x_lo + bin_width * static_cast<double>(k + 1));
        out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(sy(hist[k])) << "\" width=\"" << fmt(x1 - x0)
            << "\" height=\"" << fmt(sy(0.0) - sy(hist[k])) << "\" fill=\"#cccccc\" stroke=\"#999999\"/>\n";
    }

    // HPDI shading under the curve.
    out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.7\" points=\"" << fmt(sx(std::max(plot.interval.lower, xs.front())))
        << ',' << fmt(sy(0.0));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (plot.interval.contains(xs[k])) out << ' ' << fmt(sx(xs[k])) << ',' << fmt(sy(ds[k]));
    }
    out << ' ' << fmt(sx(std::min(plot.interval.upper, xs.back()))) << ',' << fmt(sy(0.0)) << "\"/>\n";

    out << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out << ' ';
        out << fmt(sx(xs[k])) << ',' << fmt(sy(ds[k]));
    }
    out << "\"/>\n";

    // Axes.
    out << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(sy(0.0)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
        << fmt(sy(0.0)) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << fmt(sy(0.0))
        << "\" stroke=\"black\"/>\n";
    for (double t : ticks(x_lo, x_hi)) {
        out << "<line x1=\"" << fmt(sx(t)) << "\" y1=\"" << fmt(sy(0.0)) << "\" x2=\"" << fmt(sx(t)) << "\" y2=\""
            << fmt(sy(0.0) + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(sy(0.0) + 18) << "\" text-anchor=\"middle\">"
            << detail::format_double(std::round(t * 1e6) / 1e6) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
        << escape(plot.x_label) << "</text>\n"
        << "<text x=\"15\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << kTop + ph / 2 << ")\">density</text>\n"
        << "<text x=\"" << kWidth - kRight << "\" y=\"" << kTop + 12 << "\" text-anchor=\"end\">"
        << static_cast<int>(std::round(plot.interval.mass * 100)) << "% HPDI [" << fmt(plot.interval.lower) << ", "
        << fmt(plot.interval.upper) << "]</text>\n"
        << "</svg>\n";
}

void write_curve_csv(std::ostream& out, const DensityCurve& curve, const Hpdi& interval) {
    out << "x,density,in_hpdi\n";
    for (std::size_t k = 0; k < curve.x.size(); ++k) {
        out << detail::format_double(curve.x[k]) << ',' << detail::format_double(curve.density[k]) << ','
            << (interval.contains(curve.x[k]) ? 1 : 0) << '\n';
    }
}

}  // namespace hbnum
