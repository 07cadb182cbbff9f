#ifndef HBNUM_PLOT_HPP
#define HBNUM_PLOT_HPP

#include <iosfwd>
#include <span>
#include <string>

#include "hbnum/inference.hpp"

namespace hbnum {

struct DensityPlot {
    std::string title;
    std::string x_label = "b";
    DensityCurve curve;
    Hpdi interval;
    /// Optional values drawn as a density-scaled histogram behind the curve
    /// (e.g. per-subject classical slopes).
    std::span<const double> histogram;
};

/// Static SVG: density curve with the HPDI region shaded.
void write_density_svg(std::ostream& out, const DensityPlot& plot);

/// x,density,in_hpdi
void write_curve_csv(std::ostream& out, const DensityCurve& curve, const Hpdi& interval);

}  // namespace hbnum

#endif  // HBNUM_PLOT_HPP
