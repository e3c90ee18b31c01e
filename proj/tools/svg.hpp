#pragma once

#include <string>
#include <vector>

#include <mcrit/model.hpp>

namespace mcrit::cli
{

struct PlotOptions {
    bool with_fluid = false;
    std::string title;
};

/// Self-contained SVG line chart of S (and optionally m and p) against tau.
/// Lines break at Pole rows and non-finite values; degenerate rows are
/// marked with a circle. Throws EmptyInput for an empty table.
std::string render_plot(const std::vector<ConformalSample> &samples, const PlotOptions &options);

} // namespace mcrit::cli
