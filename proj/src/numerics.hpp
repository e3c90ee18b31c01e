#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace mcrit::detail
{

/// Breakpoints for integrating over [lo, hi]: pieces no longer than
/// max_piece, refined geometrically towards any singular point lying just
/// outside the interval so that every piece sees a mildly varying integrand.
std::vector<double> breakpoints(double lo, double hi, const std::vector<double> &singular, double max_piece = 0.5);

/// Adaptive Gauss-Kronrod over consecutive breakpoints.
double integrate(const std::function<double(double)> &f, const std::vector<double> &points);

struct Minimum {
    double x;
    double value;
};

/// Golden-section search on [lo, hi] down to tol in x.
Minimum golden_section(const std::function<double(double)> &f, double lo, double hi, double tol);

} // namespace mcrit::detail
