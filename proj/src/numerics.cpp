#include "numerics.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mcrit::detail
{

std::vector<double> breakpoints(double lo, double hi, const std::vector<double> &singular, double max_piece)
{
    std::vector<double> pts;
    if (!(hi > lo)) {
        return {lo, hi};
    }
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_piece)));
    for (int i = 0; i <= n; ++i) {
        pts.push_back(i == n ? hi : lo + (hi - lo) * i / n);
    }
    for (double b : singular) {
        // Only points outside [lo, hi] but close to one of its ends.
        const double end = b >= hi ? hi : (b <= lo ? lo : std::nan(""));
        if (std::isnan(end)) {
            continue;
        }
        const double dir = b >= hi ? 1.0 : -1.0;
        for (double d = std::abs(b - end) * 2; d < max_piece; d *= 2) {
            const double x = b - dir * d;
            if (x > lo && x < hi) {
                pts.push_back(x);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace
{

constexpr double relative_tol = 1e-13;
constexpr int max_depth = 40;

struct Piece {
    double value;
    double error;
};

// Boost's own adaptive driver compares an error estimate expressed on
// [-1, 1] with tolerances on [a, b], which never converges on short pieces,
// so bisection is done here around the fixed 31-point rule.
Piece rule(const std::function<double(double)> &f, double a, double b)
{
    double err = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
    return {v, err * (b - a) / 2};
}

double adaptive(const std::function<double(double)> &f, double a, double b, const Piece &whole, int depth)
{
    const double mid = (a + b) / 2;
    if (depth == 0 || whole.error <= relative_tol * std::abs(whole.value) || !(mid > a && mid < b)) {
        return whole.value;
    }
    const Piece left = rule(f, a, mid);
    const Piece right = rule(f, mid, b);
    // Splitting a smooth piece shrinks the estimate by orders of magnitude;
    // when it does not, the estimate is roundoff in the integrand.
    if (left.error + right.error >= whole.error / 2) {
        return left.value + right.value;
    }
    return adaptive(f, a, mid, left, depth - 1) + adaptive(f, mid, b, right, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)> &f, const std::vector<double> &points)
{
    double sum = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) {
            sum += adaptive(f, points[i], points[i + 1], rule(f, points[i], points[i + 1]), max_depth);
        }
    }
    return sum;
}

Minimum golden_section(const std::function<double(double)> &f, double lo, double hi, double tol)
{
    const double r = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    Minimum best{c, fc};
    if (fd < best.value) {
        best = {d, fd};
    }
    // The ends are candidates too: minima on a collared interval sit there.
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v < best.value) {
            best = {x, v};
        }
    }
    return best;
}

} // namespace mcrit::detail
