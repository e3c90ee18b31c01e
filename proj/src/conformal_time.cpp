#include <mcrit/conformal_time.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>

#include <mcrit/error.hpp>

#include "numerics.hpp"

namespace mcrit
{

namespace
{

constexpr double max_reach = 1e6;

double integral(const Model &model, double a, double b)
{
    if (a == b) {
        return 0;
    }
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double v = detail::integrate([&](double x) { return model.jet(x).S; },
                                       detail::breakpoints(lo, hi, model.domain().blowups));
    return a < b ? v : -v;
}

void require_anchor(const Model &model, double tau0)
{
    if (!model.domain().contains(tau0)) {
        fail(ErrorKind::OutOfDomain, "the anchor tau0 lies outside the domain");
    }
    model.jet(tau0);
}

} // namespace

double default_anchor(const Model &model)
{
    const DomainInfo &d = model.domain();
    if (d.kind == DomainKind::Interval) {
        return (d.lo + d.hi) / 2;
    }
    if (model.kind() == ModelKind::ExceptionalSinh) {
        return 1.0;
    }
    if (std::find(d.zeros_of_S.begin(), d.zeros_of_S.end(), 0.0) != d.zeros_of_S.end()) {
        return model.omega();
    }
    return 0.0;
}

double cosmological_time(const Model &model, double tau0, double tau)
{
    require_anchor(model, tau0);
    if (model.domain().kind == DomainKind::Interval && std::isfinite(tau) && !model.domain().contains(tau)) {
        fail(ErrorKind::BlowupInRange, "a blow-up of the scale function lies between tau0 and tau");
    }
    model.jet(tau);
    return integral(model, tau0, tau);
}

PartialTime cosmological_time_partial(const Model &model, double tau0, double tau, double cutoff)
{
    require_anchor(model, tau0);
    const DomainInfo &d = model.domain();
    double end = tau;
    if (d.kind == DomainKind::Interval) {
        end = std::clamp(tau, d.lo + cutoff, d.hi - cutoff);
    }
    const bool truncated = end != tau;
    return {cosmological_time(model, tau0, end), end, truncated};
}

double conformal_time(const Model &model, double tau0, double t, double cutoff)
{
    require_anchor(model, tau0);
    if (!std::isfinite(t)) {
        fail(ErrorKind::OutOfImage, "non-finite cosmological time");
    }
    if (t == 0) {
        return tau0;
    }
    const DomainInfo &d = model.domain();
    const double dir = t > 0 ? 1.0 : -1.0;
    double limit = tau0 + dir * max_reach;
    if (d.kind == DomainKind::Interval) {
        limit = dir > 0 ? d.hi - cutoff : d.lo + cutoff;
    }

    // Walk away from the anchor with growing steps until t is passed.
    double a = tau0;
    double fa = 0;
    double step = 0.5;
    double b;
    double fb;
    for (;;) {
        b = dir > 0 ? std::min(a + step, limit) : std::max(a - step, limit);
        fb = fa + integral(model, a, b);
        if (dir * (fb - t) >= 0) {
            break;
        }
        if (b == limit) {
            fail(ErrorKind::OutOfImage, "t lies beyond the image of the domain under the cosmological clock");
        }
        a = b;
        fa = fb;
        step *= 2;
    }

    const double base = a;
    const double fbase = fa;
    const auto g = [&](double x) { return fbase + integral(model, base, x) - t; };
    double lo = std::min(a, b);
    double hi = std::max(a, b);
    double glo = dir > 0 ? fa - t : fb - t;
    double ghi = dir > 0 ? fb - t : fa - t;
    if (glo == 0) {
        return lo;
    }
    if (ghi == 0) {
        return hi;
    }
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52),
                                                     iters);
    return (r.first + r.second) / 2;
}

double scale_cosmological(const Model &model, double tau0, double t)
{
    return model.scale(conformal_time(model, tau0, t)).S;
}

TimeMap build_time_map(const Model &model, double tau0, double tau_lo, double tau_hi, int n)
{
    if (n < 2 || !(tau_hi > tau_lo)) {
        fail(ErrorKind::DomainError, "a time map needs n >= 2 and tau_lo < tau_hi");
    }
    TimeMap map{tau0, {}, model.domain()};
    map.samples.reserve(n);
    double t = cosmological_time(model, tau0, tau_lo);
    double prev = tau_lo;
    for (int i = 0; i < n; ++i) {
        const double tau = i == n - 1 ? tau_hi : tau_lo + (tau_hi - tau_lo) * i / (n - 1);
        t += integral(model, prev, tau);
        prev = tau;
        map.samples.push_back({tau, t});
    }
    return map;
}

} // namespace mcrit
