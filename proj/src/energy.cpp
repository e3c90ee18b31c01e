#include <mcrit/energy.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <mcrit/error.hpp>

#include "numerics.hpp"

namespace mcrit
{

namespace
{

constexpr double pi = std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);

constexpr int grid_points = 4096;
constexpr double golden_tol = 1e-12;
constexpr double interval_collar = 1e-6;
constexpr double open_window = 40;

void require_supported(const Model &model)
{
    if (is_hzero(model.kind())) {
        fail(ErrorKind::HZeroModel, "energy bounds are not defined for H = 0 models");
    }
}

EnergyBounds class_one_negative(double t, double h2)
{
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double half = std::sin(t / 2);
    const double f1 = std::pow(1 - c - sqrt3 * s, 2) / (3 * h2);
    const double f2 = 2 / (9 * h2) * half * half * (7 + c - 2 * std::cos(2 * t) - 5 * sqrt3 * s);
    const double f3 = -(1 - 2 * c) * std::pow(1 + 2 * c, 2) / (6 * h2);
    SecRule sec = SecNever{};
    if (t <= theta_I()) {
        sec = SecInterval{f3, f2};
    }
    return {f1, f2, WecAlways{}, sec, {{"f1", f1}, {"f2", f2}, {"f3", f3}}};
}

EnergyBounds class_one_positive(double t, double h2)
{
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double half = std::sin(t / 2);
    const double f1 = std::pow(1 - c + sqrt3 * s, 2) / (3 * h2);
    const double f2 = 2 / (9 * h2) * half * half * (7 + c - 2 * std::cos(2 * t) + 5 * sqrt3 * s);
    const double f3 = (1 - 2 * c - std::cos(2 * t) + 2 * std::cos(3 * t) + 2 * sqrt3 * s - sqrt3 * std::sin(2 * t)) / (6 * h2);
    return {f1, f2, WecAlways{}, SecInterval{f3, f2}, {{"f1_hat", f1}, {"f2_hat", f2}, {"f3_hat", f3}}};
}

EnergyBounds class_two_negative(double t, double h2)
{
    const double ch = std::cosh(t);
    const double sq = std::pow(1 - 2 * ch, 2);
    const double h1 = sq / (3 * h2);
    const double hh2 = (3 - 2 * ch) * sq / (18 * h2);
    const double h3 = -(1 + 2 * ch) * sq / (6 * h2);
    return {h1, hh2, WecAlways{}, SecInterval{h3, hh2}, {{"h1_hat", h1}, {"h2_hat", hh2}, {"h3_hat", h3}}};
}

EnergyBounds class_two_positive(double t, double h2, bool h_positive)
{
    const double star = (2 * std::cosh(3 * t) - 2) / (9 * h2);
    if (h_positive) {
        return {star, star, WecAlways{}, SecExactPoint{star}, {{"density_threshold", star}}};
    }
    const double at_omega = std::pow(1 + 2 * std::cosh(t), 2) / (3 * h2);
    return {std::min(star, at_omega),
            star,
            WecIffThetaAtMost{std::acosh(1.5)},
            SecNever{},
            {{"density_threshold_tau_star", star}, {"density_threshold_omega", at_omega}}};
}

struct Fluid {
    double m, mp, mm, m3p;
};

Fluid fluid_at(const Model &model, double tau)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const ConformalSample s = sample(model, tau);
    if (s.metric_state != MetricState::Lorentz) {
        return {inf, inf, inf, inf};
    }
    return {s.m_tilde, s.m_tilde + s.p_tilde, s.m_tilde - s.p_tilde, s.m_tilde / 3 + s.p_tilde};
}

double component(const Fluid &f, int k)
{
    switch (k) {
        case 0:
            return f.m;
        case 1:
            return f.mp;
        case 2:
            return f.mm;
        default:
            return f.m3p;
    }
}

std::pair<double, double> search_window(const Model &model)
{
    const DomainInfo &d = model.domain();
    if (d.kind == DomainKind::Interval) {
        return {d.lo + interval_collar, d.hi - interval_collar};
    }
    if (d.period) {
        return {0.0, *d.period};
    }
    return {-open_window, open_window};
}

} // namespace

double theta_I_equation(double x) noexcept
{
    return -10 + 22 * std::cos(x) + 11 * std::cos(2 * x) + 4 * std::cos(3 * x) + 10 * sqrt3 * std::sin(x) -
           5 * sqrt3 * std::sin(2 * x);
}

double theta_I()
{
    static const double root = [] {
        double lo = -pi / 3;
        double hi = 0;
        for (;;) {
            const double mid = (lo + hi) / 2;
            if (mid <= lo || mid >= hi) {
                break;
            }
            (theta_I_equation(mid) < 0 ? lo : hi) = mid;
        }
        return std::abs(theta_I_equation(lo)) < std::abs(theta_I_equation(hi)) ? lo : hi;
    }();
    return root;
}

EnergyBounds lambda_bounds(const Model &model)
{
    require_supported(model);
    const ModelClass &c = model.model_class();
    const double H = model.params().H;
    const double h2 = H * H;
    switch (c.kind) {
        case ModelKind::ClassI:
            return H < 0 ? class_one_negative(c.theta, h2) : class_one_positive(c.theta, h2);
        case ModelKind::ClassIINegative:
            return class_two_negative(c.theta, h2);
        case ModelKind::ClassIIPositive:
            return class_two_positive(c.theta, h2, H > 0);
        case ModelKind::ExceptionalTan: {
            const double density = 1 / (3 * h2);
            const double dec = 1 / (18 * h2);
            const double sec_lo = -1 / (2 * h2);
            return {density, dec, WecAlways{}, SecInterval{sec_lo, dec},
                    {{"density_threshold", density}, {"dec_threshold", dec}, {"sec_lower", sec_lo}}};
        }
        case ModelKind::ExceptionalCosh:
            return {0.0, 0.0, WecAlways{}, SecNever{}, {}};
        case ModelKind::ExceptionalSinh:
            return {0.0, 0.0, WecAlways{}, SecExactPoint{0.0}, {}};
        default:
            break;
    }
    fail(ErrorKind::HZeroModel, "energy bounds are not defined for H = 0 models");
}

bool wec_holds(const WecRule &rule, const ModelClass &cls) noexcept
{
    if (const auto *r = std::get_if<WecIffThetaAtMost>(&rule)) {
        return cls.theta <= r->theta_max;
    }
    return true;
}

bool sec_holds(const SecRule &rule, double Lambda) noexcept
{
    if (const auto *r = std::get_if<SecInterval>(&rule)) {
        return r->lo <= Lambda && Lambda <= r->hi;
    }
    if (const auto *r = std::get_if<SecExactPoint>(&rule)) {
        return std::abs(Lambda - r->value) <= sec_point_tolerance * (1 + std::abs(r->value));
    }
    return false;
}

Extrema numeric_extrema(const Model &model)
{
    require_supported(model);
    const auto [lo, hi] = search_window(model);
    std::vector<double> tau(grid_points);
    std::vector<Fluid> values(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        tau[i] = i == grid_points - 1 ? hi : lo + (hi - lo) * i / (grid_points - 1);
        values[i] = fluid_at(model, tau[i]);
    }

    Extrema out{};
    double *minima[] = {&out.minima.min_m, &out.minima.min_m_plus_p, &out.minima.min_m_minus_p,
                        &out.minima.min_m3_plus_p};
    for (int k = 0; k < 4; ++k) {
        int best = 0;
        for (int i = 1; i < grid_points; ++i) {
            if (component(values[i], k) < component(values[best], k)) {
                best = i;
            }
        }
        const double a = tau[std::max(best - 1, 0)];
        const double b = tau[std::min(best + 1, grid_points - 1)];
        const auto m = detail::golden_section([&](double x) { return component(fluid_at(model, x), k); }, a, b,
                                              golden_tol);
        const double grid_value = component(values[best], k);
        if (m.value <= grid_value) {
            *minima[k] = m.value;
            out.argmin[k] = m.x;
        } else {
            *minima[k] = grid_value;
            out.argmin[k] = tau[best];
        }
    }
    return out;
}

ConditionReport check_conditions(const Model &model)
{
    const EnergyBounds b = lambda_bounds(model);
    const double L = model.params().Lambda;
    ConditionReport r{};
    r.density_nonneg = L <= b.density_max_lambda;
    r.wec = wec_holds(b.wec_rule, model.model_class());
    r.dec = r.wec && b.dec_max_lambda && L <= *b.dec_max_lambda;
    r.sec = sec_holds(b.sec_rule, L);
    r.margins = numeric_extrema(model).minima;
    return r;
}

ActionValues action_integral(const Model &model, double tau_lo, double tau_hi)
{
    const ScaleJet lo_jet = model.jet(tau_lo);
    const ScaleJet hi_jet = model.jet(tau_hi);
    if (tau_lo == tau_hi) {
        return {0, 0, 0};
    }
    if (tau_lo > tau_hi) {
        fail(ErrorKind::DomainError, "action interval must satisfy tau_lo <= tau_hi");
    }
    const DomainInfo &d = model.domain();
    bool vanishes = lo_jet.S <= degenerate_scale || hi_jet.S <= degenerate_scale;
    for (double z : d.zeros_of_S) {
        if (d.period) {
            const double k = std::ceil((tau_lo - z) / *d.period);
            vanishes |= z + k * *d.period <= tau_hi;
        } else {
            vanishes |= z >= tau_lo && z <= tau_hi;
        }
    }
    if (vanishes) {
        fail(ErrorKind::SingularDensity, "the scale function vanishes inside the action interval");
    }

    const double L = model.params().Lambda;
    const auto pts = detail::breakpoints(tau_lo, tau_hi, d.blowups);
    const double two_pi2 = 2 * pi * pi;
    const double V = two_pi2 * detail::integrate(
                                   [&](double t) {
                                       const double S = model.jet(t).S;
                                       return S * S * S * S;
                                   },
                                   pts);
    const double M = two_pi2 * detail::integrate(
                                   [&](double t) {
                                       const double S = model.jet(t).S;
                                       return model.density_pressure(t).m_tilde * S * S * S * S;
                                   },
                                   pts);
    const double ML = 3 * pi / 4 * detail::integrate(
                                        [&](double t) {
                                            const ScaleJet j = model.jet(t);
                                            const double S2 = j.S * j.S;
                                            return j.S_prime * j.S_prime + S2 - L * S2 * S2 / 3;
                                        },
                                        pts);
    return {M, ML, V};
}

} // namespace mcrit
