#include <mcrit/model.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <mcrit/error.hpp>

namespace mcrit
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double four_ninths = 4.0 / 9.0;
constexpr double g2_family = 1.0 / 12.0;

bool finite(const CriticalParams &p)
{
    return std::isfinite(p.a) && std::isfinite(p.H) && std::isfinite(p.Lambda);
}

int sign_of(double x)
{
    return x < 0 ? -1 : 1;
}

DomainInfo full_line(std::optional<double> period, std::vector<double> zeros)
{
    DomainInfo d;
    d.period = period;
    d.zeros_of_S = std::move(zeros);
    return d;
}

DomainInfo interval(double lo, double hi, std::vector<double> zeros)
{
    DomainInfo d;
    d.kind = DomainKind::Interval;
    d.lo = lo;
    d.hi = hi;
    d.zeros_of_S = std::move(zeros);
    d.blowups = {lo, hi};
    return d;
}

} // namespace

std::string_view label(ModelKind kind) noexcept
{
    switch (kind) {
        case ModelKind::ExceptionalTan:
            return "tan";
        case ModelKind::ExceptionalCosh:
            return "cosh";
        case ModelKind::ExceptionalSinh:
            return "sinh";
        case ModelKind::HZeroSin:
            return "H0-sin";
        case ModelKind::HZeroSinh:
            return "H0-sinh";
        case ModelKind::HZeroLinear:
            return "H0-linear";
        case ModelKind::ClassI:
            return "I";
        case ModelKind::ClassIINegative:
            return "II-";
        case ModelKind::ClassIIPositive:
            return "II+";
    }
    return "?";
}

std::string_view label(MetricState state) noexcept
{
    switch (state) {
        case MetricState::Lorentz:
            return "lorentz";
        case MetricState::Degenerate:
            return "degenerate";
        case MetricState::Pole:
            return "pole";
    }
    return "?";
}

bool is_hzero(ModelKind kind) noexcept
{
    return kind == ModelKind::HZeroSin || kind == ModelKind::HZeroSinh || kind == ModelKind::HZeroLinear;
}

bool is_exceptional(ModelKind kind) noexcept
{
    return kind == ModelKind::ExceptionalTan || kind == ModelKind::ExceptionalCosh ||
           kind == ModelKind::ExceptionalSinh;
}

ModelClass classify(const CriticalParams &p)
{
    if (!finite(p)) {
        fail(ErrorKind::DomainError, "non-finite parameters");
    }
    if (p.H == 0) {
        if (p.a > 0) {
            return {ModelKind::HZeroSin};
        }
        return {p.a < 0 ? ModelKind::HZeroSinh : ModelKind::HZeroLinear};
    }
    const double x = p.a * p.H * p.H;
    if (std::abs(x) < boundary_tolerance) {
        return {p.H < 0 ? ModelKind::ExceptionalCosh : ModelKind::ExceptionalSinh};
    }
    if (std::abs(x - four_ninths) < boundary_tolerance) {
        return {ModelKind::ExceptionalTan};
    }
    // Half-angle forms of cos 3theta = 1 - 9x/2 and cosh 3theta = |1 - 9x/2|,
    // well conditioned at both ends of each range.
    const double r = 1.5 * std::sqrt(std::abs(x));
    if (x > four_ninths) {
        return {ModelKind::ClassIINegative, 2 * std::acosh(r) / 3, 0};
    }
    if (x > 0) {
        return {ModelKind::ClassI, -2 * std::atan2(r, std::sqrt(1 - r * r)) / 3, sign_of(p.H)};
    }
    return {ModelKind::ClassIIPositive, 2 * std::asinh(r) / 3, sign_of(p.H)};
}

Invariants invariants_of(const CriticalParams &p)
{
    if (p.H == 0) {
        fail(ErrorKind::HZeroModel, "H = 0 models have no Weierstrass invariants");
    }
    return {g2_family, (p.a * p.H * p.H - 2.0 / 9.0) / 48};
}

CriticalParams params_from_theta(ModelKind kind, double theta, double H, double Lambda)
{
    if (!(H != 0) || !std::isfinite(H) || !std::isfinite(theta) || !std::isfinite(Lambda)) {
        fail(ErrorKind::DomainError, "theta, H and Lambda must be finite with H != 0");
    }
    const double scale = 4 / (9 * H * H);
    switch (kind) {
        case ModelKind::ClassI: {
            if (!(theta > -pi / 3 && theta < 0)) {
                fail(ErrorKind::DomainError, "Class I requires theta in (-pi/3, 0)");
            }
            const double s = std::sin(1.5 * theta);
            return {scale * s * s, H, Lambda};
        }
        case ModelKind::ClassIINegative: {
            if (!(theta > 0)) {
                fail(ErrorKind::DomainError, "Class II requires theta > 0");
            }
            const double c = std::cosh(1.5 * theta);
            return {scale * c * c, H, Lambda};
        }
        case ModelKind::ClassIIPositive: {
            if (!(theta > 0)) {
                fail(ErrorKind::DomainError, "Class II requires theta > 0");
            }
            const double s = std::sinh(1.5 * theta);
            return {-scale * s * s, H, Lambda};
        }
        default:
            fail(ErrorKind::DomainError, "only Class I and Class II models are parametrized by theta");
    }
}

CriticalParams exceptional_params(ModelKind kind, double H, double Lambda)
{
    switch (kind) {
        case ModelKind::ExceptionalTan:
            if (!(H > 0)) {
                fail(ErrorKind::DomainError, "the tan model requires H > 0");
            }
            return {4 / (9 * H * H), H, Lambda};
        case ModelKind::ExceptionalCosh:
            if (!(H < 0)) {
                fail(ErrorKind::DomainError, "the cosh model requires H < 0");
            }
            return {0, H, Lambda};
        case ModelKind::ExceptionalSinh:
            if (!(H > 0)) {
                fail(ErrorKind::DomainError, "the sinh model requires H > 0");
            }
            return {0, H, Lambda};
        default:
            fail(ErrorKind::DomainError, "not an exceptional kind");
    }
}

double scale_cosmological_closed_forms(double a, double t, double c)
{
    if (a > 0) {
        return std::abs(std::sqrt(3 / a) * std::sin(std::sqrt(a / 3) * t + c));
    }
    if (a < 0) {
        return std::abs(std::sqrt(-3 / a) * std::sinh(std::sqrt(-a / 3) * t + c));
    }
    return std::abs(t + c);
}

Model::Model(const CriticalParams &params) : m_params(params), m_class(classify(params))
{
    const double H = params.H;
    switch (m_class.kind) {
        case ModelKind::HZeroSin:
        case ModelKind::HZeroSinh:
        case ModelKind::HZeroLinear:
            return;
        case ModelKind::ExceptionalTan:
            if (H < 0) {
                fail(ErrorKind::DomainError, "a H^2 = 4/9 with H < 0 gives a negative scale function");
            }
            m_domain = full_line(2 * pi, {pi});
            return;
        case ModelKind::ExceptionalCosh:
            m_domain = full_line(std::nullopt, {});
            return;
        case ModelKind::ExceptionalSinh:
            m_domain = full_line(std::nullopt, {0.0});
            return;
        case ModelKind::ClassIINegative:
            if (H < 0) {
                fail(ErrorKind::DomainError, "a H^2 > 4/9 with H < 0 gives a negative scale function");
            }
            break;
        default:
            break;
    }

    m_wp.emplace(invariants_of(params));
    const double w = m_wp->omega1();
    if (m_class.kind == ModelKind::ClassI && H < 0) {
        m_form = RealForm::Shifted;
        m_domain = full_line(2 * w, {});
        return;
    }
    m_form = RealForm::Unshifted;
    if (m_class.kind != ModelKind::ClassIIPositive) {
        m_domain = full_line(2 * w, {0.0});
        return;
    }

    // 12 wp - 1 changes sign exactly once on (0, omega).
    const auto f = [this](double tau) {
        const WpRatio r = m_wp->ratio(m_form, tau);
        return 12 * r.num - r.den;
    };
    double lo = 1e-6;
    double hi = w - 1e-6;
    if (!(f(lo) > 0 && f(hi) < 0)) {
        fail(ErrorKind::NumericalFailure, "wp = 1/12 is not bracketed on (0, omega)");
    }
    while (hi - lo > 1e-13) {
        const double mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) > 0 ? lo : hi) = mid;
    }
    m_tau_star = (lo + hi) / 2;
    if (H > 0) {
        m_domain = interval(-m_tau_star, m_tau_star, {0.0});
    } else {
        m_domain = interval(m_tau_star, 2 * w - m_tau_star, {});
    }
}

void Model::require_conformal() const
{
    if (is_hzero(m_class.kind)) {
        fail(ErrorKind::HZeroModel, "H = 0 models have no conformal scale function; use the cosmological closed forms");
    }
}

const DomainInfo &Model::domain() const
{
    require_conformal();
    return m_domain;
}

double Model::omega() const
{
    if (!m_wp) {
        fail(ErrorKind::DomainError, "only the general classes have an elliptic half-period");
    }
    return m_wp->omega1();
}

double Model::tau_star() const
{
    if (m_class.kind != ModelKind::ClassIIPositive) {
        fail(ErrorKind::DomainError, "tau* exists only for Class II of positive type");
    }
    return m_tau_star;
}

void Model::require_in_domain(double tau) const
{
    require_conformal();
    if (!std::isfinite(tau)) {
        fail(ErrorKind::OutOfDomain, "non-finite conformal time");
    }
    for (double b : m_domain.blowups) {
        if (std::abs(tau - b) < blowup_radius) {
            fail(ErrorKind::PoleProximity, "tau is within the blow-up radius of the scale function");
        }
    }
    if (!m_domain.contains(tau)) {
        fail(ErrorKind::OutOfDomain, "tau lies outside the maximal interval of definition");
    }
}

double Model::raw_q(double tau) const
{
    const WpRatio r = m_wp->ratio(m_form, tau);
    return r.num / r.den;
}

ScaleJet Model::raw_jet(double tau) const
{
    const double H = m_params.H;
    switch (m_class.kind) {
        case ModelKind::ExceptionalTan: {
            const double c = std::cos(tau / 2);
            const double s = std::sin(tau / 2);
            const double d = 1 + 2 * s * s;
            const double d2 = d * d;
            return {3 * H * c * c / d, -9 * H * s * c / d2, -9 * H * ((c * c - s * s) * d / 2 - 4 * s * s * c * c) / (d2 * d)};
        }
        case ModelKind::ExceptionalCosh:
            return {-H / 2 * (1 + std::cosh(tau)), -H / 2 * std::sinh(tau), -H / 2 * std::cosh(tau)};
        case ModelKind::ExceptionalSinh: {
            const double s = std::sinh(tau / 2);
            return {H * s * s, H / 2 * std::sinh(tau), H / 2 * std::cosh(tau)};
        }
        default:
            break;
    }
    // S = 3H / (12Q - 1) with Q = num/den; multiplying through by powers of
    // den keeps every term finite where Q has a pole.
    const WpRatio r = m_wp->ratio(m_form, tau);
    const double g2 = m_wp->invariants().g2;
    const double d = 12 * r.num - r.den;
    const double d2 = d * d;
    const double second = (6 * r.num * r.num - g2 * r.den * r.den / 2) * d - 24 * r.wronskian_sq_per_den;
    return {3 * H * r.den / d, -36 * H * r.wronskian / d2, -36 * H * second / (d2 * d)};
}

ScaleValue Model::scale(double tau) const
{
    const ScaleJet j = jet(tau);
    return {j.S, j.S_prime};
}

ScaleJet Model::jet(double tau) const
{
    require_in_domain(tau);
    ScaleJet j = raw_jet(tau);
    // Roundoff can leave -0 or a few ulps below zero at a double zero.
    j.S = std::max(j.S, 0.0);
    return j;
}

DensityPressure Model::density_pressure(double tau) const
{
    const ScaleJet j = jet(tau);
    if (j.S <= degenerate_scale) {
        fail(ErrorKind::SingularDensity, "density and pressure have a pole where the scale function vanishes");
    }
    if (!m_wp) {
        return fluid_from_jet(m_params, j);
    }
    const double q = raw_q(tau);
    const double u = 12 * q - 1;
    const double h2 = 9 * m_params.H * m_params.H;
    const double al = m_params.a + m_params.Lambda;
    return {(u * u * (5 + 12 * q) / h2 - al) / (8 * pi), (al / 2 - u * u / h2) / (4 * pi)};
}

DomainInfo domain_of(const Model &model)
{
    return model.domain();
}

ScaleValue conformal_scale(const Model &model, double tau)
{
    return model.scale(tau);
}

DensityPressure density_pressure(const Model &model, double tau)
{
    return model.density_pressure(tau);
}

DensityPressure fluid_from_jet(const CriticalParams &p, const ScaleJet &j)
{
    const double S = j.S;
    const double S2 = S * S;
    const double sp2 = j.S_prime * j.S_prime;
    const double m = 3 / (8 * pi) * (sp2 / (S2 * S2) + 1 / S2 - p.Lambda / 3);
    const double pr = -1 / (4 * pi * S) * (j.S_second / S2 - sp2 / (2 * S2 * S) + 1 / (2 * S) - p.Lambda * S / 2);
    return {m, pr};
}

Residuals residuals_of(const CriticalParams &p, const ScaleJet &j)
{
    const double S = j.S;
    const double S2 = S * S;
    Residuals r{};
    r.ve3 = j.S_prime * j.S_prime + p.a / 3 * S2 * S2 - S2 - p.H * S;
    r.ve5 = j.S_second - (-2 * p.a / 3 * S2 * S + S + p.H / 2);
    const auto [m, pr] = fluid_from_jet(p, j);
    const double al = p.Lambda + p.a;
    const double base = std::max(al - 8 * pi * pr, 0.0);
    r.eqs = 8 * pi / 3 * m + 8 * pi * pr - 2 * al / 3 - p.H / (2 * std::sqrt(2.0)) * base * std::sqrt(base);
    const double sdot = j.S_prime / S;
    r.ve2 = S * (sdot * sdot + p.a / 3 * S2 - 1) - p.H;
    return r;
}

Residuals residuals(const Model &model, double tau)
{
    const ScaleJet j = model.jet(tau);
    if (j.S <= degenerate_scale) {
        fail(ErrorKind::SingularDensity, "residuals are singular where the scale function vanishes");
    }
    return residuals_of(model.params(), j);
}

ConformalSample sample(const Model &model, double tau)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    const DomainInfo &d = model.domain();
    for (double b : d.blowups) {
        if (std::abs(tau - b) < blowup_radius) {
            return {tau, inf, nan, nan, nan, MetricState::Pole};
        }
    }
    const ScaleJet j = model.jet(tau);
    if (j.S <= degenerate_scale) {
        return {tau, j.S, j.S_prime, inf, -inf, MetricState::Degenerate};
    }
    const auto [m, p] = model.density_pressure(tau);
    return {tau, j.S, j.S_prime, m, p, MetricState::Lorentz};
}

} // namespace mcrit
