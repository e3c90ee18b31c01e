#include <mcrit/elliptic.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <mcrit/error.hpp>

namespace mcrit
{

namespace
{

constexpr double eps = std::numeric_limits<double>::epsilon();

double polish_root(const Invariants &inv, double x)
{
    // Two Newton steps; the roots are simple whenever this is called.
    for (int i = 0; i < 2; ++i) {
        const double d = 12 * x * x - inv.g2;
        if (d == 0) {
            break;
        }
        x -= cubic(inv, x) / d;
    }
    return x;
}

ThreeRealRoots three_real_roots(const Invariants &inv)
{
    // Trigonometric solution of t^3 + p t + q = 0 with p = -g2/4, q = -g3/4.
    const double p = -inv.g2 / 4;
    const double q = -inv.g3 / 4;
    const double r = 2 * std::sqrt(-p / 3);
    const double arg = std::clamp(3 * q / (2 * p) * std::sqrt(-3 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
        x[k] = polish_root(inv, r * std::cos(phi - 2 * std::numbers::pi * k / 3));
    }
    std::sort(x.begin(), x.end(), std::greater<>{});
    return {x[0], x[1], x[2]};
}

OneRealRoot one_real_root(const Invariants &inv)
{
    const double p = -inv.g2 / 4;
    const double q = -inv.g3 / 4;
    double t;
    if (p < 0) {
        const double arg = -3 * std::abs(q) / (2 * p) * std::sqrt(-3 / p);
        t = -2 * std::copysign(1.0, q) * std::sqrt(-p / 3) * std::cosh(std::acosh(std::max(arg, 1.0)) / 3);
    } else if (p > 0) {
        t = -2 * std::sqrt(p / 3) * std::sinh(std::asinh(3 * q / (2 * p) * std::sqrt(3 / p)) / 3);
    } else {
        t = std::cbrt(-q);
    }
    t = polish_root(inv, t);
    const double im2 = (3 * t * t - inv.g2) / 4;
    return {t, -t / 2, std::sqrt(std::max(im2, 0.0))};
}

} // namespace

JacobiValues jacobi_sncndn(double u, double m, double m1)
{
    if (!(m >= 0 && m <= 1)) {
        fail(ErrorKind::DomainError, "Jacobi parameter outside [0, 1]");
    }
    if (m == 0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (m1 == 0) {
        const double sech = 1 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }

    // Descending Landen sequence (arithmetic-geometric mean).
    constexpr int max_steps = 24;
    std::array<double, max_steps + 1> a{}, c{};
    a[0] = 1;
    c[0] = std::sqrt(m);
    double b = std::sqrt(m1);
    int n = 0;
    while (std::abs(c[n]) > eps * a[n] && n < max_steps) {
        a[n + 1] = (a[n] + b) / 2;
        c[n + 1] = (a[n] - b) / 2;
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int j = n; j > 0; --j) {
        phi = (phi + std::asin(c[j] / a[j] * std::sin(phi))) / 2;
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // 1 - m sn^2 written without cancellation near m = 1.
    return {sn, cn, std::sqrt(cn * cn + m1 * sn * sn)};
}

JacobiValues jacobi_sncndn(double u, double m)
{
    return jacobi_sncndn(u, m, 1 - m);
}

double complete_k(double m, double m1)
{
    if (!(m >= 0 && m <= 1)) {
        fail(ErrorKind::DomainError, "elliptic parameter outside [0, 1]");
    }
    if (m1 == 0) {
        return std::numeric_limits<double>::infinity();
    }
    double a = 1;
    double b = std::sqrt(m1);
    while (std::abs(a - b) > 2 * eps * a) {
        const double an = (a + b) / 2;
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

double complete_k(double m)
{
    return complete_k(m, 1 - m);
}

double cubic(const Invariants &inv, double x) noexcept
{
    return (4 * x * x - inv.g2) * x - inv.g3;
}

double discriminant(const Invariants &inv) noexcept
{
    return 16 * (inv.g2 * inv.g2 * inv.g2 - 27 * inv.g3 * inv.g3);
}

bool is_degenerate(const Invariants &inv) noexcept
{
    const double g2 = std::abs(inv.g2);
    return std::abs(discriminant(inv)) < 1e-14 * (g2 * g2 * g2 + 1);
}

CubicRoots cubic_roots(const Invariants &inv)
{
    if (!std::isfinite(inv.g2) || !std::isfinite(inv.g3)) {
        fail(ErrorKind::DomainError, "non-finite invariants");
    }
    if (is_degenerate(inv)) {
        fail(ErrorKind::DegenerateRoots, "discriminant vanishes; use the degenerate closed forms");
    }
    if (discriminant(inv) > 0) {
        return three_real_roots(inv);
    }
    return one_real_root(inv);
}

HalfPeriods half_periods(const Invariants &inv)
{
    return RealWeierstrass(inv).half_periods();
}

RealWeierstrass::RealWeierstrass(Invariants inv)
    : m_inv(inv), m_delta(mcrit::discriminant(inv)), m_roots(cubic_roots(inv))
{
    if (const auto *r = std::get_if<ThreeRealRoots>(&m_roots)) {
        const double span = r->e1 - r->e3;
        m_beta = std::sqrt(span);
        m_m = (r->e2 - r->e3) / span;
        m_m1 = (r->e1 - r->e2) / span;
        const double k = complete_k(m_m, m_m1);
        const double kp = complete_k(m_m1, m_m);
        m_periods = {k / m_beta, {0.0, kp / m_beta}, Lattice::Rectangular};
    } else {
        const double e = std::get<OneRealRoot>(m_roots).real_root;
        m_gap = std::sqrt((12 * e * e - inv.g2) / 4);
        m_beta = std::sqrt(m_gap);
        m_m = 0.5 - 3 * e / (4 * m_gap);
        m_m1 = 0.5 + 3 * e / (4 * m_gap);
        const double k = complete_k(m_m, m_m1);
        const double kp = complete_k(m_m1, m_m);
        // The lattice in u = beta * tau is spanned by 2K and K + iK'.
        m_periods = {k / m_beta, {k / (2 * m_beta), kp / (2 * m_beta)}, Lattice::Rhombic};
    }
}

double RealWeierstrass::minimum(RealForm form) const
{
    check_form(form);
    if (const auto *r = std::get_if<ThreeRealRoots>(&m_roots)) {
        return form == RealForm::Shifted ? r->e3 : r->e1;
    }
    return std::get<OneRealRoot>(m_roots).real_root;
}

void RealWeierstrass::check_form(RealForm form) const
{
    if (form == RealForm::Shifted && m_delta <= 0) {
        fail(ErrorKind::DomainError, "the shifted real form exists only for a positive discriminant");
    }
}

RealWeierstrass::Reduced RealWeierstrass::reduce(double tau) const noexcept
{
    const double period = 2 * m_periods.omega1;
    const double t = tau - period * std::round(tau / period);
    return {std::abs(t), t < 0 ? -1.0 : 1.0};
}

double RealWeierstrass::pole_distance(double tau) const noexcept
{
    return reduce(tau).tau;
}

WpRatio RealWeierstrass::ratio(RealForm form, double tau) const
{
    check_form(form);
    const auto [t, sign] = reduce(tau);
    const auto [sn, cn, dn] = jacobi_sncndn(m_beta * t, m_m, m_m1);
    if (const auto *r = std::get_if<ThreeRealRoots>(&m_roots)) {
        if (form == RealForm::Shifted) {
            const double w = 2 * m_beta * (r->e2 - r->e3) * sn * cn * dn;
            return {r->e3 + (r->e2 - r->e3) * sn * sn, 1.0, sign * w, w * w};
        }
        const double span = r->e1 - r->e3;
        const double c = 2 * m_beta * span * cn * dn;
        return {r->e3 * sn * sn + span, sn * sn, -sign * c * sn, c * c};
    }
    const double e = std::get<OneRealRoot>(m_roots).real_root;
    const double sd2 = sn * sn * dn * dn;
    const double c = 2 * m_gap * m_beta * cn * (m_m * sn * sn * cn * cn - dn * dn);
    return {e * sd2 + m_gap * cn * cn, sd2, sign * c * sn * dn, c * c};
}

double RealWeierstrass::value(RealForm form, double tau) const
{
    check_form(form);
    if (form == RealForm::Unshifted && pole_distance(tau) < pole_radius) {
        fail(ErrorKind::PoleProximity, "tau is within the pole radius of a lattice point");
    }
    const WpRatio q = ratio(form, tau);
    return q.num / q.den;
}

double RealWeierstrass::derivative(RealForm form, double tau) const
{
    check_form(form);
    if (form == RealForm::Unshifted && pole_distance(tau) < pole_radius) {
        fail(ErrorKind::PoleProximity, "tau is within the pole radius of a lattice point");
    }
    if (form == RealForm::Shifted) {
        return ratio(form, tau).wronskian;
    }
    const auto [t, sign] = reduce(tau);
    const auto [sn, cn, dn] = jacobi_sncndn(m_beta * t, m_m, m_m1);
    const double sn3 = sn * sn * sn;
    if (const auto *r = std::get_if<ThreeRealRoots>(&m_roots)) {
        return -sign * 2 * m_beta * (r->e1 - r->e3) * cn * dn / sn3;
    }
    const double dn3 = dn * dn * dn;
    return sign * 2 * m_gap * m_beta * cn * (m_m * sn * sn * cn * cn - dn * dn) / (sn3 * dn3);
}

double wp(const Invariants &inv, RealForm form, double tau)
{
    return RealWeierstrass(inv).value(form, tau);
}

double wp_prime(const Invariants &inv, RealForm form, double tau)
{
    return RealWeierstrass(inv).derivative(form, tau);
}

double wp_ode_residual(const Invariants &inv, RealForm form, double tau)
{
    const RealWeierstrass w(inv);
    const double q = w.value(form, tau);
    const double dq = w.derivative(form, tau);
    return dq * dq - cubic(inv, q);
}

namespace
{

void require_sign(bool ok, const char *what)
{
    if (!ok) {
        fail(ErrorKind::DomainError, what);
    }
}

void require_off_pole(double distance)
{
    if (distance < RealWeierstrass::pole_radius) {
        fail(ErrorKind::PoleProximity, "tau is within the pole radius of a degenerate real form");
    }
}

// Distance in tau from v = s * tau to the nearest odd multiple of pi/2.
double tan_pole_distance(double v, double s)
{
    const double half_pi = std::numbers::pi / 2;
    const double nearest = half_pi + std::numbers::pi * std::round((v - half_pi) / std::numbers::pi);
    return std::abs(v - nearest) / s;
}

} // namespace

double wp_degenerate(double a, DegenerateForm form, double tau)
{
    switch (form) {
        case DegenerateForm::Tan: {
            require_sign(a < 0, "the tan form requires a < 0");
            const double s = std::sqrt(-3 * a);
            require_off_pole(tan_pole_distance(s * tau, s));
            const double t = std::tan(s * tau);
            return -3 * a * t * t - 2 * a;
        }
        case DegenerateForm::Tanh: {
            require_sign(a > 0, "the tanh form requires a > 0");
            const double t = std::tanh(std::sqrt(3 * a) * tau);
            return 3 * a * t * t - 2 * a;
        }
        case DegenerateForm::Csch: {
            require_sign(a > 0, "the csch form requires a > 0");
            require_off_pole(std::abs(tau));
            const double c = 1 / std::sinh(std::sqrt(3 * a) * tau);
            return a * (1 + 3 * c * c);
        }
        case DegenerateForm::Square:
            require_sign(a == 0, "the square form requires g2 = g3 = 0, i.e. a = 0");
            require_off_pole(std::abs(tau));
            return 1 / (tau * tau);
    }
    fail(ErrorKind::DomainError, "unknown degenerate form");
}

double wp_degenerate_prime(double a, DegenerateForm form, double tau)
{
    switch (form) {
        case DegenerateForm::Tan: {
            require_sign(a < 0, "the tan form requires a < 0");
            const double s = std::sqrt(-3 * a);
            require_off_pole(tan_pole_distance(s * tau, s));
            const double t = std::tan(s * tau);
            return -6 * a * s * t * (1 + t * t);
        }
        case DegenerateForm::Tanh: {
            require_sign(a > 0, "the tanh form requires a > 0");
            const double s = std::sqrt(3 * a);
            const double t = std::tanh(s * tau);
            return 6 * a * s * t * (1 - t * t);
        }
        case DegenerateForm::Csch: {
            require_sign(a > 0, "the csch form requires a > 0");
            require_off_pole(std::abs(tau));
            const double s = std::sqrt(3 * a);
            const double c = 1 / std::sinh(s * tau);
            return -6 * a * s * c * c / std::tanh(s * tau);
        }
        case DegenerateForm::Square:
            require_sign(a == 0, "the square form requires g2 = g3 = 0, i.e. a = 0");
            require_off_pole(std::abs(tau));
            return -2 / (tau * tau * tau);
    }
    fail(ErrorKind::DomainError, "unknown degenerate form");
}

} // namespace mcrit
