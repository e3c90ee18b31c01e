#pragma once

// Real forms of the Weierstrass elliptic function with real invariants.
//
// A real form is a real solution Q of Q'^2 = 4Q^3 - g2 Q - g3. For a
// nonzero discriminant there are at most two of them (up to translation):
//
//   Unshifted  Q(tau) = wp(tau),          double poles at 2h*omega1
//   Shifted    Q(tau) = wp(tau + omega3), bounded in [e3, e2], Delta > 0 only
//
// Both are evaluated through Jacobi elliptic functions of a real argument,
// so no complex lattice arithmetic is involved.

#include <complex>
#include <variant>

namespace mcrit
{

struct Invariants {
    double g2 = 0;
    double g3 = 0;
};

struct ThreeRealRoots {
    double e1, e2, e3; // e1 > e2 > e3
};

struct OneRealRoot {
    double real_root;
    double re; // real part of the complex pair, equal to -real_root / 2
    double im; // positive imaginary part of the complex pair
};

using CubicRoots = std::variant<ThreeRealRoots, OneRealRoot>;

enum class Lattice { Rectangular, Rhombic };

struct HalfPeriods {
    double omega1;              // real, positive
    std::complex<double> omega3; // Im(omega3 / omega1) > 0
    Lattice lattice;
};

enum class RealForm { Unshifted, Shifted };

enum class DegenerateForm { Tan, Tanh, Csch, Square };

struct JacobiValues {
    double sn, cn, dn;
};

/// sn, cn, dn of a real argument by descending Landen transformation.
/// Parameter m = k^2 in [0, 1]; m1 = 1 - m is passed separately so that
/// moduli close to 1 keep full relative accuracy in dn.
JacobiValues jacobi_sncndn(double u, double m, double m1);
JacobiValues jacobi_sncndn(double u, double m);

/// Complete elliptic integral of the first kind K(m) via the AGM.
double complete_k(double m, double m1);
double complete_k(double m);

/// P(x) = 4x^3 - g2 x - g3.
double cubic(const Invariants &inv, double x) noexcept;

/// 16 (g2^3 - 27 g3^2).
double discriminant(const Invariants &inv) noexcept;

/// True when |Delta| < 1e-14 (|g2|^3 + 1).
bool is_degenerate(const Invariants &inv) noexcept;

/// Throws DegenerateRoots when the discriminant vanishes (see is_degenerate).
CubicRoots cubic_roots(const Invariants &inv);

/// Throws DegenerateRoots when the discriminant vanishes.
HalfPeriods half_periods(const Invariants &inv);

// Q = num / den and Q' = wronskian / den^2. The numbers stay finite
// through the poles of Q, which is what lets the conformal scale function
// 3H / (12Q - 1) and its derivatives be evaluated at its zeros.
struct WpRatio {
    double num;
    double den;
    double wronskian;
    double wronskian_sq_per_den; // wronskian^2 / den, continued through den = 0
};

// Precomputed evaluator for one invariant pair. Cheap to copy, immutable.
class RealWeierstrass
{
public:
    static constexpr double pole_radius = 1e-8;

    explicit RealWeierstrass(Invariants inv);

    const Invariants &invariants() const noexcept
    {
        return m_inv;
    }
    double discriminant() const noexcept
    {
        return m_delta;
    }
    const CubicRoots &roots() const noexcept
    {
        return m_roots;
    }
    const HalfPeriods &half_periods() const noexcept
    {
        return m_periods;
    }
    double omega1() const noexcept
    {
        return m_periods.omega1;
    }

    /// Lower bound of Q on the real line: e3 (Shifted), e1 or the real root (Unshifted).
    double minimum(RealForm form) const;

    /// Shifted requires a positive discriminant; throws DomainError otherwise.
    double value(RealForm form, double tau) const;
    double derivative(RealForm form, double tau) const;
    WpRatio ratio(RealForm form, double tau) const;

    /// Distance from tau to the nearest pole 2h*omega1 of the unshifted form.
    double pole_distance(double tau) const noexcept;

private:
    struct Reduced {
        double tau; // in [0, omega1]
        double sign; // sign flip applied to odd quantities
    };
    Reduced reduce(double tau) const noexcept;
    void check_form(RealForm form) const;

    Invariants m_inv;
    double m_delta;
    CubicRoots m_roots;
    HalfPeriods m_periods;
    // Jacobi data: u = beta * tau, parameter m, complementary parameter m1.
    double m_beta;
    double m_m;
    double m_m1;
    // Delta < 0 only: |e_real - e_complex|.
    double m_gap = 0;
};

double wp(const Invariants &inv, RealForm form, double tau);
double wp_prime(const Invariants &inv, RealForm form, double tau);

/// Q'(tau)^2 - P(Q(tau)), with Q' from the analytic derivative.
double wp_ode_residual(const Invariants &inv, RealForm form, double tau);

/// Closed forms for Delta = 0 with the translation constant set to 0:
///   Tan    -3a tan^2(sqrt(-3a) tau) - 2a      (a < 0)
///   Tanh    3a tanh^2(sqrt(3a) tau) - 2a      (a > 0)
///   Csch    a (1 + 3 csch^2(sqrt(3a) tau))    (a > 0)
///   Square  1 / tau^2                          (a = 0)
/// They solve the ODE with g2 = 12 a^2, g3 = -8 a^3.
double wp_degenerate(double a, DegenerateForm form, double tau);
double wp_degenerate_prime(double a, DegenerateForm form, double tau);

inline Invariants degenerate_invariants(double a) noexcept
{
    return {12 * a * a, -8 * a * a * a};
}

} // namespace mcrit
