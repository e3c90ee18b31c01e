#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <mcrit/elliptic.hpp>
#include <mcrit/error.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace mcrit;
using support::error_kind;
using support::kind_of;

namespace
{

const double e_lemn = 1 / (4 * std::sqrt(3.0));

// Invariant pairs covering both discriminant signs and both degenerate edges.
const Invariants roster[] = {
    {1.0 / 12, 0.0},
    {1.0 / 12, 1.0 / 216 - 1e-3},
    {1.0 / 12, -1.0 / 216 + 1e-4},
    {1.0 / 12, -3.5 / 216},
    {1.0 / 12, 10.0 / 216},
    {1.0 / 12, 1.0 / 216 + 1e-6},
    {1.0 / 12, 1.0 / 216 - 1e-6},
    {2.0, 0.3},
    {-1.0, 0.5},
};

} // namespace

TEST_CASE("discriminant")
{
    CHECK(discriminant({1.0 / 12, 1.0 / 216}) == doctest::Approx(0).epsilon(1e-18));
    CHECK(std::abs(discriminant({1.0 / 12, 1.0 / 216})) < 1e-16);
    CHECK(discriminant({1.0 / 12, 0}) == doctest::Approx(1.0 / 108).epsilon(1e-15));
    CHECK(discriminant({0, 0}) == 0);
    CHECK(is_degenerate({1.0 / 12, 1.0 / 216}));
    CHECK_FALSE(is_degenerate({1.0 / 12, 1.0 / 216 - 1e-6}));
}

TEST_CASE("cubic roots")
{
    SUBCASE("lemniscatic pair matches the angular parametrization at -pi/6")
    {
        const auto r = std::get<ThreeRealRoots>(cubic_roots({1.0 / 12, 0}));
        const double t = -oracle::pi / 6;
        const double k = 1 / (4 * std::sqrt(3.0));
        CHECK(r.e1 == doctest::Approx(k * (std::cos(t) / std::sqrt(3.0) - std::sin(t))).epsilon(1e-14));
        CHECK(std::abs(r.e2 - k * (std::cos(t) / std::sqrt(3.0) + std::sin(t))) < 1e-15);
        CHECK(r.e3 == doctest::Approx(-e_lemn).epsilon(1e-14));
    }
    SUBCASE("one real root of positive type")
    {
        const auto r = std::get<OneRealRoot>(cubic_roots({1.0 / 12, -3.5 / 216}));
        const double theta = std::acosh(3.5) / 3;
        CHECK(r.real_root == doctest::Approx(-std::cosh(theta) / 6).epsilon(1e-14));
        CHECK(r.re == doctest::Approx(-r.real_root / 2).epsilon(1e-15));
        CHECK(r.im == doctest::Approx(std::sinh(theta) / (4 * std::sqrt(3.0))).epsilon(1e-12));
    }
    SUBCASE("degenerate invariants are refused")
    {
        CHECK(kind_of(error_kind([] { cubic_roots({1.0 / 12, 1.0 / 216}); })) ==
              kind_of(ErrorKind::DegenerateRoots));
    }
    SUBCASE("roots agree with a bisection oracle and have small residuals")
    {
        for (const auto &inv : roster) {
            const auto roots = cubic_roots(inv);
            const auto ref = oracle::real_roots(inv.g2, inv.g3);
            const auto res = [&](double x) {
                return std::abs(cubic(inv, x)) / std::max(1.0, std::abs(x * x * x));
            };
            if (const auto *t = std::get_if<ThreeRealRoots>(&roots)) {
                REQUIRE(ref.size() == 3);
                CHECK(t->e1 > t->e2);
                CHECK(t->e2 > t->e3);
                CHECK(std::abs(t->e1 + t->e2 + t->e3) < 1e-14);
                CHECK(t->e1 == doctest::Approx(ref[0]).epsilon(1e-12));
                CHECK(std::abs(t->e2 - ref[1]) < 1e-12);
                CHECK(t->e3 == doctest::Approx(ref[2]).epsilon(1e-12));
                CHECK(res(t->e1) <= 1e-12);
                CHECK(res(t->e2) <= 1e-12);
                CHECK(res(t->e3) <= 1e-12);
                CHECK(discriminant(inv) > 0);
            } else {
                const auto &o = std::get<OneRealRoot>(roots);
                REQUIRE(ref.size() == 1);
                CHECK(o.real_root == doctest::Approx(ref[0]).epsilon(1e-12));
                CHECK(o.real_root == doctest::Approx(-2 * o.re));
                CHECK(o.im > 0);
                CHECK(res(o.real_root) <= 1e-12);
                CHECK(discriminant(inv) < 0);
            }
        }
    }
}

TEST_CASE("jacobi functions agree with boost")
{
    for (double m : {0.0, 1e-12, 0.1, 0.5, 0.9, 1.0}) {
        for (double u : {-7.3, -1.0, 0.0, 0.3, 1.7, 4.0, 12.5}) {
            double cn_ref, dn_ref;
            const double sn_ref = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn_ref, &dn_ref);
            const auto v = jacobi_sncndn(u, m);
            CHECK(v.sn == doctest::Approx(sn_ref).epsilon(1e-12).scale(1));
            CHECK(v.cn == doctest::Approx(cn_ref).epsilon(1e-12).scale(1));
            CHECK(v.dn == doctest::Approx(dn_ref).epsilon(1e-12).scale(1));
        }
        if (m < 1) {
            CHECK(complete_k(m) == doctest::Approx(boost::math::ellint_1(std::sqrt(m))).epsilon(1e-14));
        }
    }
    CHECK(kind_of(error_kind([] { jacobi_sncndn(0.1, 1.5); })) == kind_of(ErrorKind::DomainError));
}

TEST_CASE("jacobi functions close to m = 1 against high-precision values")
{
    // 40-digit reference values at m = 0.999999.
    const double m = 0.999999;
    struct Row {
        double u, cn, dn;
    };
    const Row rows[] = {
        {-7.3, 0.001166042373974412305, 0.001536116355709365177},
        {12.5, -0.03352519407619489627, 0.03354008816189850508},
        {4.0, 0.03661221216683290187, 0.03662584796690905475},
    };
    for (const auto &r : rows) {
        const auto v = jacobi_sncndn(r.u, m);
        CHECK(std::abs(v.cn - r.cn) < 1e-14);
        CHECK(std::abs(v.dn - r.dn) < 1e-14);
    }
    CHECK(complete_k(m) == doctest::Approx(8.294051463601062202).epsilon(1e-14));
}

TEST_CASE("jacobi functions near m = 1 keep their identities")
{
    for (double m1 : {1e-9, 1e-12, 1e-15}) {
        const double m = 1 - m1;
        for (double u : {0.5, 4.0, 12.0}) {
            const auto v = jacobi_sncndn(u, m, m1);
            CHECK(v.sn * v.sn + v.cn * v.cn == doctest::Approx(1).epsilon(1e-14));
            CHECK(v.dn * v.dn + m * v.sn * v.sn == doctest::Approx(1).epsilon(1e-12));
            CHECK(v.dn >= v.cn);
        }
        // K(m) = ln(4 / k') + O(m1 ln m1) as m -> 1.
        CHECK(complete_k(m, m1) == doctest::Approx(std::log(4 / std::sqrt(m1))).epsilon(1e-6));
    }
}

TEST_CASE("half periods")
{
    SUBCASE("lemniscatic case")
    {
        const auto hp = half_periods({1.0 / 12, 0});
        CHECK(hp.omega1 == doctest::Approx(oracle::lemniscatic_half_period()).epsilon(1e-13));
        CHECK(std::abs(hp.omega1 - 3.45088) < 1e-4);
        CHECK(hp.omega3.imag() == doctest::Approx(hp.omega1).epsilon(1e-13));
        CHECK(hp.omega3.real() == 0);
        CHECK(hp.lattice == Lattice::Rectangular);
    }
    SUBCASE("lattice tag follows the discriminant")
    {
        CHECK(half_periods({1.0 / 12, 1.0 / 216 - 1e-3}).lattice == Lattice::Rectangular);
        const auto rh = half_periods({1.0 / 12, -3.5 / 216});
        CHECK(rh.lattice == Lattice::Rhombic);
        CHECK(rh.omega3.real() != 0);
    }
    SUBCASE("real half-period against direct integration, imaginary against Carlson")
    {
        for (const auto &inv : roster) {
            const auto hp = half_periods(inv);
            CHECK(hp.omega1 == doctest::Approx(oracle::real_half_period(inv.g2, inv.g3)).epsilon(1e-12));
            CHECK(hp.omega1 > 0);
            CHECK((hp.omega3 / hp.omega1).imag() > 0);
            const auto roots = cubic_roots(inv);
            if (const auto *t = std::get_if<ThreeRealRoots>(&roots)) {
                const double beta = std::sqrt(t->e1 - t->e3);
                const double k1 = std::sqrt((t->e1 - t->e2) / (t->e1 - t->e3));
                CHECK(hp.omega3.imag() == doctest::Approx(boost::math::ellint_1(k1) / beta).epsilon(1e-12));
            } else {
                CHECK(hp.omega3.real() == doctest::Approx(hp.omega1 / 2).epsilon(1e-14));
            }
        }
    }
    CHECK(kind_of(error_kind([] { half_periods({1.0 / 12, 1.0 / 216}); })) == kind_of(ErrorKind::DegenerateRoots));
}

TEST_CASE("wp against the Laurent series")
{
    const Invariants pairs[] = {{1.0 / 12, 0.0}, {1.0 / 12, -3.5 / 216}, {1.0 / 12, 10.0 / 216}, {2.0, 0.3}};
    for (const auto &inv : pairs) {
        const RealWeierstrass w(inv);
        const oracle::LaurentWp series(inv.g2, inv.g3);
        const double limit = 0.8 * w.omega1();
        for (double tau = 0.05; tau < limit; tau += 0.037) {
            CHECK(w.value(RealForm::Unshifted, tau) == doctest::Approx(series.value(tau)).epsilon(1e-11));
            CHECK(w.derivative(RealForm::Unshifted, tau) == doctest::Approx(series.derivative(tau)).epsilon(1e-10));
            CHECK(w.value(RealForm::Unshifted, -tau) == w.value(RealForm::Unshifted, tau));
        }
        if (discriminant(inv) > 0) {
            // wp(z + omega3) = e3 + (e3 - e1)(e3 - e2) / (wp(z) - e3)
            const auto r = std::get<ThreeRealRoots>(w.roots());
            for (double tau = 0.05; tau < limit; tau += 0.041) {
                const double ref = r.e3 + (r.e3 - r.e1) * (r.e3 - r.e2) / (series.value(tau) - r.e3);
                CHECK(w.value(RealForm::Shifted, tau) == doctest::Approx(ref).epsilon(1e-11).scale(1e-3));
            }
        }
    }
}

TEST_CASE("wp properties")
{
    std::mt19937_64 rng(20240611);
    for (const auto &inv : roster) {
        const RealWeierstrass w(inv);
        const double om = w.omega1();
        std::uniform_real_distribution<double> tau_dist(-3 * om, 3 * om);
        std::vector<RealForm> forms{RealForm::Unshifted};
        if (w.discriminant() > 0) {
            forms.push_back(RealForm::Shifted);
        }
        const auto roots = w.roots();
        for (RealForm f : forms) {
            const double floor = w.minimum(f);
            for (int i = 0; i < 200; ++i) {
                const double tau = tau_dist(rng);
                if (f == RealForm::Unshifted && w.pole_distance(tau) < 1e-3) {
                    continue;
                }
                const double q = w.value(f, tau);
                const double res = std::abs(wp_ode_residual(inv, f, tau));
                CHECK(res <= 1e-9 * std::max(1.0, std::abs(q * q * q)));
                CHECK(w.value(f, tau + 2 * om) == doctest::Approx(q).epsilon(1e-10));
                CHECK(q >= floor - 1e-10);
                if (f == RealForm::Shifted) {
                    CHECK(q <= std::get<ThreeRealRoots>(roots).e2 + 1e-10);
                }
                if (f == RealForm::Unshifted) {
                    CHECK(w.value(f, -tau) == doctest::Approx(q).epsilon(1e-12));
                }
                const double scale = f == RealForm::Unshifted ? std::min(1.0, w.pole_distance(tau)) : 1.0;
                const double h = 1e-3 * scale;
                const double fd = (8 * (w.value(f, tau + h) - w.value(f, tau - h)) -
                                   (w.value(f, tau + 2 * h) - w.value(f, tau - 2 * h))) /
                                  (12 * h);
                const double dq = w.derivative(f, tau);
                CHECK(std::abs(fd - dq) <= 1e-6 * std::max(1.0, std::abs(dq)));
            }
        }
        if (const auto *t = std::get_if<ThreeRealRoots>(&roots)) {
            CHECK(std::abs(w.value(RealForm::Unshifted, om) - t->e1) < 1e-10);
            CHECK(std::abs(w.value(RealForm::Shifted, om) - t->e2) < 1e-10);
            CHECK(std::abs(w.value(RealForm::Shifted, 0) - t->e3) < 1e-10);
        } else {
            CHECK(std::abs(w.value(RealForm::Unshifted, om) - std::get<OneRealRoot>(roots).real_root) < 1e-10);
        }
    }
}

TEST_CASE("wp examples and errors")
{
    const Invariants lem{1.0 / 12, 0};
    const double om = half_periods(lem).omega1;
    CHECK(wp(lem, RealForm::Unshifted, om) == doctest::Approx(e_lemn).epsilon(1e-12));
    CHECK(wp(lem, RealForm::Shifted, 0) == doctest::Approx(-e_lemn).epsilon(1e-12));
    CHECK(wp(lem, RealForm::Unshifted, 1e-4) == doctest::Approx(1e8).epsilon(1e-3));
    CHECK(std::abs(wp_ode_residual(lem, RealForm::Shifted, 0.7)) < 1e-9);

    const Invariants neg{1.0 / 12, -3.5 / 216};
    const double om2 = half_periods(neg).omega1;
    CHECK(std::abs(wp_ode_residual(neg, RealForm::Unshifted, om2)) < 1e-9);
    CHECK(std::abs(wp_prime(neg, RealForm::Unshifted, om2)) < 1e-12);

    // A shifted copy of a solution is not a solution of the same equation.
    const double q = wp(lem, RealForm::Shifted, 0.7) + 0.01;
    const double dq = wp_prime(lem, RealForm::Shifted, 0.7);
    CHECK(std::abs(dq * dq - cubic(lem, q)) > 1e-4);

    CHECK(kind_of(error_kind([&] { wp(lem, RealForm::Unshifted, 2 * om + 1e-9); })) ==
          kind_of(ErrorKind::PoleProximity));
    CHECK(kind_of(error_kind([&] { wp_prime(lem, RealForm::Unshifted, 0); })) == kind_of(ErrorKind::PoleProximity));
    CHECK(kind_of(error_kind([&] { wp(neg, RealForm::Shifted, 0.3); })) == kind_of(ErrorKind::DomainError));
    CHECK(kind_of(error_kind([&] { wp({1.0 / 12, 1.0 / 216}, RealForm::Unshifted, 0.3); })) ==
          kind_of(ErrorKind::DegenerateRoots));
}

TEST_CASE("ratio form stays finite at the poles")
{
    const RealWeierstrass w({1.0 / 12, -3.5 / 216});
    const auto r = w.ratio(RealForm::Unshifted, 0);
    CHECK(r.den == 0);
    CHECK(r.num > 0);
    CHECK(std::isfinite(r.wronskian_sq_per_den));
    const auto near = w.ratio(RealForm::Unshifted, 1e-3);
    CHECK(near.wronskian * near.wronskian / near.den ==
          doctest::Approx(near.wronskian_sq_per_den).epsilon(1e-12));
}

TEST_CASE("degenerate closed forms")
{
    CHECK(wp_degenerate(-1.0 / 12, DegenerateForm::Tan, 0) == doctest::Approx(1.0 / 6));
    CHECK(wp_degenerate(1.0 / 12, DegenerateForm::Tanh, 40) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    CHECK(kind_of(error_kind([] { wp_degenerate(1.0 / 12, DegenerateForm::Square, 1.0); })) ==
          kind_of(ErrorKind::DomainError));
    CHECK(kind_of(error_kind([] { wp_degenerate(1.0 / 12, DegenerateForm::Tan, 1.0); })) ==
          kind_of(ErrorKind::DomainError));
    CHECK(kind_of(error_kind([] { wp_degenerate(-1.0 / 12, DegenerateForm::Tanh, 1.0); })) ==
          kind_of(ErrorKind::DomainError));
    CHECK(kind_of(error_kind([] { wp_degenerate(1.0 / 12, DegenerateForm::Csch, 0.0); })) ==
          kind_of(ErrorKind::PoleProximity));
    const double tan_pole = oracle::pi / (2 * std::sqrt(3.0 / 12));
    CHECK(kind_of(error_kind([&] { wp_degenerate(-1.0 / 12, DegenerateForm::Tan, tan_pole); })) ==
          kind_of(ErrorKind::PoleProximity));

    struct Case {
        double a;
        DegenerateForm form;
    };
    const Case cases[] = {{-1.0 / 12, DegenerateForm::Tan},
                          {-0.7, DegenerateForm::Tan},
                          {1.0 / 12, DegenerateForm::Tanh},
                          {0.4, DegenerateForm::Tanh},
                          {1.0 / 12, DegenerateForm::Csch},
                          {0.4, DegenerateForm::Csch},
                          {0.0, DegenerateForm::Square}};
    for (const auto &c : cases) {
        const Invariants inv = degenerate_invariants(c.a);
        for (double tau = 0.05; tau < 2.5; tau += 0.05) {
            double q, dq;
            try {
                q = wp_degenerate(c.a, c.form, tau);
                dq = wp_degenerate_prime(c.a, c.form, tau);
            } catch (const Error &) {
                continue;
            }
            CHECK(std::abs(dq * dq - cubic(inv, q)) <= 1e-10 * std::max(1.0, std::abs(q * q * q)));
        }
    }
}

TEST_CASE("general forms approach the degenerate ones")
{
    const double delta = 1e-6;
    const double a_tan = -1.0 / 12; // g3 = 1/216
    const double a_hyp = 1.0 / 12;  // g3 = -1/216
    const RealWeierstrass near_tan({1.0 / 12, 1.0 / 216 - delta});
    const RealWeierstrass near_hyp({1.0 / 12, -1.0 / 216 + delta});
    double err_tan = 0, err_tanh = 0, err_csch = 0;
    for (double tau = 0.1; tau <= 2.0 + 1e-12; tau += 0.01) {
        err_tan = std::max(err_tan, std::abs(near_tan.value(RealForm::Unshifted, tau + near_tan.omega1()) -
                                             wp_degenerate(a_tan, DegenerateForm::Tan, tau)));
        err_tanh = std::max(err_tanh, std::abs(near_hyp.value(RealForm::Shifted, tau) -
                                               wp_degenerate(a_hyp, DegenerateForm::Tanh, tau)));
        err_csch = std::max(err_csch, std::abs(near_hyp.value(RealForm::Unshifted, tau) -
                                               wp_degenerate(a_hyp, DegenerateForm::Csch, tau)));
    }
    CHECK(err_tan < 1e-3);
    CHECK(err_tanh < 1e-3);
    CHECK(err_csch < 1e-3);
}
