#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <mcrit/conformal_time.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace mcrit;

namespace
{

const double pi = std::numbers::pi;

Model sinh_model()
{
    return Model(exceptional_params(ModelKind::ExceptionalSinh, 1, 0));
}

} // namespace

TEST_CASE("cosmological time examples")
{
    const Model s = sinh_model();
    CHECK(std::abs(cosmological_time(s, 0, 1) - (std::sinh(1.0) - 1) / 2) <= 1e-10);
    CHECK(std::abs(cosmological_time(s, 0, 1) - 0.0876010) < 5e-7);
    for (const auto &[name, p] : support::roster()) {
        const Model m(p);
        const double tau0 = default_anchor(m);
        CHECK(cosmological_time(m, tau0, tau0) == 0);
    }
    const Model c(params_from_theta(ModelKind::ClassI, -pi / 6, -1, 0));
    const double t = cosmological_time(c, 0, 2 * c.omega());
    CHECK(t > 0);
    CHECK(t >= 2 * c.omega() * 1.0980762);
}

TEST_CASE("conformal time examples")
{
    const Model s = sinh_model();
    CHECK(std::abs(conformal_time(s, 0, (std::sinh(1.0) - 1) / 2) - 1) <= 1e-7);
    CHECK(std::abs(conformal_time(s, 0, 0.0876010) - 1) <= 2e-6);
    CHECK(scale_cosmological(s, 0, (std::sinh(1.0) - 1) / 2) == doctest::Approx(std::pow(std::sinh(0.5), 2)).epsilon(1e-8));
    CHECK(std::abs(scale_cosmological(s, 0, (std::sinh(1.0) - 1) / 2) - 0.2715403) < 1e-7);

    const Model c(params_from_theta(ModelKind::ClassI, -pi / 6, -1, 0));
    CHECK(conformal_time(c, 1.3, cosmological_time(c, 1.3, 1.3)) == 1.3);
    CHECK(std::abs(conformal_time(c, 0.2, cosmological_time(c, 0.2, 1.3)) - 1.3) <= 1e-8);
    CHECK(scale_cosmological(c, 0.9, 0) == c.scale(0.9).S);
}

TEST_CASE("default anchors")
{
    const Model s = sinh_model();
    CHECK(default_anchor(s) == 1);
    const Model up(params_from_theta(ModelKind::ClassI, -pi / 6, 1, 0));
    CHECK(default_anchor(up) == up.omega());
    const Model plus(params_from_theta(ModelKind::ClassIIPositive, 1, -1, 0));
    CHECK(default_anchor(plus) == doctest::Approx(plus.omega()));
    const Model plus_up(params_from_theta(ModelKind::ClassIIPositive, 1, 1, 0));
    CHECK(default_anchor(plus_up) == 0);
    const Model down(params_from_theta(ModelKind::ClassI, -pi / 6, -1, 0));
    CHECK(default_anchor(down) == 0);
}

TEST_CASE("errors")
{
    const Model plus(params_from_theta(ModelKind::ClassIIPositive, std::acosh(10) / 3, 1, 0));
    CHECK_ERROR(cosmological_time(plus, 0.1, plus.tau_star() + 0.5), ErrorKind::BlowupInRange);
    CHECK_ERROR(cosmological_time(plus, plus.tau_star() + 0.5, 0.1), ErrorKind::OutOfDomain);
    CHECK_ERROR(conformal_time(plus, 0.1, 1e9), ErrorKind::OutOfImage);
    CHECK_ERROR(conformal_time(plus, 0.1, -1e9), ErrorKind::OutOfImage);
    CHECK_ERROR(conformal_time(plus, 0.1, NAN), ErrorKind::OutOfImage);
    CHECK_ERROR(build_time_map(plus, 0, 0.5, 0.2, 4), ErrorKind::DomainError);

    const auto partial = cosmological_time_partial(plus, 0, plus.tau_star() + 1);
    CHECK(partial.truncated);
    CHECK(partial.tau_end == doctest::Approx(plus.tau_star() - default_cutoff).epsilon(1e-15));
    CHECK(std::isfinite(partial.t));
    CHECK(partial.t > cosmological_time(plus, 0, plus.tau_star() - 1e-3));
    const auto inside = cosmological_time_partial(plus, 0, 0.5);
    CHECK_FALSE(inside.truncated);
    CHECK(inside.t == cosmological_time(plus, 0, 0.5));
}

TEST_CASE("round trip and monotonicity across the roster")
{
    std::mt19937_64 rng(99);
    for (const auto &[name, p] : support::roster()) {
        CAPTURE(name);
        const Model m(p);
        const double tau0 = default_anchor(m);
        const auto d = m.domain();
        double lo = -6, hi = 6;
        if (d.kind == DomainKind::Interval) {
            lo = d.lo + 1e-3;
            hi = d.hi - 1e-3;
        } else if (d.period) {
            lo = tau0 - *d.period;
            hi = tau0 + *d.period;
        }
        std::uniform_real_distribution<double> u(lo, hi);
        int done = 0;
        while (done < 100) {
            const double tau = u(rng);
            if (support::zero_distance(m, tau) < 1e-3) {
                continue;
            }
            const double t = cosmological_time(m, tau0, tau);
            CHECK(std::abs(conformal_time(m, tau0, t) - tau) <= 1e-8);
            ++done;
        }

        const auto map = build_time_map(m, tau0, lo, hi, 400);
        REQUIRE(map.samples.size() == 400);
        for (std::size_t i = 1; i < map.samples.size(); ++i) {
            CHECK(map.samples[i].t > map.samples[i - 1].t);
            CHECK(map.samples[i].tau > map.samples[i - 1].tau);
        }
        CHECK(std::abs(map.samples[200].t - cosmological_time(m, tau0, map.samples[200].tau)) <= 1e-10);
    }
}

TEST_CASE("derivative law ds/dt = S'/S")
{
    for (const auto &[name, p] : support::roster()) {
        CAPTURE(name);
        const Model m(p);
        const double tau0 = default_anchor(m);
        for (double tau : support::window(m, 25, 0.05)) {
            // A step of 1e-5 in t is a step of 1e-5 / S in tau.
            if (m.scale(tau).S < 0.05) {
                continue;
            }
            const double t = cosmological_time(m, tau0, tau);
            const double h = 1e-5;
            const double fd = (scale_cosmological(m, tau0, t + h) - scale_cosmological(m, tau0, t - h)) / (2 * h);
            const auto v = m.scale(tau);
            const double exact = v.S_prime / v.S;
            CHECK(fd == doctest::Approx(exact).epsilon(1e-4).scale(1e-2));
        }
    }
    const Model c(params_from_theta(ModelKind::ClassI, -pi / 6, -1, 0));
    const double t = cosmological_time(c, 0, c.omega());
    const double fd = (scale_cosmological(c, 0, t + 1e-5) - scale_cosmological(c, 0, t - 1e-5)) / 2e-5;
    CHECK(std::abs(fd) <= 1e-6);
}

TEST_CASE("quadrature against a fine Simpson grid")
{
    for (const auto &[name, p] : support::roster()) {
        CAPTURE(name);
        const Model m(p);
        const double tau0 = default_anchor(m);
        const auto d = m.domain();
        const double a = d.kind == DomainKind::Interval ? d.lo + 0.2 : tau0 - 1.7;
        const double b = d.kind == DomainKind::Interval ? d.hi - 0.2 : tau0 + 2.3;
        for (double tau : {a, b, (a + tau0) / 2}) {
            const double ref = oracle::simpson([&](double x) { return m.scale(x).S; }, std::min(tau0, tau),
                                               std::max(tau0, tau), 20000) *
                               (tau < tau0 ? -1 : 1);
            CHECK(std::abs(cosmological_time(m, tau0, tau) - ref) <= 1e-9);
        }
    }
}
