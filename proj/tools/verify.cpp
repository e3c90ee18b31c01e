#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include <mcrit/conformal_time.hpp>
#include <mcrit/energy.hpp>
#include <mcrit/error.hpp>

namespace mcrit::cli
{

namespace
{

constexpr double pi = std::numbers::pi;

struct Entry {
    const char *name;
    CriticalParams params;
};

std::vector<Entry> roster(double Lambda = 0)
{
    const double c35 = std::acosh(3.5) / 3;
    const double c10 = std::acosh(10.0) / 3;
    return {
        {"I, H<0", params_from_theta(ModelKind::ClassI, -pi / 6, -1, Lambda)},
        {"I, H>0", params_from_theta(ModelKind::ClassI, -pi / 6, 1, Lambda)},
        {"II-", params_from_theta(ModelKind::ClassIINegative, c35, 1, Lambda)},
        {"II+, H>0", params_from_theta(ModelKind::ClassIIPositive, c10, 1, Lambda)},
        {"II+, H<0", params_from_theta(ModelKind::ClassIIPositive, c10, -1, Lambda)},
        {"tan", exceptional_params(ModelKind::ExceptionalTan, 1, Lambda)},
        {"cosh", exceptional_params(ModelKind::ExceptionalCosh, -2, Lambda)},
        {"sinh", exceptional_params(ModelKind::ExceptionalSinh, 1, Lambda)},
    };
}

std::vector<double> window(const Model &model, int n, double collar = 1e-3)
{
    const DomainInfo &d = model.domain();
    double lo = -5, hi = 5;
    if (d.kind == DomainKind::Interval) {
        lo = d.lo + collar;
        hi = d.hi - collar;
    } else if (d.period) {
        lo = 0;
        hi = *d.period;
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(lo + (hi - lo) * (i + 0.5) / n);
    }
    return out;
}

double zero_distance(const Model &model, double tau)
{
    const DomainInfo &d = model.domain();
    double best = INFINITY;
    for (double z : d.zeros_of_S) {
        best = std::min(best, std::abs(d.period ? std::remainder(tau - z, *d.period) : tau - z));
    }
    return best;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

class Tally
{
public:
    void check(bool ok, const std::string &what)
    {
        ++m_checks;
        if (!ok && m_failures++ == 0) {
            m_first = what;
        }
    }

    void observe(double residual_ratio)
    {
        m_worst = std::max(m_worst, residual_ratio);
    }

    SuiteResult result(const std::string &name, const std::string &note = {}) const
    {
        std::string detail = std::to_string(m_checks) + " checks";
        if (m_worst > 0) {
            detail += ", worst residual/tolerance " + fmt(m_worst);
        }
        if (!note.empty()) {
            detail += ", " + note;
        }
        if (m_failures) {
            detail += ", " + std::to_string(m_failures) + " failed (first: " + m_first + ")";
        }
        return {name, m_failures == 0, detail};
    }

private:
    int m_checks = 0;
    int m_failures = 0;
    double m_worst = 0;
    std::string m_first;
};

SuiteResult wp_suite(const VerifyOptions &)
{
    Tally t;
    const Invariants pairs[] = {{1.0 / 12, 0},          {1.0 / 12, -1.0 / 432}, {1.0 / 12, 1.0 / 864},
                                {1.0 / 12, 0.01},       {1.0 / 12, -0.05},      {2.0, 0.3},
                                {1.0 / 12, 1.0 / 216 - 1e-7}};
    for (const auto &inv : pairs) {
        const RealWeierstrass w(inv);
        const double om = w.omega1();
        std::vector<RealForm> forms{RealForm::Unshifted};
        if (w.discriminant() > 0) {
            forms.push_back(RealForm::Shifted);
        }
        for (RealForm form : forms) {
            for (int i = 0; i < 150; ++i) {
                const double tau = -3 * om + 6 * om * (i + 0.5) / 150;
                if (form == RealForm::Unshifted && w.pole_distance(tau) < 1e-2) {
                    continue;
                }
                const double q = w.value(form, tau);
                const double tol = 1e-9 * std::max(1.0, std::pow(std::abs(q), 3));
                const double r = std::abs(wp_ode_residual(inv, form, tau));
                t.observe(r / tol);
                t.check(r <= tol, "ODE residual at g3 = " + fmt(inv.g3));
            }
        }
        if (const auto *r = std::get_if<ThreeRealRoots>(&w.roots())) {
            t.check(std::abs(w.value(RealForm::Unshifted, om) - r->e1) <= 1e-10, "wp(omega) = e1");
            t.check(std::abs(w.value(RealForm::Shifted, om) - r->e2) <= 1e-10, "shifted wp(omega) = e2");
            t.check(std::abs(w.value(RealForm::Shifted, 0) - r->e3) <= 1e-10, "shifted wp(0) = e3");
        } else {
            const auto &one = std::get<OneRealRoot>(w.roots());
            t.check(std::abs(w.value(RealForm::Unshifted, om) - one.real_root) <= 1e-10, "wp(omega) = real root");
        }
    }
    const double lemniscate = std::pow(std::tgamma(0.25), 2) / (4 * std::sqrt(pi)) * std::pow(12.0, 0.25);
    const double om = RealWeierstrass({1.0 / 12, 0}).omega1();
    t.check(std::abs(om - 3.45088) <= 1e-4, "lemniscatic half-period");
    t.check(std::abs(om - lemniscate) <= 1e-12, "lemniscatic half-period, Gamma form");
    return t.result("wp", "omega1(1/12, 0) = " + fmt(om));
}

enum class Which { Ve3, Ve5, Eqs, Ve2 };

SuiteResult residual_suite(Which which, const VerifyOptions &opt)
{
    static const char *names[] = {"ve3", "ve5", "eqs", "ve2"};
    Tally t;
    for (double Lambda : {0.0, 0.3}) {
        for (const auto &e : roster(Lambda)) {
            const Model m(e.params);
            for (double tau : window(m, 200)) {
                if (zero_distance(m, tau) < 1e-3) {
                    continue;
                }
                ScaleJet j = m.jet(tau);
                j.S *= opt.fault_scale;
                j.S_prime *= opt.fault_scale;
                j.S_second *= opt.fault_scale;
                const Residuals r = residuals_of(e.params, j);
                double tol = 1e-8 * (1 + std::pow(j.S, 4));
                double value = 0;
                switch (which) {
                    case Which::Ve3:
                        value = r.ve3;
                        break;
                    case Which::Ve5:
                        value = r.ve5;
                        break;
                    case Which::Eqs: {
                        value = r.eqs;
                        const auto f = fluid_from_jet(e.params, j);
                        tol += 1e-8 * (8 * pi / 3 * std::abs(f.m_tilde) + 8 * pi * std::abs(f.p_tilde));
                        break;
                    }
                    case Which::Ve2:
                        value = r.ve2;
                        break;
                }
                t.observe(std::abs(value) / tol);
                t.check(std::abs(value) <= tol, std::string(e.name) + " at tau = " + fmt(tau));
            }
        }
    }
    return t.result(names[static_cast<int>(which)]);
}

SuiteResult exceptional_suite(const VerifyOptions &opt)
{
    Tally t;
    for (const auto &e : roster()) {
        const Model m(e.params);
        if (!is_exceptional(m.kind())) {
            continue;
        }
        for (double tau : window(m, 200)) {
            ScaleJet j = m.jet(tau);
            j.S *= opt.fault_scale;
            j.S_prime *= opt.fault_scale;
            j.S_second *= opt.fault_scale;
            const double tol = 1e-12 * (1 + std::pow(j.S, 4));
            const double r = std::abs(residuals_of(e.params, j).ve3);
            t.observe(r / tol);
            t.check(r <= tol, std::string(e.name) + " first-order equation");
        }
    }
    return t.result("exceptional");
}

SuiteResult periodicity_suite(const VerifyOptions &)
{
    Tally t;
    for (const auto &e : roster()) {
        const Model m(e.params);
        const auto &d = m.domain();
        if (!d.period) {
            continue;
        }
        for (double tau : window(m, 200)) {
            t.check(std::abs(m.scale(tau + *d.period).S - m.scale(tau).S) <= 1e-9, e.name);
        }
    }
    return t.result("periodicity");
}

SuiteResult degeneracy_suite(const VerifyOptions &)
{
    Tally t;
    const auto all = roster();
    for (int k : {1, 2}) {
        const Model m(all[k].params);
        const double w = m.omega();
        for (int h = -2; h <= 2; ++h) {
            t.check(m.scale(2 * h * w).S <= 1e-12, std::string(all[k].name) + " zero at 2h omega");
            t.check(sample(m, 2 * h * w).metric_state == MetricState::Degenerate, "degenerate metric state");
        }
        for (int i = 1; i < 2000; ++i) {
            const double tau = -2 * w + 4 * w * i / 2000.0;
            if (std::abs(std::remainder(tau, 2 * w)) > 1e-9) {
                t.check(m.scale(tau).S > 0, std::string(all[k].name) + " positive between zeros");
            }
        }
    }
    const Model m(all[0].params);
    double lowest = INFINITY;
    for (int i = 0; i <= 4000; ++i) {
        lowest = std::min(lowest, m.scale(2 * m.omega() * i / 4000.0).S);
    }
    t.check(lowest >= 1.0980762 - 1e-6, "minimum of S for Class I, H < 0");
    return t.result("degeneracy", "min S (I, H<0) = " + fmt(lowest));
}

void check_consistent(Tally &t, const ConditionReport &r, const std::string &what)
{
    const double tol = 1e-8;
    const Margins &g = r.margins;
    t.check(r.density_nonneg == (g.min_m >= -tol), what + ": density boolean vs margin");
    t.check(r.wec == (g.min_m_plus_p >= -tol), what + ": WEC boolean vs margin");
    t.check(r.dec == (g.min_m_plus_p >= -tol && g.min_m_minus_p >= -tol), what + ": DEC boolean vs margin");
    t.check(r.sec == (g.min_m3_plus_p >= -tol && g.min_m_minus_p >= -tol), what + ": SEC boolean vs margin");
}

SuiteResult thresholds_suite(const VerifyOptions &)
{
    Tally t;
    const double d = 1e-6;
    for (const auto &e : roster()) {
        const Model base(e.params);
        const EnergyBounds b = lambda_bounds(base);
        const auto at = [&](double L) { return check_conditions(Model({e.params.a, e.params.H, L})); };
        const std::string n = e.name;

        t.check(at(b.density_max_lambda - d).density_nonneg, n + ": density below threshold");
        t.check(!at(b.density_max_lambda + d).density_nonneg, n + ": density above threshold");
        if (b.dec_max_lambda && wec_holds(b.wec_rule, base.model_class())) {
            t.check(at(*b.dec_max_lambda - d).dec, n + ": DEC below threshold");
            t.check(!at(*b.dec_max_lambda + d).dec, n + ": DEC above threshold");
        }
        if (const auto *s = std::get_if<SecInterval>(&b.sec_rule)) {
            t.check(!at(s->lo - d).sec && at(s->lo + d).sec, n + ": SEC lower end");
            t.check(at(s->hi - d).sec && !at(s->hi + d).sec, n + ": SEC upper end");
        } else if (const auto *s = std::get_if<SecExactPoint>(&b.sec_rule)) {
            t.check(at(s->value).sec && !at(s->value - d).sec && !at(s->value + d).sec, n + ": SEC point");
        }
        for (double L : {-1.0, -0.2, 0.05, 0.7}) {
            check_consistent(t, at(L), n + " at Lambda = " + fmt(L));
        }
    }

    const double c = std::acosh(1.5);
    for (int i = 0; i < 50; ++i) {
        const double theta = 0.05 + (2 * c - 0.05) * i / 49.0;
        const Model m(params_from_theta(ModelKind::ClassIIPositive, theta, -1, -1));
        const auto r = check_conditions(m);
        t.check(r.wec == (theta <= c), "WEC for Class II+, H < 0 at theta = " + fmt(theta));
        t.check(r.wec == (r.margins.min_m_plus_p >= -1e-8), "WEC margin for Class II+, H < 0");
    }
    return t.result("thresholds");
}

SuiteResult extrema_suite(const VerifyOptions &)
{
    Tally t;
    const auto all = roster();
    {
        const Model m(all[0].params);
        const EnergyBounds b = lambda_bounds(m);
        t.check(std::abs(b.density_max_lambda - 1.0 / 3) <= 1e-12, "f1 = 1/3");
        t.check(std::abs(*b.dec_max_lambda - 1.0 / 6) <= 1e-12, "f2 = 1/6");
        const Extrema e = numeric_extrema(m);
        t.check(std::abs(e.minima.min_m - 1 / (24 * pi)) <= 1e-8, "min m = 1/(24 pi)");
        t.check(std::abs(e.argmin[0] - m.omega()) <= 1e-5, "argmin m = omega");
        t.check(std::abs(m.density_pressure(m.omega()).p_tilde) <= 1e-9, "p(omega) = 0");
    }
    {
        const Model m(params_from_theta(ModelKind::ClassIINegative, std::acosh(1.5), 1, 0));
        const EnergyBounds b = lambda_bounds(m);
        t.check(std::abs(b.density_max_lambda - 4.0 / 3) <= 1e-12, "h1 = 4/3");
        t.check(std::abs(*b.dec_max_lambda) <= 1e-12, "h2 = 0");
        const auto *s = std::get_if<SecInterval>(&b.sec_rule);
        t.check(s && std::abs(s->lo + 8.0 / 3) <= 1e-12, "h3 = -8/3");
    }
    for (double H : {1.0, -1.0, 2.0}) {
        const Model m(params_from_theta(ModelKind::ClassIIPositive, std::acosh(10.0) / 3, H, 0));
        const EnergyBounds b = lambda_bounds(m);
        if (H > 0) {
            t.check(std::abs(b.density_max_lambda - 18 / (9 * H * H)) <= 1e-12, "II+ density threshold");
            const Extrema e = numeric_extrema(m);
            t.check(std::abs(e.minima.min_m_plus_p) <= 1e-8, "min(m + p) = 0 for II+, H > 0");
        } else {
            t.check(std::abs(*b.dec_max_lambda - 18 / (9 * H * H)) <= 1e-12, "II+ threshold at tau*");
        }
    }
    for (double shift : {-1e-3, 1e-3}) {
        const double theta = std::acosh(2.5) + shift;
        const Model m(params_from_theta(ModelKind::ClassIIPositive, theta, -1, 0));
        const Extrema e = numeric_extrema(m);
        const bool at_omega = std::abs(e.argmin[0] - m.omega()) < 1e-3;
        t.check(at_omega == (shift > 0), "argmin of m switches at acosh(5/2)");
    }
    return t.result("extrema");
}

SuiteResult theta_I_suite(const VerifyOptions &)
{
    Tally t;
    const double v = theta_I();
    t.check(std::abs(v - -0.7706314502) <= 1e-8, "theta_I value");
    t.check(std::abs(theta_I_equation(v)) <= 1e-12, "theta_I equation residual");
    char buf[96];
    std::snprintf(buf, sizeof buf, "theta_I = %.10f matches -0.7706314502", v);
    return t.result("theta_I", buf);
}

SuiteResult time_suite(const VerifyOptions &)
{
    Tally t;
    const Model s(exceptional_params(ModelKind::ExceptionalSinh, 1, 0));
    t.check(std::abs(cosmological_time(s, 0, 1) - (std::sinh(1.0) - 1) / 2) <= 1e-9, "sinh t(1)");
    for (const auto &e : roster()) {
        const Model m(e.params);
        const double tau0 = default_anchor(m);
        for (double tau : window(m, 25, 1e-2)) {
            if (zero_distance(m, tau) < 1e-3) {
                continue;
            }
            const double time = cosmological_time(m, tau0, tau);
            t.check(std::abs(conformal_time(m, tau0, time) - tau) <= 1e-8, std::string(e.name) + " round trip");
        }
    }
    return t.result("time");
}

SuiteResult action_suite(const VerifyOptions &)
{
    Tally t;
    const auto all = roster(0.3);
    for (int k : {0, 2, 5}) {
        const Model m(all[k].params);
        const auto &d = m.domain();
        double lo = -1.5, hi = 2.5;
        if (d.kind == DomainKind::Interval) {
            lo = d.zeros_of_S.empty() ? d.lo + 0.05 : 0.05;
            hi = d.hi - 0.05;
        } else if (!d.zeros_of_S.empty()) {
            lo = d.zeros_of_S.front() + 0.1;
            hi = lo + (d.period ? *d.period - 0.2 : 3.0);
        }
        const double mid = (lo + hi) / 2;
        for (const auto &[a, b] : {std::pair{lo, hi}, std::pair{lo, mid}, std::pair{mid, hi}}) {
            const ActionValues v = action_integral(m, a, b);
            t.check(std::abs(v.M - v.M_lagrangian) <= 1e-8 * std::abs(v.M_lagrangian),
                    std::string(all[k].name) + " density vs Lagrangian form");
        }
    }
    return t.result("action");
}

struct Suite {
    const char *name;
    std::function<SuiteResult(const VerifyOptions &)> run;
};

const std::vector<Suite> &suites()
{
    static const std::vector<Suite> all = {
        {"wp", wp_suite},
        {"ve3", [](const VerifyOptions &o) { return residual_suite(Which::Ve3, o); }},
        {"ve5", [](const VerifyOptions &o) { return residual_suite(Which::Ve5, o); }},
        {"eqs", [](const VerifyOptions &o) { return residual_suite(Which::Eqs, o); }},
        {"ve2", [](const VerifyOptions &o) { return residual_suite(Which::Ve2, o); }},
        {"exceptional", exceptional_suite},
        {"periodicity", periodicity_suite},
        {"degeneracy", degeneracy_suite},
        {"thresholds", thresholds_suite},
        {"extrema", extrema_suite},
        {"theta_I", theta_I_suite},
        {"time", time_suite},
        {"action", action_suite},
    };
    return all;
}

} // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto &s : suites()) {
        out.emplace_back(s.name);
    }
    return out;
}

std::vector<SuiteResult> run_suites(const std::string &name, const VerifyOptions &options)
{
    std::vector<SuiteResult> out;
    for (const auto &s : suites()) {
        if (!name.empty() && name != s.name) {
            continue;
        }
        try {
            out.push_back(s.run(options));
        } catch (const Error &e) {
            out.push_back({s.name, false, e.what()});
        }
    }
    if (out.empty()) {
        fail(ErrorKind::DomainError, "unknown suite '" + name + "'");
    }
    return out;
}

} // namespace mcrit::cli
