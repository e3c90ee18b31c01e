#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <mcrit/error.hpp>
#include <mcrit/model.hpp>

namespace support
{

inline int kind_of(mcrit::ErrorKind k)
{
    return static_cast<int>(k);
}

template <class F>
mcrit::ErrorKind error_kind(F &&f)
{
    try {
        f();
    } catch (const mcrit::Error &e) {
        return e.kind();
    }
    FAIL("expected an mcrit::Error");
    return mcrit::ErrorKind::NumericalFailure;
}

#define CHECK_ERROR(expr, kind) \
    CHECK(support::kind_of(support::error_kind([&] { (void)(expr); })) == support::kind_of(kind))

struct Named {
    std::string name;
    mcrit::CriticalParams params;
};

inline double theta_from_cosh3(double c)
{
    return std::acosh(c) / 3;
}

// One model per general family and per exceptional kind.
inline std::vector<Named> roster(double Lambda = 0)
{
    using mcrit::ModelKind;
    const double pi = std::numbers::pi;
    return {
        {"I, H<0", mcrit::params_from_theta(ModelKind::ClassI, -pi / 6, -1, Lambda)},
        {"I, H>0", mcrit::params_from_theta(ModelKind::ClassI, -pi / 6, 1, Lambda)},
        {"II-", mcrit::params_from_theta(ModelKind::ClassIINegative, theta_from_cosh3(3.5), 1, Lambda)},
        {"II+, H>0", mcrit::params_from_theta(ModelKind::ClassIIPositive, theta_from_cosh3(10), 1, Lambda)},
        {"II+, H<0", mcrit::params_from_theta(ModelKind::ClassIIPositive, theta_from_cosh3(10), -1, Lambda)},
        {"tan", mcrit::exceptional_params(ModelKind::ExceptionalTan, 1, Lambda)},
        {"cosh", mcrit::exceptional_params(ModelKind::ExceptionalCosh, -2, Lambda)},
        {"sinh", mcrit::exceptional_params(ModelKind::ExceptionalSinh, 1, Lambda)},
    };
}

// n points covering a fundamental window of the model: one period, the
// interval minus a collar, or [-5, 5] for the aperiodic kinds.
inline std::vector<double> window(const mcrit::Model &model, int n, double collar = 1e-3)
{
    const mcrit::DomainInfo &d = model.domain();
    double lo = -5, hi = 5;
    if (d.kind == mcrit::DomainKind::Interval) {
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

// Distance to the nearest zero of S, counting periodic replicas.
inline double zero_distance(const mcrit::Model &model, double tau)
{
    const mcrit::DomainInfo &d = model.domain();
    double best = INFINITY;
    for (double z : d.zeros_of_S) {
        if (d.period) {
            const double p = *d.period;
            const double r = std::remainder(tau - z, p);
            best = std::min(best, std::abs(r));
        } else {
            best = std::min(best, std::abs(tau - z));
        }
    }
    return best;
}

} // namespace support
