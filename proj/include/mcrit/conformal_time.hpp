#pragma once

#include <vector>

#include <mcrit/model.hpp>

namespace mcrit
{

inline constexpr double default_cutoff = 1e-6;

struct TimeSample {
    double tau;
    double t;
};

struct PartialTime {
    double t;
    double tau_end;  // tau actually reached
    bool truncated;  // tau_end was clipped to the cutoff distance from a blow-up
};

// Tabulated map between conformal and cosmological time, t(tau0) = 0.
struct TimeMap {
    double tau0;
    std::vector<TimeSample> samples; // sorted by tau, t strictly increasing
    DomainInfo domain;
};

/// Anchor used when none is given: the midpoint of an interval domain,
/// omega (or 1 for the sinh model) when S(0) = 0, and 0 otherwise.
double default_anchor(const Model &model);

/// t = int_{tau0}^{tau} S dtau. Throws OutOfDomain if tau0 is not in the
/// domain and BlowupInRange if a blow-up separates tau0 from tau.
double cosmological_time(const Model &model, double tau0, double tau);

/// As cosmological_time, but stops at distance cutoff from a blow-up and
/// says so instead of failing.
PartialTime cosmological_time_partial(const Model &model, double tau0, double tau, double cutoff = default_cutoff);

/// Inverse of cosmological_time for fixed tau0. Throws OutOfImage when t
/// is not reached before the domain ends (or before the cutoff distance
/// from a blow-up).
double conformal_time(const Model &model, double tau0, double t, double cutoff = default_cutoff);

/// s(t) = S(conformal_time(t)).
double scale_cosmological(const Model &model, double tau0, double t);

/// Cumulative t on a uniform tau grid of n >= 2 points.
TimeMap build_time_map(const Model &model, double tau0, double tau_lo, double tau_hi, int n);

} // namespace mcrit
