#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <mcrit/model.hpp>

namespace mcrit
{

struct WecAlways {
};
struct WecIffThetaAtMost {
    double theta_max;
};
using WecRule = std::variant<WecAlways, WecIffThetaAtMost>;

struct SecNever {
};
struct SecInterval {
    double lo, hi;
};
struct SecExactPoint {
    double value;
};
using SecRule = std::variant<SecNever, SecInterval, SecExactPoint>;

struct NamedValue {
    std::string name;
    double value;
};

struct EnergyBounds {
    double density_max_lambda;             // m >= 0 everywhere iff Lambda <= this
    std::optional<double> dec_max_lambda;  // m - p >= 0 everywhere iff Lambda <= this
    WecRule wec_rule;
    SecRule sec_rule;
    std::vector<NamedValue> closed_forms; // f1, f2, f3 and friends, by name
};

struct Margins {
    double min_m;
    double min_m_plus_p;
    double min_m_minus_p;
    double min_m3_plus_p;
};

struct ConditionReport {
    bool density_nonneg;
    bool wec;
    bool dec;
    bool sec;
    Margins margins;
};

struct Extrema {
    Margins minima;
    // Location of each minimum, in the order of Margins.
    std::array<double, 4> argmin;
};

struct ActionValues {
    double M;            // 2 pi^2 int m S^4 dtau
    double M_lagrangian; // (3 pi / 4) int (S'^2 + S^2 - Lambda S^4 / 3) dtau
    double V;            // 2 pi^2 int S^4 dtau
};

inline constexpr double sec_point_tolerance = 1e-10;

/// Root in (-pi/3, 0) of the Class I strong-energy boundary equation.
double theta_I();

/// Left-hand side of the equation defining theta_I.
double theta_I_equation(double x) noexcept;

EnergyBounds lambda_bounds(const Model &model);

/// Conditions on the whole domain. Booleans come from lambda_bounds, the
/// margins from numeric_extrema.
ConditionReport check_conditions(const Model &model);

/// Brute-force minima of m, m + p, m - p and m/3 + p: a uniform grid over
/// one period (or the collared interval) refined by golden-section search.
Extrema numeric_extrema(const Model &model);

ActionValues action_integral(const Model &model, double tau_lo, double tau_hi);

bool wec_holds(const WecRule &rule, const ModelClass &cls) noexcept;
bool sec_holds(const SecRule &rule, double Lambda) noexcept;

} // namespace mcrit
