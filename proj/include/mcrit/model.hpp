#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include <mcrit/elliptic.hpp>

namespace mcrit
{

// Internal parameters of an m-critical universe: a absorbs the Lagrange
// multiplier of the volume constraint, H is the first integral of the
// variational equation. Units: G = c = 1.
struct CriticalParams {
    double a = 0;
    double H = 0;
    double Lambda = 0;
};

enum class ModelKind {
    ExceptionalTan,  // a H^2 = 4/9, H > 0
    ExceptionalCosh, // a = 0, H < 0
    ExceptionalSinh, // a = 0, H > 0
    HZeroSin,        // H = 0, a > 0
    HZeroSinh,       // H = 0, a < 0
    HZeroLinear,     // H = 0, a = 0
    ClassI,          // 0 < a H^2 < 4/9
    ClassIINegative, // a H^2 > 4/9
    ClassIIPositive, // a H^2 < 0
};

struct ModelClass {
    ModelKind kind = ModelKind::HZeroLinear;
    // Angular parameter: (-pi/3, 0) for Class I, positive for Class II,
    // NaN for the other kinds.
    double theta = std::numeric_limits<double>::quiet_NaN();
    // Sign of H for ClassI and ClassIIPositive, 0 otherwise.
    int h_sign = 0;
};

/// Short label used in tables and on the command line: I, II-, II+, tan, ...
std::string_view label(ModelKind kind) noexcept;

bool is_hzero(ModelKind kind) noexcept;
bool is_exceptional(ModelKind kind) noexcept;

enum class MetricState { Lorentz, Degenerate, Pole };

std::string_view label(MetricState state) noexcept;

struct ConformalSample {
    double tau;
    double S;
    double S_prime;
    double m_tilde; // +inf where S vanishes
    double p_tilde; // -inf where S vanishes
    MetricState metric_state;
};

enum class DomainKind { FullLine, Interval };

struct DomainInfo {
    DomainKind kind = DomainKind::FullLine;
    // Open interval for Interval domains, +-infinity for FullLine.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    std::optional<double> period;
    std::vector<double> zeros_of_S; // one period's worth, or all of them
    std::vector<double> blowups;

    bool contains(double tau) const noexcept
    {
        return tau > lo && tau < hi;
    }
};

struct ScaleValue {
    double S;
    double S_prime;
};

struct ScaleJet {
    double S;
    double S_prime;
    double S_second;
};

struct DensityPressure {
    double m_tilde;
    double p_tilde;
};

struct Residuals {
    double ve3; // S'^2 + (a/3) S^4 - S^2 - H S
    double ve5; // S'' - (-(2a/3) S^3 + S + H/2)
    double eqs; // state equation in (m, p)
    double ve2; // s (sdot^2 + (a/3) s^2 - 1) - H with sdot = S'/S
};

// Thresholds shared across modules.
inline constexpr double boundary_tolerance = 1e-12; // on a H^2
inline constexpr double degenerate_scale = 1e-12;   // S below this is a metric degeneracy
inline constexpr double blowup_radius = 1e-8;

/// Total map from parameters to the classification verdict.
ModelClass classify(const CriticalParams &params);

/// g2 = 1/12, g3 = (a H^2 - 2/9) / 48. Throws HZeroModel when H = 0.
Invariants invariants_of(const CriticalParams &params);

/// Inverse of classify for the three general families. The angular
/// parameter must lie in (-pi/3, 0) for ClassI and be positive otherwise.
CriticalParams params_from_theta(ModelKind kind, double theta, double H, double Lambda);

/// Parameters of an exceptional model (Tan, Cosh, Sinh) with the given H.
CriticalParams exceptional_params(ModelKind kind, double H, double Lambda);

/// Elementary scale functions of the H = 0 models in cosmological time.
double scale_cosmological_closed_forms(double a, double t, double c = 0);

// A classified m-critical universe. Construction classifies the parameters,
// selects the real form and locates the domain once; every evaluation after
// that is a pure function of tau.
class Model
{
public:
    explicit Model(const CriticalParams &params);

    const CriticalParams &params() const noexcept
    {
        return m_params;
    }
    const ModelClass &model_class() const noexcept
    {
        return m_class;
    }
    ModelKind kind() const noexcept
    {
        return m_class.kind;
    }
    const DomainInfo &domain() const;

    /// Real half-period of the underlying wp (general classes only).
    double omega() const;
    /// Root of wp = 1/12 in (0, omega) (ClassIIPositive only).
    double tau_star() const;
    /// Present for the general classes.
    const std::optional<RealWeierstrass> &weierstrass() const noexcept
    {
        return m_wp;
    }
    RealForm real_form() const noexcept
    {
        return m_form;
    }

    ScaleValue scale(double tau) const;
    ScaleJet jet(double tau) const;
    DensityPressure density_pressure(double tau) const;

private:
    void require_conformal() const;
    void require_in_domain(double tau) const;
    // Evaluation without domain checks; valid on the whole real line for
    // the general classes.
    ScaleJet raw_jet(double tau) const;
    double raw_q(double tau) const;

    CriticalParams m_params;
    ModelClass m_class;
    std::optional<RealWeierstrass> m_wp;
    RealForm m_form = RealForm::Unshifted;
    double m_tau_star = 0;
    DomainInfo m_domain;
};

DomainInfo domain_of(const Model &model);

ScaleValue conformal_scale(const Model &model, double tau);

/// Density and pressure from the closed forms in Q (general classes) or
/// from (S, S', S'') (exceptional kinds). Throws SingularDensity at zeros of S.
DensityPressure density_pressure(const Model &model, double tau);

/// Density and pressure from a scale jet, without using the variational
/// equations.
DensityPressure fluid_from_jet(const CriticalParams &params, const ScaleJet &jet);

Residuals residuals(const Model &model, double tau);

/// Residuals of an arbitrary jet against the model's parameters. This is
/// what detects a perturbed scale function.
Residuals residuals_of(const CriticalParams &params, const ScaleJet &jet);

/// Full sample including the metric state; never throws for tau inside
/// the domain closure.
ConformalSample sample(const Model &model, double tau);

} // namespace mcrit
