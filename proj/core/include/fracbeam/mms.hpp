#pragma once

// Multiple-scales analysis of the single-mode fractional beam equation:
// slow-flow amplitude/phase equations, the decay rate and its sensitivity to
// the fractional order, and the steady-state cubic of primary resonance.

#include <optional>
#include <span>
#include <vector>

#include "fracbeam/beammodel.hpp"
#include "fracbeam/cubic.hpp"
#include "fracbeam/fracops.hpp"

namespace fracbeam {

/// Coefficients normalised by the generalized mass.
struct ScaledCoeffs {
    double omega0 = 0.0;
    double c_l = 0.0;
    double c_nl = 0.0;
    double k_nl = 0.0;
    double m_nl = 0.0;  ///< zero without tip inertia
    double E_r = 1.0;
    FracOrder alpha{0.5};

    /// E_r * omega0^(alpha-1), the factor every fractional term carries.
    [[nodiscard]] double fractional_gain() const noexcept;
    [[nodiscard]] ScaledCoeffs with_alpha(FracOrder a) const noexcept;
    [[nodiscard]] ScaledCoeffs with_E_r(double e) const noexcept;
};

[[nodiscard]] ScaledCoeffs scale_coeffs(const ModalModel& model, double E_r, FracOrder alpha);

struct SlowFlowState {
    double a = 0.0;
    double phi = 0.0;
    double T1 = 0.0;
};

struct SlowFlowRates {
    double da = 0.0;
    double dphi = 0.0;
};

/// Free-vibration slow flow (da/dT1, dphi/dT1).
[[nodiscard]] SlowFlowRates slow_flow_free(const SlowFlowState& state, const ScaledCoeffs& k);

/// Classical RK4 integration of the free slow flow on [0, T1_end] with step
/// dT1. Every `stride`-th state is kept, plus the last one.
[[nodiscard]] std::vector<SlowFlowState> integrate_slow_flow_free(const ScaledCoeffs& k,
                                                                  double a0, double phi0,
                                                                  double T1_end,
                                                                  double dT1 = 1e-3,
                                                                  std::size_t stride = 1);

/// tau_d = c_l E_r omega0^(alpha-1) sin(alpha pi/2).
[[nodiscard]] double decay_rate(const ScaledCoeffs& k);
/// Same at an explicit order in [0, 1] (the endpoints are allowed here).
[[nodiscard]] double decay_rate(const ScaledCoeffs& k, double alpha);

/// d tau_d / d alpha.
[[nodiscard]] double sensitivity(const ScaledCoeffs& k);
[[nodiscard]] double sensitivity(const ScaledCoeffs& k, double alpha);

/// d^2 tau_d / d alpha^2.
[[nodiscard]] double sensitivity_slope(const ScaledCoeffs& k, double alpha);

/// Order in (0, 1) where the sensitivity is stationary, found by bisection on
/// its analytic derivative. Empty when omega0 == 1 or no sign change exists.
[[nodiscard]] std::optional<double> critical_alpha(const ScaledCoeffs& k);

enum class Stability { Stable, Unstable, Marginal, Unclassified };

struct SteadyRoot {
    double amplitude = 0.0;
    Stability stability = Stability::Unclassified;
};

/// Steady-state amplitude equation of primary resonance,
/// [A1 a + A2 a^3]^2 + [B1 a + B2 a^3]^2 = C, as a cubic in x = a^2.
struct SteadyStateCubic {
    double A1 = 0.0;
    double A2 = 0.0;
    double B1 = 0.0;
    double B2 = 0.0;
    double C = 0.0;
    Cubic poly;
    double discriminant = 0.0;
    RootMultiplicity multiplicity = RootMultiplicity::OneReal;
    std::vector<SteadyRoot> roots;  ///< admissible amplitudes, ascending

    /// Left side minus right side of the squared-sum identity at amplitude a.
    [[nodiscard]] double residual(double a) const noexcept;
};

[[nodiscard]] SteadyStateCubic steady_state_cubic(const ScaledCoeffs& k, double Delta, double f);

/// 2x2 Jacobian of the autonomous (a, gamma) slow flow at a fixed point a > 0.
struct SlowFlowJacobian {
    double j11, j12, j21, j22;
    [[nodiscard]] double trace() const noexcept { return j11 + j22; }
    [[nodiscard]] double det() const noexcept { return j11 * j22 - j12 * j21; }
};

[[nodiscard]] SlowFlowJacobian slow_flow_jacobian(const SteadyStateCubic& cubic, double a);

/// Stability flag per admissible root (same order as cubic.roots).
[[nodiscard]] std::vector<Stability> classify_stability(const SteadyStateCubic& cubic,
                                                        const ScaledCoeffs& k, double Delta,
                                                        double f);

struct ResponsePoint {
    double Delta = 0.0;
    std::vector<SteadyRoot> roots;
};

[[nodiscard]] std::vector<ResponsePoint> frequency_response(const ScaledCoeffs& k,
                                                            std::span<const double> deltas,
                                                            double f);

/// Largest admissible amplitude over a response sweep.
[[nodiscard]] double peak_amplitude(std::span<const ResponsePoint> response);

struct BifurcationInterval {
    double alpha = 0.0;
    double delta_lo = 0.0;
    double delta_hi = 0.0;

    [[nodiscard]] double width() const noexcept { return delta_hi - delta_lo; }
};

/// Detuning interval where three admissible amplitudes coexist. The sweep
/// grid locates it; both edges are refined by bisection on the discriminant
/// sign. Empty if no grid point has three roots.
[[nodiscard]] std::optional<BifurcationInterval> three_root_interval(
    const ScaledCoeffs& k, std::span<const double> deltas, double f);

}  // namespace fracbeam
