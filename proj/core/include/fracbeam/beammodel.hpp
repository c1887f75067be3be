#pragma once

// Undamped cantilever eigenproblem (optionally with a lumped tip mass and
// rotary inertia) and the modal coefficients of the single-mode reduction.

#include <string>
#include <vector>

#include "fracbeam/fracops.hpp"

namespace fracbeam {

/// Beam configuration. M_tip and J_tip are the dimensionless tip mass and
/// rotary inertia; E_r = E_alpha / E_inf.
struct BeamConfig {
    double M_tip = 0.0;
    double J_tip = 0.0;
    double E_r = 1.0;
    FracOrder alpha{0.5};

    static BeamConfig no_tip_mass(double E_r = 1.0, FracOrder alpha = FracOrder{0.5});
    static BeamConfig tip_mass(double E_r = 1.0, FracOrder alpha = FracOrder{0.5});

    [[nodiscard]] bool has_tip_mass() const noexcept { return M_tip != 0.0 || J_tip != 0.0; }
    void validate() const;
};

/// phi(s) = S sin(beta s) + C cos(beta s) + Sh sinh(beta s) + Ch cosh(beta s).
/// Clamped at s = 0, which forces Sh = -S and Ch = -C.
struct ModeShape {
    double beta = 0.0;
    double coeff_sin = 0.0;
    double coeff_cos = 0.0;
    double coeff_sinh = 0.0;
    double coeff_cosh = 0.0;

    [[nodiscard]] double value(double s) const noexcept;
    [[nodiscard]] double d1(double s) const noexcept;
    [[nodiscard]] double d2(double s) const noexcept;
    [[nodiscard]] double d3(double s) const noexcept;

    /// Same shape scaled by `factor`.
    [[nodiscard]] ModeShape rescaled(double factor) const noexcept;
};

/// Coefficients of the unimodal equation of motion.
struct ModalModel {
    ModeShape mode;
    double omega0 = 0.0;  ///< sqrt(K_l / Mcal)
    double Mcal = 0.0;    ///< generalized mass incl. tip mass / inertia
    double Jcal = 0.0;    ///< nonlinear inertia, J * phi'(1)^4
    double K_l = 0.0;
    double C_l = 0.0;
    double K_nl = 0.0;
    double C_nl = 0.0;
    double M_b = 0.0;     ///< base-excitation participation
};

/// Frequency-equation residual. For M_tip = J_tip = 0 this is
/// 1 + cos(beta) cosh(beta); otherwise the tip-mass determinant
///   -(1 + cos cosh) + M beta (sin cosh - cos sinh) + J beta^3 (sin cosh - sinh cosh)
///   + M J beta^4 (sin sinh + cos cosh - 1),
/// which is the published tip-mass equation at M = J = 1.
[[nodiscard]] double characteristic_residual(double beta, const BeamConfig& config);

/// Smallest positive root of the frequency equation. Scans (0, 20] in steps of
/// 0.05 for a sign change, then bisects. Throws NumericalError if none found.
[[nodiscard]] double solve_first_eigenvalue(const BeamConfig& config);

/// Root of the frequency equation inside [lo, hi] by bisection; requires a
/// sign change. Throws NumericalError otherwise.
[[nodiscard]] double solve_eigenvalue_in(const BeamConfig& config, double lo, double hi);

/// The first `count` roots in ascending order, same bracketing scheme.
[[nodiscard]] std::vector<double> solve_eigenvalues(const BeamConfig& config, std::size_t count);

/// Clamped-free mode shape for eigenvalue `beta`, scaled so that
/// int_0^1 phi^2 ds = 1 with a positive sine coefficient. This reproduces the
/// published eigenfunctions of both presets.
[[nodiscard]] ModeShape mode_shape(const BeamConfig& config, double beta);

/// Modal integrals by adaptive Gauss-Kronrod quadrature (relative tol 1e-10)
/// plus the tip boundary terms. Throws NumericalError on non-convergence.
[[nodiscard]] ModalModel modal_coefficients(const BeamConfig& config, const ModeShape& mode);

/// eigenvalue -> mode shape -> coefficients.
[[nodiscard]] ModalModel build_modal_model(const BeamConfig& config);

/// JSON object with every ModalModel field, lossless double formatting.
[[nodiscard]] std::string to_json(const ModalModel& model, int indent = 2);
[[nodiscard]] ModalModel modal_model_from_json(const std::string& text);

}  // namespace fracbeam
