#pragma once

// Fractional Kelvin-Voigt constitutive law sigma = E_inf eps + E_alpha D^alpha eps:
// reduction from discrete-order distributions, complex modulus, tangent loss
// and the stress history under a prescribed strain program.

#include <vector>

#include "fracbeam/fracops.hpp"

namespace fracbeam {

/// Dirac atom of an order distribution: weight * delta(order - x).
struct OrderAtom {
    double order = 0.0;
    double weight = 0.0;
};

/// Discrete distributions on the stress and strain sides of the
/// distributed-order law. Strain atoms at order 0 act as extra elastic weight.
struct MaterialDistribution {
    std::vector<OrderAtom> stress_atoms;
    std::vector<OrderAtom> strain_atoms;
    double elastic_weight = 0.0;
};

struct KelvinVoigtParams {
    double E_inf = 1.0;
    double E_alpha = 1.0;
    FracOrder alpha{0.5};

    [[nodiscard]] double E_r() const noexcept { return E_alpha / E_inf; }
    void validate() const;
};

/// Extracts (E_inf, E_alpha, alpha). Accepts a single stress atom at order 0
/// (the weight is divided out), any number of order-0 strain atoms, and
/// atoms at one fractional order in (0, 1). Anything else throws
/// UnsupportedError; orders outside [0, 1] throw ArgumentError.
[[nodiscard]] KelvinVoigtParams reduce_to_kelvin_voigt(const MaterialDistribution& dist);

struct ComplexModulus {
    double storage = 0.0;  ///< G'
    double loss = 0.0;     ///< G''
};

[[nodiscard]] ComplexModulus complex_modulus(const KelvinVoigtParams& p, double omega);

/// G''/G' written in terms of E_r.
[[nodiscard]] double tangent_loss(const KelvinVoigtParams& p, double omega);

/// Piecewise strain history. A ramp continues from the strain at its start
/// with the given rate; a hold keeps a constant value, which must match the
/// incoming strain.
struct StrainPiece {
    enum class Kind { Ramp, Hold };
    double t_start = 0.0;
    double t_end = 0.0;
    Kind kind = Kind::Ramp;
    double value = 0.0;  ///< rate for Ramp, level for Hold
};

class StrainProgram {
public:
    explicit StrainProgram(std::vector<StrainPiece> pieces);

    /// Ramp at `rate` on [0, t_switch) then hold the reached strain until t_end.
    static StrainProgram ramp_then_hold(double rate, double t_switch, double t_end);

    [[nodiscard]] double strain(double t) const;
    [[nodiscard]] double t_end() const noexcept { return pieces_.back().t_end; }
    [[nodiscard]] const std::vector<StrainPiece>& pieces() const noexcept { return pieces_; }

private:
    std::vector<StrainPiece> pieces_;
    std::vector<double> start_strain_;
};

struct StressHistory {
    std::vector<double> t;
    std::vector<double> strain;
    std::vector<double> stress;
};

/// Stress at every grid node: sigma_n = E_inf eps_n + E_alpha * L1-Caputo(eps)_n.
/// The strain starts from rest at zero, so Caputo and Riemann-Liouville agree.
[[nodiscard]] StressHistory stress_response(const KelvinVoigtParams& p,
                                            const StrainProgram& program, const TimeGrid& grid);

/// Single-branch Maxwell element (spring E, relaxation time tau) under a
/// strain ramp of `rate`: sigma(t) = E rate tau (1 - exp(-t/tau)).
[[nodiscard]] double maxwell_ramp_stress(double E, double tau, double rate, double t);

}  // namespace fracbeam
