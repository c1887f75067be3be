#include "fracbeam/rheology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracbeam/errors.hpp"

namespace fracbeam {

namespace {

constexpr double kJoinTol = 1e-12;

}  // namespace

void KelvinVoigtParams::validate() const {
    if (!(E_inf > 0.0) || !std::isfinite(E_inf)) {
        throw ArgumentError("E_inf must be positive and finite");
    }
    if (!(E_alpha >= 0.0) || !std::isfinite(E_alpha)) {
        throw ArgumentError("E_alpha must be non-negative and finite");
    }
}

KelvinVoigtParams reduce_to_kelvin_voigt(const MaterialDistribution& dist) {
    auto check_order = [](double order) {
        if (!(order >= 0.0 && order <= 1.0)) {
            throw ArgumentError("distribution orders must lie in [0, 1]");
        }
    };
    if (dist.stress_atoms.size() != 1) {
        throw UnsupportedError("Kelvin-Voigt reduction needs exactly one stress atom");
    }
    const OrderAtom stress = dist.stress_atoms.front();
    check_order(stress.order);
    if (stress.order != 0.0 || !(stress.weight > 0.0)) {
        throw UnsupportedError("Kelvin-Voigt reduction needs a positive stress atom at order 0");
    }

    double elastic = dist.elastic_weight;
    double frac_weight = 0.0;
    double frac_order = -1.0;
    for (const OrderAtom& atom : dist.strain_atoms) {
        check_order(atom.order);
        if (atom.order == 0.0) {
            elastic += atom.weight;
        } else if (atom.order == 1.0) {
            throw UnsupportedError("integer-order strain atoms are not a fractional Kelvin-Voigt law");
        } else if (frac_order < 0.0 || atom.order == frac_order) {
            frac_order = atom.order;
            frac_weight += atom.weight;
        } else {
            throw UnsupportedError("more than one fractional strain order is not supported");
        }
    }

    KelvinVoigtParams p;
    p.E_inf = elastic / stress.weight;
    p.E_alpha = frac_weight / stress.weight;
    p.alpha = FracOrder(frac_order > 0.0 ? frac_order : 0.5);
    p.validate();
    return p;
}

ComplexModulus complex_modulus(const KelvinVoigtParams& p, double omega) {
    p.validate();
    if (!(omega > 0.0)) {
        throw ArgumentError("complex_modulus needs omega > 0");
    }
    const double a = p.alpha.value();
    const double w = p.E_alpha * std::pow(omega, a);
    const double arg = 0.5 * std::numbers::pi * a;
    return {p.E_inf + w * std::cos(arg), w * std::sin(arg)};
}

double tangent_loss(const KelvinVoigtParams& p, double omega) {
    p.validate();
    if (!(omega > 0.0)) {
        throw ArgumentError("tangent_loss needs omega > 0");
    }
    const double a = p.alpha.value();
    const double w = p.E_r() * std::pow(omega, a);
    const double arg = 0.5 * std::numbers::pi * a;
    const double denom = 1.0 + w * std::cos(arg);
    if (!(denom > 0.0)) {
        throw NumericalError("tangent loss denominator must be positive");
    }
    return w * std::sin(arg) / denom;
}

StrainProgram::StrainProgram(std::vector<StrainPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) {
        throw ArgumentError("strain program needs at least one piece");
    }
    double t = 0.0;
    double eps = 0.0;
    for (const StrainPiece& piece : pieces_) {
        if (std::abs(piece.t_start - t) > kJoinTol * std::max(1.0, std::abs(t))) {
            throw ArgumentError("strain program pieces must be contiguous from t = 0");
        }
        if (!(piece.t_end > piece.t_start)) {
            throw ArgumentError("strain program pieces need t_end > t_start");
        }
        if (piece.kind == StrainPiece::Kind::Hold &&
            std::abs(piece.value - eps) > kJoinTol * std::max(1.0, std::abs(eps))) {
            throw ArgumentError("strain program is discontinuous at t = " + std::to_string(t));
        }
        start_strain_.push_back(eps);
        eps = piece.kind == StrainPiece::Kind::Ramp
                  ? eps + piece.value * (piece.t_end - piece.t_start)
                  : piece.value;
        t = piece.t_end;
    }
}

StrainProgram StrainProgram::ramp_then_hold(double rate, double t_switch, double t_end) {
    return StrainProgram({{0.0, t_switch, StrainPiece::Kind::Ramp, rate},
                          {t_switch, t_end, StrainPiece::Kind::Hold, rate * t_switch}});
}

double StrainProgram::strain(double t) const {
    if (t < 0.0) {
        throw ArgumentError("strain program is defined for t >= 0");
    }
    // Pieces are half-open [t_start, t_end) except the last, which is closed.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double v, const StrainPiece& p) { return v < p.t_end; });
    if (it == pieces_.end()) {
        if (t > pieces_.back().t_end * (1.0 + kJoinTol)) {
            throw ArgumentError("strain program does not cover t = " + std::to_string(t));
        }
        it = std::prev(pieces_.end());
    }
    const auto i = static_cast<std::size_t>(it - pieces_.begin());
    const StrainPiece& p = *it;
    return p.kind == StrainPiece::Kind::Ramp ? start_strain_[i] + p.value * (t - p.t_start)
                                             : p.value;
}

StressHistory stress_response(const KelvinVoigtParams& p, const StrainProgram& program,
                              const TimeGrid& grid) {
    p.validate();
    if (grid.t_end() > program.t_end() * (1.0 + kJoinTol)) {
        throw ArgumentError("strain program does not cover the time grid");
    }
    StressHistory h;
    h.t.resize(grid.n_nodes());
    h.strain.resize(grid.n_nodes());
    for (std::size_t n = 0; n < grid.n_nodes(); ++n) {
        h.t[n] = grid.t(n);
        h.strain[n] = program.strain(h.t[n]);
    }
    const std::vector<double> frac = caputo_l1_all(h.strain, grid.dt(), p.alpha);
    h.stress.resize(grid.n_nodes());
    for (std::size_t n = 0; n < grid.n_nodes(); ++n) {
        h.stress[n] = p.E_inf * h.strain[n] + p.E_alpha * frac[n];
    }
    return h;
}

double maxwell_ramp_stress(double E, double tau, double rate, double t) {
    if (!(tau > 0.0) || t < 0.0) {
        throw ArgumentError("maxwell_ramp_stress needs tau > 0 and t >= 0");
    }
    return E * rate * tau * -std::expm1(-t / tau);
}

}  // namespace fracbeam
