#pragma once

#include <vector>

namespace fracbeam {

/// Coefficients of c3 x^3 + c2 x^2 + c1 x + c0.
struct Cubic {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    [[nodiscard]] double operator()(double x) const noexcept {
        return ((c3 * x + c2) * x + c1) * x + c0;
    }
    [[nodiscard]] double derivative(double x) const noexcept {
        return (3.0 * c3 * x + 2.0 * c2) * x + c1;
    }
};

/// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2.
[[nodiscard]] double discriminant(const Cubic& p) noexcept;

/// Sum of the magnitudes of the discriminant's terms; the cancellation scale
/// against which a near-zero discriminant is judged.
[[nodiscard]] double discriminant_scale(const Cubic& p) noexcept;

enum class RootMultiplicity {
    OneReal,        ///< discriminant < 0
    ThreeDistinct,  ///< discriminant > 0
    Repeated,       ///< |discriminant| within the degeneracy band
};

struct CubicRoots {
    std::vector<double> roots;  ///< real roots, ascending
    double discriminant = 0.0;
    RootMultiplicity multiplicity = RootMultiplicity::OneReal;
};

/// Relative width of the degeneracy band around a zero discriminant.
inline constexpr double kDiscriminantBand = 1e-10;

/// Real roots of a cubic with c3 != 0. Trigonometric form for three real
/// roots, Cardano otherwise, each root Newton-polished. If a root fails the
/// residual check the roots are re-isolated between the critical points and
/// bisected.
[[nodiscard]] CubicRoots solve_cubic(const Cubic& p);

}  // namespace fracbeam
