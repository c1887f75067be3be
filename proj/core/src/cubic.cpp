#include "fracbeam/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracbeam/errors.hpp"

namespace fracbeam {

namespace {

double polish(const Cubic& p, double x) {
    for (int it = 0; it < 8; ++it) {
        const double f = p(x);
        const double df = p.derivative(x);
        if (f == 0.0 || df == 0.0) break;
        const double step = f / df;
        const double next = x - step;
        if (!std::isfinite(next)) break;
        if (std::abs(p(next)) >= std::abs(f)) break;
        x = next;
    }
    return x;
}

/// Residual normalised by the magnitude of the terms that produced it.
double relative_residual(const Cubic& p, double x) {
    const double ax = std::abs(x);
    const double mag = std::abs(p.c3) * ax * ax * ax + std::abs(p.c2) * ax * ax +
                       std::abs(p.c1) * ax + std::abs(p.c0);
    return mag == 0.0 ? 0.0 : std::abs(p(x)) / mag;
}

double bisect(const Cubic& p, double lo, double hi) {
    double f_lo = p(lo);
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = p(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Fallback: separate roots by the critical points of p and bisect each
// monotone piece that changes sign.
std::vector<double> isolate_and_bisect(const Cubic& p) {
    const double bound =
        1.0 + std::max({std::abs(p.c2 / p.c3), std::abs(p.c1 / p.c3), std::abs(p.c0 / p.c3)});
    std::vector<double> knots{-bound};
    const double qa = 3.0 * p.c3;
    const double qb = 2.0 * p.c2;
    const double qc = p.c1;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t = -0.5 * (qb + std::copysign(sq, qb));
        double r1 = t / qa;
        double r2 = t != 0.0 ? qc / t : -r1;
        if (r1 > r2) std::swap(r1, r2);
        knots.push_back(r1);
        knots.push_back(r2);
    }
    knots.push_back(bound);
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i];
        const double b = knots[i + 1];
        const double fa = p(a);
        const double fb = p(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if ((fa > 0.0) != (fb > 0.0)) {
            roots.push_back(bisect(p, a, b));
        }
    }
    if (p(knots.back()) == 0.0) roots.push_back(knots.back());
    // Critical points that are themselves (double) roots never change sign.
    for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
        if (relative_residual(p, knots[i]) < 1e-8) roots.push_back(knots[i]);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> distinct;
    for (double r : roots) {
        if (distinct.empty() || std::abs(r - distinct.back()) > 1e-7 * (1.0 + std::abs(r))) {
            distinct.push_back(r);
        }
    }
    return distinct;
}

}  // namespace

double discriminant(const Cubic& p) noexcept {
    const double a = p.c3, b = p.c2, c = p.c1, d = p.c0;
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
}

double discriminant_scale(const Cubic& p) noexcept {
    const double a = std::abs(p.c3), b = std::abs(p.c2), c = std::abs(p.c1), d = std::abs(p.c0);
    return 18.0 * a * b * c * d + 4.0 * b * b * b * d + b * b * c * c + 4.0 * a * c * c * c +
           27.0 * a * a * d * d;
}

CubicRoots solve_cubic(const Cubic& p) {
    if (p.c3 == 0.0 || !std::isfinite(p.c3) || !std::isfinite(p.c2) || !std::isfinite(p.c1) ||
        !std::isfinite(p.c0)) {
        throw ArgumentError("solve_cubic needs finite coefficients with c3 != 0");
    }
    CubicRoots out;
    out.discriminant = discriminant(p);
    const double band = kDiscriminantBand * discriminant_scale(p);
    if (std::abs(out.discriminant) <= band) {
        out.multiplicity = RootMultiplicity::Repeated;
    } else if (out.discriminant > 0.0) {
        out.multiplicity = RootMultiplicity::ThreeDistinct;
    } else {
        out.multiplicity = RootMultiplicity::OneReal;
    }

    // Depressed form x = t - b/3: t^3 + P t + Q = 0.
    const double b = p.c2 / p.c3;
    const double c = p.c1 / p.c3;
    const double d = p.c0 / p.c3;
    const double shift = b / 3.0;
    const double P = c - b * b / 3.0;
    const double Q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    std::vector<double> roots;
    if (out.multiplicity == RootMultiplicity::ThreeDistinct && P < 0.0) {
        const double m = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
        }
    } else if (out.multiplicity == RootMultiplicity::Repeated) {
        // Double (or triple) root: the distinct roots are where p and p' vanish.
        roots = isolate_and_bisect(p);
        if (roots.empty()) {
            roots.push_back(std::cbrt(-Q) - shift);
        }
    } else {
        const double half_q = 0.5 * Q;
        const double inner = half_q * half_q + P * P * P / 27.0;
        const double sq = std::sqrt(std::max(inner, 0.0));
        const double u = std::cbrt(-half_q - std::copysign(sq, half_q));
        const double t = u != 0.0 ? u - P / (3.0 * u) : 0.0;
        roots.push_back(t - shift);
    }

    bool ok = true;
    for (double& r : roots) {
        r = polish(p, r);
        if (!std::isfinite(r) || relative_residual(p, r) > 1e-10) ok = false;
    }
    const std::size_t expected = out.multiplicity == RootMultiplicity::ThreeDistinct ? 3 : 0;
    if (!ok || (expected != 0 && roots.size() != expected)) {
        roots = isolate_and_bisect(p);
        for (double& r : roots) r = polish(p, r);
    }
    std::sort(roots.begin(), roots.end());
    out.roots = std::move(roots);
    return out;
}

}  // namespace fracbeam
