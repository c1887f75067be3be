#include "fracbeam/mms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracbeam/errors.hpp"

namespace fracbeam {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double gain_at(const ScaledCoeffs& k, double alpha) {
    return k.E_r * std::pow(k.omega0, alpha - 1.0);
}

}  // namespace

double ScaledCoeffs::fractional_gain() const noexcept {
    return E_r * std::pow(omega0, alpha.value() - 1.0);
}

ScaledCoeffs ScaledCoeffs::with_alpha(FracOrder a) const noexcept {
    ScaledCoeffs out = *this;
    out.alpha = a;
    return out;
}

ScaledCoeffs ScaledCoeffs::with_E_r(double e) const noexcept {
    ScaledCoeffs out = *this;
    out.E_r = e;
    return out;
}

ScaledCoeffs scale_coeffs(const ModalModel& model, double E_r, FracOrder alpha) {
    if (!(model.Mcal > 0.0) || !(model.K_l > 0.0)) {
        throw ArgumentError("modal model needs positive Mcal and K_l");
    }
    ScaledCoeffs k;
    k.omega0 = std::sqrt(model.K_l / model.Mcal);
    k.c_l = model.C_l / model.Mcal;
    k.c_nl = model.C_nl / model.Mcal;
    k.k_nl = model.K_nl / model.Mcal;
    k.m_nl = model.Jcal / model.Mcal;
    k.E_r = E_r;
    k.alpha = alpha;
    return k;
}

SlowFlowRates slow_flow_free(const SlowFlowState& s, const ScaledCoeffs& k) {
    const double g = k.fractional_gain();
    const double arg = kHalfPi * k.alpha.value();
    const double sn = std::sin(arg);
    const double cs = std::cos(arg);
    const double a2 = s.a * s.a;
    SlowFlowRates r;
    r.da = -g * sn * (0.5 * k.c_l * s.a + 0.375 * k.c_nl * s.a * a2);
    r.dphi = 0.5 * k.c_l * g * cs + 0.75 * k.c_nl * g * cs * a2 + 0.75 * k.k_nl / k.omega0 * a2;
    if (k.m_nl != 0.0) {
        r.dphi -= 0.25 * k.m_nl * k.omega0 * a2;
    }
    return r;
}

std::vector<SlowFlowState> integrate_slow_flow_free(const ScaledCoeffs& k, double a0,
                                                    double phi0, double T1_end, double dT1,
                                                    std::size_t stride) {
    if (!(a0 >= 0.0) || !(T1_end >= 0.0) || !(dT1 > 0.0) || stride == 0) {
        throw ArgumentError("slow-flow integration needs a0 >= 0, T1_end >= 0, dT1 > 0");
    }
    const auto n_steps = static_cast<std::size_t>(std::llround(T1_end / dT1));
    std::vector<SlowFlowState> out;
    out.reserve(n_steps / stride + 2);
    SlowFlowState s{a0, phi0, 0.0};
    out.push_back(s);

    auto rates = [&k](double a) { return slow_flow_free({a, 0.0, 0.0}, k); };
    for (std::size_t n = 0; n < n_steps; ++n) {
        // The flow is autonomous and the phase does not feed back.
        const SlowFlowRates k1 = rates(s.a);
        const SlowFlowRates k2 = rates(s.a + 0.5 * dT1 * k1.da);
        const SlowFlowRates k3 = rates(s.a + 0.5 * dT1 * k2.da);
        const SlowFlowRates k4 = rates(s.a + dT1 * k3.da);
        s.a += dT1 / 6.0 * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da);
        s.phi += dT1 / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
        s.T1 = static_cast<double>(n + 1) * dT1;
        if (!std::isfinite(s.a) || !std::isfinite(s.phi)) {
            throw NonFiniteStateError(n + 1, "non-finite slow-flow state");
        }
        if ((n + 1) % stride == 0 || n + 1 == n_steps) {
            out.push_back(s);
        }
    }
    return out;
}

double decay_rate(const ScaledCoeffs& k, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ArgumentError("decay_rate: order must lie in [0, 1]");
    }
    return k.c_l * gain_at(k, alpha) * std::sin(kHalfPi * alpha);
}

double decay_rate(const ScaledCoeffs& k) { return decay_rate(k, k.alpha.value()); }

double sensitivity(const ScaledCoeffs& k, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ArgumentError("sensitivity: order must lie in [0, 1]");
    }
    const double g = k.c_l * gain_at(k, alpha);
    return kHalfPi * g * std::cos(kHalfPi * alpha) +
           g * std::sin(kHalfPi * alpha) * std::log(k.omega0);
}

double sensitivity(const ScaledCoeffs& k) { return sensitivity(k, k.alpha.value()); }

double sensitivity_slope(const ScaledCoeffs& k, double alpha) {
    const double L = std::log(k.omega0);
    const double g = k.c_l * gain_at(k, alpha);
    const double arg = kHalfPi * alpha;
    return g * (std::numbers::pi * L * std::cos(arg) +
                (L * L - kHalfPi * kHalfPi) * std::sin(arg));
}

std::optional<double> critical_alpha(const ScaledCoeffs& k) {
    if (!(k.omega0 > 0.0)) {
        throw ArgumentError("critical_alpha needs omega0 > 0");
    }
    if (k.omega0 == 1.0) {
        return std::nullopt;
    }
    // The positive prefactor c_l E_r omega0^(alpha-1) does not affect the sign.
    const double L = std::log(k.omega0);
    auto h = [L](double a) {
        const double arg = kHalfPi * a;
        return std::numbers::pi * L * std::cos(arg) + (L * L - kHalfPi * kHalfPi) * std::sin(arg);
    };
    double lo = 0.0;
    double hi = 1.0;
    double h_lo = h(lo);
    const double h_hi = h(hi);
    if (h_lo == 0.0 || h_hi == 0.0 || (h_lo > 0.0) == (h_hi > 0.0)) {
        return std::nullopt;
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h(mid);
        if (h_mid == 0.0) return mid;
        if ((h_mid > 0.0) == (h_lo > 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double SteadyStateCubic::residual(double a) const noexcept {
    const double a3 = a * a * a;
    const double s = A1 * a + A2 * a3;
    const double c = B1 * a + B2 * a3;
    return s * s + c * c - C;
}

SteadyStateCubic steady_state_cubic(const ScaledCoeffs& k, double Delta, double f) {
    if (!(f >= 0.0) || !std::isfinite(f) || !std::isfinite(Delta)) {
        throw ArgumentError("steady_state_cubic needs finite Delta and f >= 0");
    }
    const double g = k.fractional_gain();
    const double arg = kHalfPi * k.alpha.value();
    const double sn = std::sin(arg);
    const double cs = std::cos(arg);

    SteadyStateCubic out;
    out.A1 = 0.5 * k.c_l * g * sn;
    out.A2 = 0.375 * k.c_nl * g * sn;
    out.B1 = Delta - 0.5 * k.c_l * g * cs;
    double hardening = k.c_nl * g * cs + k.k_nl / k.omega0;
    if (k.m_nl != 0.0) {
        hardening += k.m_nl * k.omega0 / 3.0;
    }
    out.B2 = -0.75 * hardening;
    out.C = f * f / (4.0 * k.omega0 * k.omega0);
    out.poly = Cubic{out.A2 * out.A2 + out.B2 * out.B2, 2.0 * (out.A1 * out.A2 + out.B1 * out.B2),
                     out.A1 * out.A1 + out.B1 * out.B1, -out.C};

    if (out.C == 0.0) {
        // x = 0 is the only non-negative root: the remaining quadratic has a
        // non-positive discriminant, -4 (A1 B2 - A2 B1)^2.
        out.discriminant = discriminant(out.poly);
        out.multiplicity = RootMultiplicity::OneReal;
        out.roots.push_back({0.0, Stability::Unclassified});
        return out;
    }

    const CubicRoots cr = solve_cubic(out.poly);
    out.discriminant = cr.discriminant;
    out.multiplicity = cr.multiplicity;
    for (double x : cr.roots) {
        if (x < -1e-12) continue;
        out.roots.push_back({std::sqrt(std::max(x, 0.0)), Stability::Unclassified});
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const SteadyRoot& l, const SteadyRoot& r) { return l.amplitude < r.amplitude; });
    return out;
}

SlowFlowJacobian slow_flow_jacobian(const SteadyStateCubic& c, double a) {
    if (!(a > 0.0)) {
        throw DomainError("slow-flow Jacobian is singular at a = 0");
    }
    // da/dT1     = -A1 a - A2 a^3 + F sin(gamma)
    // dgamma/dT1 =  B1 + B2 a^2 + (F / a) cos(gamma),  F = f / (2 omega0)
    // with the fixed-point relations substituted for F sin, F cos.
    const double x = a * a;
    SlowFlowJacobian j{};
    j.j11 = -c.A1 - 3.0 * c.A2 * x;
    j.j12 = -(c.B1 * a + c.B2 * a * x);
    j.j21 = c.B1 / a + 3.0 * c.B2 * a;
    j.j22 = -(c.A1 + c.A2 * x);
    return j;
}

std::vector<Stability> classify_stability(const SteadyStateCubic& cubic, const ScaledCoeffs& k,
                                          double /*Delta*/, double f) {
    std::vector<Stability> flags;
    flags.reserve(cubic.roots.size());
    for (const SteadyRoot& r : cubic.roots) {
        if (r.amplitude == 0.0 || f == 0.0) {
            // Only the amplitude equation is meaningful here: da/dT1 = -A1 a.
            const double rate = decay_rate(k) * 0.5;
            flags.push_back(rate > 0.0 ? Stability::Stable
                                       : rate < 0.0 ? Stability::Unstable : Stability::Marginal);
            continue;
        }
        const SlowFlowJacobian j = slow_flow_jacobian(cubic, r.amplitude);
        const double tr = j.trace();
        const double det = j.det();
        const double scale = std::abs(j.j11 * j.j22) + std::abs(j.j12 * j.j21);
        const double tol = 1e-12 * std::max(scale, 1e-300);
        if (std::abs(det) <= tol || std::abs(tr) <= 1e-12 * (std::abs(j.j11) + std::abs(j.j22))) {
            flags.push_back(Stability::Marginal);
        } else if (tr < 0.0 && det > 0.0) {
            flags.push_back(Stability::Stable);
        } else {
            flags.push_back(Stability::Unstable);
        }
    }
    return flags;
}

std::vector<ResponsePoint> frequency_response(const ScaledCoeffs& k,
                                              std::span<const double> deltas, double f) {
    std::vector<ResponsePoint> out;
    out.reserve(deltas.size());
    for (double d : deltas) {
        SteadyStateCubic cubic = steady_state_cubic(k, d, f);
        const auto flags = classify_stability(cubic, k, d, f);
        for (std::size_t i = 0; i < flags.size(); ++i) cubic.roots[i].stability = flags[i];
        out.push_back({d, std::move(cubic.roots)});
    }
    return out;
}

double peak_amplitude(std::span<const ResponsePoint> response) {
    double peak = 0.0;
    for (const auto& p : response) {
        for (const auto& r : p.roots) peak = std::max(peak, r.amplitude);
    }
    return peak;
}

std::optional<BifurcationInterval> three_root_interval(const ScaledCoeffs& k,
                                                       std::span<const double> deltas, double f) {
    auto three = [&](double d) {
        const SteadyStateCubic c = steady_state_cubic(k, d, f);
        return c.multiplicity == RootMultiplicity::ThreeDistinct && c.roots.size() == 3;
    };
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (three(deltas[i])) {
            if (!first) first = i;
            last = i;
        }
    }
    if (!first) {
        return std::nullopt;
    }
    auto refine = [&](double inside, double outside) {
        for (int it = 0; it < 200 && std::abs(inside - outside) > 1e-12; ++it) {
            const double mid = 0.5 * (inside + outside);
            (three(mid) ? inside : outside) = mid;
        }
        return inside;
    };
    BifurcationInterval iv;
    iv.alpha = k.alpha.value();
    iv.delta_lo = *first > 0 ? refine(deltas[*first], deltas[*first - 1]) : deltas[*first];
    iv.delta_hi =
        *last + 1 < deltas.size() ? refine(deltas[*last], deltas[*last + 1]) : deltas[*last];
    return iv;
}

}  // namespace fracbeam
