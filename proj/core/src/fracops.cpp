#include "fracbeam/fracops.hpp"

#include <cmath>
#include <string>

#include "fracbeam/errors.hpp"

namespace fracbeam {

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ArgumentError("fractional order must lie strictly in (0, 1), got " +
                            std::to_string(alpha));
    }
}

TimeGrid::TimeGrid(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("time step must be positive and finite");
    }
    if (n_steps == 0) {
        throw ArgumentError("time grid needs at least one step");
    }
}

TimeGrid TimeGrid::covering(double dt, double t_end) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw ArgumentError("time grid requires dt > 0 and t_end > 0");
    }
    const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
    return TimeGrid(dt, n == 0 ? 1 : n);
}

double gamma_fn(double x) { return std::tgamma(x); }

L1Weights l1_weights(FracOrder alpha, std::size_t n) {
    if (n == 0) {
        throw ArgumentError("l1_weights needs n >= 1");
    }
    const double p = alpha.complement();
    std::vector<double> b(n);
    b[0] = 1.0;
    // (j+1)^p - j^p = j^p * expm1(p * log1p(1/j)) avoids cancellation for large j.
    for (std::size_t j = 1; j < n; ++j) {
        const double jd = static_cast<double>(j);
        b[j] = std::pow(jd, p) * std::expm1(p * std::log1p(1.0 / jd));
    }
    return {alpha, std::move(b)};
}

double l1_scale(FracOrder alpha, double dt) {
    return 1.0 / (std::pow(dt, alpha.value()) * gamma_fn(2.0 - alpha.value()));
}

double l1_history(std::span<const double> weights,
                  std::span<const double> reversed_increments) noexcept {
    // With r_i = d_{n-1-i} we have d_{n-j} = r_{j-1}, so both operands walk forward.
    const std::size_t n = reversed_increments.size();
    const double* w = weights.data() + 1;
    const double* r = reversed_increments.data();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += w[i] * r[i];
        s1 += w[i + 1] * r[i + 1];
        s2 += w[i + 2] * r[i + 2];
        s3 += w[i + 3] * r[i + 3];
    }
    for (; i < n; ++i) {
        s0 += w[i] * r[i];
    }
    return (s0 + s1) + (s2 + s3);
}

double caputo_l1(std::span<const double> history, double dt, const L1Weights& weights) {
    if (history.size() < 2) {
        throw ArgumentError("caputo_l1 needs at least two samples");
    }
    const std::size_t n = history.size() - 2;  // evaluating at node n + 1
    if (weights.size() < n + 1) {
        throw ArgumentError("caputo_l1: not enough L1 weights for the history length");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        sum += weights[j] * (history[n + 1 - j] - history[n - j]);
    }
    return sum * l1_scale(weights.alpha, dt);
}

double caputo_l1(std::span<const double> history, const TimeGrid& grid, FracOrder alpha) {
    if (history.size() < 2) {
        throw ArgumentError("caputo_l1 needs at least two samples");
    }
    return caputo_l1(history, grid.dt(), l1_weights(alpha, history.size() - 1));
}

std::vector<double> caputo_l1_all(std::span<const double> samples, double dt, FracOrder alpha) {
    std::vector<double> out(samples.size(), 0.0);
    if (samples.size() < 2) {
        return out;
    }
    const std::size_t n_steps = samples.size() - 1;
    const L1Weights w = l1_weights(alpha, n_steps);
    const double scale = l1_scale(alpha, dt);
    // Increments stored back to front so the memory sum walks forward.
    std::vector<double> rev(n_steps);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double d = samples[n + 1] - samples[n];
        rev[n_steps - 1 - n] = d;
        const std::span<const double> past(rev.data() + n_steps - n, n);
        out[n + 1] = scale * (d + l1_history(w.b, past));
    }
    return out;
}

double rl_from_caputo(double caputo_value, double q0, double t, FracOrder alpha) {
    if (!(t > 0.0)) {
        throw DomainError("Riemann-Liouville correction is singular at t <= 0");
    }
    return caputo_value + q0 / (gamma_fn(1.0 - alpha.value()) * std::pow(t, alpha.value()));
}

double frac_deriv_monomial(double p, FracOrder alpha, double t) {
    if (p < 0.0) {
        throw ArgumentError("frac_deriv_monomial needs p >= 0");
    }
    if (!(t > 0.0)) {
        throw ArgumentError("frac_deriv_monomial needs t > 0");
    }
    if (p == 0.0) {
        return 0.0;
    }
    const double a = alpha.value();
    const double ratio = p < 150.0 ? gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - a)
                                   : std::exp(std::lgamma(p + 1.0) - std::lgamma(p + 1.0 - a));
    return ratio * std::pow(t, p - a);
}

}  // namespace fracbeam
