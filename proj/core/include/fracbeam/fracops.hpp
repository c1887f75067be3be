#pragma once

// Fractional-order arithmetic on uniform grids: L1 weights, the discrete
// Caputo derivative, the Riemann-Liouville initial-value correction and the
// analytic Caputo derivative of monomials.

#include <cstddef>
#include <span>
#include <vector>

namespace fracbeam {

/// Fractional order strictly inside (0, 1). The endpoints are the classical
/// spring (0) and dashpot (1) limits and have dedicated code paths elsewhere.
class FracOrder {
public:
    explicit FracOrder(double alpha);

    [[nodiscard]] double value() const noexcept { return alpha_; }
    /// 1 - alpha, the exponent that appears in the L1 weights.
    [[nodiscard]] double complement() const noexcept { return 1.0 - alpha_; }

    friend bool operator==(FracOrder, FracOrder) = default;

private:
    double alpha_;
};

/// Uniform time grid t_n = n * dt, n = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double dt, std::size_t n_steps);

    /// Grid with step dt covering [0, t_end]; n_steps = round(t_end / dt).
    static TimeGrid covering(double dt, double t_end);

    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] std::size_t n_steps() const noexcept { return n_steps_; }
    [[nodiscard]] std::size_t n_nodes() const noexcept { return n_steps_ + 1; }
    [[nodiscard]] double t(std::size_t n) const noexcept { return static_cast<double>(n) * dt_; }
    [[nodiscard]] double t_end() const noexcept { return t(n_steps_); }

private:
    double dt_;
    std::size_t n_steps_;
};

/// Convolution weights b_j = (j+1)^(1-alpha) - j^(1-alpha), j = 0..n-1.
struct L1Weights {
    FracOrder alpha;
    std::vector<double> b;

    [[nodiscard]] std::size_t size() const noexcept { return b.size(); }
    [[nodiscard]] double operator[](std::size_t j) const noexcept { return b[j]; }
};

[[nodiscard]] double gamma_fn(double x);

[[nodiscard]] L1Weights l1_weights(FracOrder alpha, std::size_t n);

/// 1 / (dt^alpha * Gamma(2 - alpha)), the L1 prefactor.
[[nodiscard]] double l1_scale(FracOrder alpha, double dt);

/// Memory part of the L1 sum, sum_{j=1}^{n} b_j * d_{n-j}, where the
/// increments are d_k = q_{k+1} - q_k.
///
/// `reversed_increments` holds d_{n-1}, d_{n-2}, ..., d_0 contiguously, i.e.
/// element i is d_{n-1-i}. `weights` must hold at least n + 1 entries.
[[nodiscard]] double l1_history(std::span<const double> weights,
                                std::span<const double> reversed_increments) noexcept;

/// L1 approximation of the Caputo derivative at the last node of `history`
/// (q_0..q_{n+1} on `grid`). Throws ArgumentError for fewer than 2 samples.
[[nodiscard]] double caputo_l1(std::span<const double> history, const TimeGrid& grid,
                               FracOrder alpha);

/// Same, with precomputed weights (at least history.size() - 1 entries).
[[nodiscard]] double caputo_l1(std::span<const double> history, double dt,
                               const L1Weights& weights);

/// Caputo derivative at every node 1..N of `samples`; entry 0 is zero.
[[nodiscard]] std::vector<double> caputo_l1_all(std::span<const double> samples, double dt,
                                                FracOrder alpha);

/// Riemann-Liouville value from a Caputo value: D_RL = D_C + q0 / (Gamma(1-alpha) t^alpha).
/// Throws DomainError for t <= 0.
[[nodiscard]] double rl_from_caputo(double caputo_value, double q0, double t, FracOrder alpha);

/// Caputo derivative of t^p: Gamma(p+1)/Gamma(p+1-alpha) t^(p-alpha); zero for p = 0.
[[nodiscard]] double frac_deriv_monomial(double p, FracOrder alpha, double t);

}  // namespace fracbeam
