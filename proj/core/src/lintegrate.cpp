#include "fracbeam/lintegrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "fracbeam/errors.hpp"

namespace fracbeam {

OscillatorParams OscillatorParams::from_modal(const ModalModel& model, double E_r,
                                              FracOrder alpha, Variant variant) {
    OscillatorParams p;
    p.c_l = model.C_l / model.Mcal;
    p.k_l = model.K_l / model.Mcal;
    p.m_b = model.M_b / model.Mcal;
    p.E_r = E_r;
    p.alpha = alpha;
    p.variant = variant;
    return p;
}

void OscillatorParams::validate() const {
    if (!(c_l > 0.0) || !(k_l > 0.0)) {
        throw ArgumentError("oscillator needs c_l > 0 and k_l > 0");
    }
    if (!(E_r >= 0.0) || !std::isfinite(E_r) || !std::isfinite(m_b)) {
        throw ArgumentError("oscillator needs finite E_r >= 0 and finite m_b");
    }
}

void NewmarkParams::validate() const {
    if (!(gamma >= 0.5) || !(2.0 * beta >= gamma)) {
        throw ArgumentError("Newmark parameters must satisfy 2*beta >= gamma >= 1/2");
    }
}

Excitation Excitation::harmonic_base(double a_b, double omega_b) {
    Excitation e{Kind::HarmonicBase, a_b, omega_b};
    e.validate();
    return e;
}

double Excitation::forcing(double m_b, double t) const noexcept {
    if (kind == Kind::Free) {
        return 0.0;
    }
    // v_b'' = -a_b w^2 sin(w t), so -m_b v_b'' = m_b a_b w^2 sin(w t).
    return m_b * a_b * omega_b * omega_b * std::sin(omega_b * t);
}

void Excitation::validate() const {
    if (!(a_b >= 0.0)) {
        throw ArgumentError("base amplitude a_b must be non-negative");
    }
    if (kind == Kind::HarmonicBase && !(omega_b > 0.0)) {
        throw ArgumentError("harmonic base excitation needs omega_b > 0");
    }
}

StepCoefficients::StepCoefficients(const OscillatorParams& params, const NewmarkParams& newmark,
                                   double dt)
    : params_(params) {
    params.validate();
    newmark.validate();
    const double b = newmark.beta;
    const double g = newmark.gamma;
    a_[0] = 1.0 / (b * dt * dt);
    a_[1] = 1.0 / (b * dt);
    a_[2] = (1.0 - 2.0 * b) / (2.0 * b);
    a_[3] = g / (b * dt);
    a_[4] = 1.0 - g / b;
    a_[5] = (1.0 - g / (2.0 * b)) * dt;
    e_star_ = params.variant == Variant::ClassicalKV
                  ? 0.0
                  : params.E_r * params.c_l * l1_scale(params.alpha, dt);
}

double step_closed_form(const StepCoefficients& k, const StepState& s, double history_sum,
                        double q0, std::size_t step_index, double forcing_next) {
    const OscillatorParams& p = k.params();
    const double inertia = k.a1() * s.q + k.a2() * s.qdot + k.a3() * s.qddot;
    if (p.variant == Variant::ClassicalKV) {
        const double damping = p.E_r * p.c_l;
        const double rhs = forcing_next + inertia +
                           damping * (k.a4() * s.q - k.a5() * s.qdot - k.a6() * s.qddot);
        return rhs / (k.a1() + damping * k.a4() + p.k_l);
    }
    double memory = history_sum;
    if (p.variant == Variant::RiemannLiouville) {
        const double a = p.alpha.value();
        memory += q0 * (1.0 - a) / std::pow(static_cast<double>(step_index + 1), a);
    }
    const double es = k.e_star();
    const double rhs = inertia + es * s.q + forcing_next - es * memory;
    return rhs / (k.a1() + es + p.k_l);
}

StepState newmark_update(const StepCoefficients& k, const StepState& s, double q_next) {
    const double dq = q_next - s.q;
    StepState out;
    out.q = q_next;
    out.qddot = k.a1() * dq - k.a2() * s.qdot - k.a3() * s.qddot;
    out.qdot = k.a4() * dq + k.a5() * s.qdot + k.a6() * s.qddot;
    return out;
}

TrajectoryRecord integrate(const OscillatorParams& params, const Excitation& excitation,
                           double q0, double qdot0, const TimeGrid& grid,
                           const NewmarkParams& newmark) {
    excitation.validate();
    if (!std::isfinite(q0) || !std::isfinite(qdot0)) {
        throw ArgumentError("initial conditions must be finite");
    }
    const StepCoefficients coeffs(params, newmark, grid.dt());
    const std::size_t n_steps = grid.n_steps();

    TrajectoryRecord rec{grid, {}, {}, {}, params, excitation};
    rec.q.resize(n_steps + 1);
    rec.qdot.resize(n_steps + 1);
    rec.qddot.resize(n_steps + 1);

    // The Caputo derivative of a smooth history vanishes at t = 0 and the RL
    // singular term first enters at t_1.
    StepState state{q0, qdot0, 0.0};
    state.qddot = excitation.forcing(params.m_b, 0.0) - params.k_l * q0;
    if (params.variant == Variant::ClassicalKV) {
        state.qddot -= params.E_r * params.c_l * qdot0;
    }
    rec.q[0] = state.q;
    rec.qdot[0] = state.qdot;
    rec.qddot[0] = state.qddot;

    const bool fractional = params.variant != Variant::ClassicalKV;
    std::vector<double> weights;
    std::vector<double> rev_increments;
    if (fractional) {
        weights = l1_weights(params.alpha, n_steps).b;
        rev_increments.resize(n_steps);
    }

    for (std::size_t n = 0; n < n_steps; ++n) {
        double history = 0.0;
        if (fractional && n > 0) {
            history = l1_history(weights, {rev_increments.data() + (n_steps - n), n});
        }
        const double f_next = excitation.forcing(params.m_b, grid.t(n + 1));
        const double q_next = step_closed_form(coeffs, state, history, q0, n, f_next);
        if (fractional) {
            rev_increments[n_steps - 1 - n] = q_next - state.q;
        }
        state = newmark_update(coeffs, state, q_next);
        if (!std::isfinite(state.q) || !std::isfinite(state.qdot) || !std::isfinite(state.qddot)) {
            throw NonFiniteStateError(n + 1, "non-finite state in fractional oscillator");
        }
        rec.q[n + 1] = state.q;
        rec.qdot[n + 1] = state.qdot;
        rec.qddot[n + 1] = state.qddot;
    }
    return rec;
}

double steady_amplitude(const TrajectoryRecord& record, double steady_fraction) {
    if (!(steady_fraction > 0.0 && steady_fraction <= 1.0)) {
        throw ArgumentError("steady-state fraction must lie in (0, 1]");
    }
    const std::size_t n = record.q.size();
    const auto window = static_cast<std::size_t>(
        std::ceil(steady_fraction * static_cast<double>(record.grid.n_steps())));
    const std::size_t first = n - 1 - std::min(window, n - 1);
    double amp = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        amp = std::max(amp, std::abs(record.q[i]));
    }
    return amp;
}

double harmonic_amplitude(const TrajectoryRecord& record, double steady_fraction) {
    if (!(steady_fraction > 0.0 && steady_fraction <= 1.0)) {
        throw ArgumentError("steady-state fraction must lie in (0, 1]");
    }
    if (record.excitation.kind != Excitation::Kind::HarmonicBase) {
        throw ArgumentError("harmonic_amplitude needs a harmonic excitation");
    }
    const double w = record.excitation.omega_b;
    const double dt = record.grid.dt();
    const double period = 2.0 * std::numbers::pi / w;
    const double periods = std::floor(steady_fraction * record.grid.t_end() / period);
    if (periods < 1.0) {
        throw ArgumentError("steady window holds no complete forcing period");
    }
    // Trapezoid sums over the integer-period span; the partial cell at the
    // left edge is linearly interpolated so the span length is exact.
    const double t_end = record.grid.t_end();
    const double t_lo = t_end - periods * period;
    const std::size_t n = record.q.size();
    const auto first = static_cast<std::size_t>(std::ceil(t_lo / dt - 1e-9));
    auto t_of = [&](std::size_t i) { return record.grid.t(i); };
    double sc = 0.0;
    double ss = 0.0;
    auto add = [&](double t, double q, double weight) {
        sc += weight * q * std::cos(w * t);
        ss += weight * q * std::sin(w * t);
    };
    if (first > 0) {
        const double frac = (t_of(first) - t_lo) / dt;
        const double q_lo = record.q[first] + frac * (record.q[first - 1] - record.q[first]);
        add(t_lo, q_lo, 0.5 * frac * dt);
        add(t_of(first), record.q[first], 0.5 * frac * dt);
    }
    for (std::size_t i = first; i + 1 < n; ++i) {
        add(t_of(i), record.q[i], 0.5 * dt);
        add(t_of(i + 1), record.q[i + 1], 0.5 * dt);
    }
    const double span = t_end - t_lo;
    return 2.0 / span * std::hypot(sc, ss);
}

std::vector<SweepPoint> amplitude_sweep(const OscillatorParams& params,
                                        std::span<const double> omegas, double a_b,
                                        const TimeGrid& grid, const SweepOptions& options,
                                        const NewmarkParams& newmark) {
    params.validate();
    newmark.validate();
    const double window = options.steady_fraction * grid.t_end();
    for (double w : omegas) {
        if (!(w > 0.0)) {
            throw ArgumentError("sweep frequencies must be positive");
        }
        const double period = 2.0 * std::numbers::pi / w;
        if (window < options.min_periods * period) {
            throw ArgumentError("steady-state window shorter than the required forcing periods");
        }
    }

    std::vector<SweepPoint> out(omegas.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= omegas.size()) return;
            try {
                const auto rec =
                    integrate(params, Excitation::harmonic_base(a_b, omegas[i]), 0.0, 0.0, grid,
                              newmark);
                out[i] = {omegas[i], steady_amplitude(rec, options.steady_fraction),
                          harmonic_amplitude(rec, options.steady_fraction)};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    unsigned n_threads = options.threads != 0 ? options.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, omegas.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

}  // namespace fracbeam
