#pragma once

// Direct time integration of the linearized single-mode oscillator
//
//   q'' + E_r c_l D^alpha q + k_l q = -m_b v_b''
//
// with an L1 discretization of the fractional term and Newmark-beta updates
// for velocity and acceleration.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracbeam/beammodel.hpp"
#include "fracbeam/fracops.hpp"

namespace fracbeam {

enum class Variant {
    RiemannLiouville,
    Caputo,
    ClassicalKV,  ///< integer first derivative in place of D^alpha
};

struct OscillatorParams {
    double c_l = 1.24;
    double k_l = 1.24;
    double m_b = -0.042;
    double E_r = 1.0;
    FracOrder alpha{0.5};
    Variant variant = Variant::RiemannLiouville;

    /// c_l = C_l/M, k_l = K_l/M, m_b = M_b/M.
    static OscillatorParams from_modal(const ModalModel& model, double E_r, FracOrder alpha,
                                       Variant variant);
    void validate() const;
};

/// Standard Newmark parameters (average acceleration by default).
struct NewmarkParams {
    double beta = 0.25;
    double gamma = 0.5;

    void validate() const;
};

/// Base motion v_b(t) = a_b sin(omega_b t); Free means v_b = 0.
struct Excitation {
    enum class Kind { Free, HarmonicBase };
    Kind kind = Kind::Free;
    double a_b = 0.0;
    double omega_b = 0.0;

    static Excitation free() { return {}; }
    static Excitation harmonic_base(double a_b, double omega_b);

    /// Right-hand side -m_b v_b''(t).
    [[nodiscard]] double forcing(double m_b, double t) const noexcept;
    void validate() const;
};

struct TrajectoryRecord {
    TimeGrid grid;
    std::vector<double> q;
    std::vector<double> qdot;
    std::vector<double> qddot;
    OscillatorParams params;
    Excitation excitation;
};

/// Kinematic state at t_n.
struct StepState {
    double q = 0.0;
    double qdot = 0.0;
    double qddot = 0.0;
};

/// Precomputed per-run constants of the closed-form step.
class StepCoefficients {
public:
    StepCoefficients(const OscillatorParams& params, const NewmarkParams& newmark, double dt);

    [[nodiscard]] double a1() const noexcept { return a_[0]; }
    [[nodiscard]] double a2() const noexcept { return a_[1]; }
    [[nodiscard]] double a3() const noexcept { return a_[2]; }
    [[nodiscard]] double a4() const noexcept { return a_[3]; }
    [[nodiscard]] double a5() const noexcept { return a_[4]; }
    [[nodiscard]] double a6() const noexcept { return a_[5]; }
    /// E* = E_r c_l / (dt^alpha Gamma(2 - alpha)); zero for ClassicalKV.
    [[nodiscard]] double e_star() const noexcept { return e_star_; }

    [[nodiscard]] const OscillatorParams& params() const noexcept { return params_; }

private:
    OscillatorParams params_;
    double a_[6];
    double e_star_;
};

/// One implicit step: returns q_{n+1}.
///
/// `history_sum` is the L1 memory term H_{n+1} = sum_{j=1}^{n} b_j (q_{n+1-j} - q_{n-j})
/// and `step_index` is n. The Riemann-Liouville variant adds the initial-value
/// term q0 (1 - alpha) / (n+1)^alpha; the Caputo variant omits it. ClassicalKV
/// ignores `history_sum` and `q0`.
[[nodiscard]] double step_closed_form(const StepCoefficients& coeffs, const StepState& state,
                                      double history_sum, double q0, std::size_t step_index,
                                      double forcing_next);

/// Newmark velocity/acceleration update given q_{n+1}.
[[nodiscard]] StepState newmark_update(const StepCoefficients& coeffs, const StepState& state,
                                       double q_next);

/// Full trajectory on `grid`. Throws NonFiniteStateError on NaN/Inf.
[[nodiscard]] TrajectoryRecord integrate(const OscillatorParams& params,
                                         const Excitation& excitation, double q0, double qdot0,
                                         const TimeGrid& grid, const NewmarkParams& newmark = {});

struct SweepPoint {
    double omega_b = 0.0;
    double amp_max = 0.0;
    double amp_harmonic = 0.0;
};

struct SweepOptions {
    /// Fraction of the run, at the end, treated as steady state.
    double steady_fraction = 0.2;
    /// Minimum number of forcing periods the steady window must span.
    double min_periods = 1.0;
    /// Worker threads; 0 picks hardware_concurrency.
    unsigned threads = 0;
};

/// Max |q| over the steady-state window of a trajectory.
[[nodiscard]] double steady_amplitude(const TrajectoryRecord& record, double steady_fraction);

/// Amplitude of the component at the forcing frequency, by projection onto
/// cos/sin over the whole forcing periods that end at t_end inside the
/// steady window. Free transients at other frequencies largely cancel.
/// Needs a harmonic excitation and at least one period in the window.
[[nodiscard]] double harmonic_amplitude(const TrajectoryRecord& record, double steady_fraction);

/// Forced response sweep from rest over `omegas`.
[[nodiscard]] std::vector<SweepPoint> amplitude_sweep(const OscillatorParams& params,
                                                      std::span<const double> omegas, double a_b,
                                                      const TimeGrid& grid,
                                                      const SweepOptions& options = {},
                                                      const NewmarkParams& newmark = {});

/// `count` equally spaced points covering [lo, hi].
[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace fracbeam
