#pragma once

// Reference solutions used by the tests. Each one is derived independently of
// the library code path it checks (closed forms, brute-force scans, generic
// linear algebra), so agreement is evidence rather than tautology.

#include <vector>

namespace oracle {

/// Steady-state amplitude of q'' + E_r c D^alpha q + k q = m_b a_b w^2 sin(w t),
/// from the real/imaginary split of (i w)^alpha.
double forced_amplitude(double c, double k, double m_b, double E_r, double alpha, double a_b,
                        double w);

/// Underdamped q'' + c q' + k q = 0 with q(0) = q0, q'(0) = 0.
double damped_free_response(double q0, double c, double k, double t);

/// Caputo derivative of t^p via the Beta-function form of the convolution
/// integral, p * B(p, 1 - alpha) / Gamma(1 - alpha) * t^(p - alpha).
double caputo_power(double p, double alpha, double t);

/// Bernoulli solution of da/dT = -K1 a - K2 a^3.
double bernoulli_amplitude(double K1, double K2, double a0, double T);

/// Real roots (ascending) of c3 x^3 + c2 x^2 + c1 x + c0 as eigenvalues of the
/// companion matrix; an eigenvalue counts as real when |Im| <= imag_tol * scale.
std::vector<double> companion_real_roots(double c3, double c2, double c1, double c0,
                                         double imag_tol = 1e-7);

/// argmax of the decay-rate sensitivity c E_r w0^(a-1) [pi/2 cos(a pi/2) + ln w0 sin(a pi/2)]
/// on a uniform grid of `n` points in [0, 1].
double dense_scan_critical_alpha(double omega0, std::size_t n);

/// First root of the 4x4 clamped-free boundary determinant with tip mass M
/// (no rotary inertia), by sign scan and bisection on the Eigen determinant.
double clamped_tip_mass_beta(double M);

/// Modal integrals of the classical clamped-free mode (no tip mass), built
/// from cosh - cos - sigma (sinh - sin) and integrated by composite Simpson.
struct ModalIntegrals {
    double phi_sq, curv_sq, nonlinear, phi_int;
};
ModalIntegrals classical_mode_integrals(double beta, std::size_t panels);

/// Single Maxwell branch under a constant-rate strain ramp, by direct
/// integration of sigma' = E r - sigma / tau with RK4.
double maxwell_ramp_numeric(double E, double tau, double rate, double t, std::size_t steps);

}  // namespace oracle
