#ifndef PDMLAB_INVARIANTS_HPP
#define PDMLAB_INVARIANTS_HPP

#include <complex>
#include <utility>
#include <vector>

#include "pdmlab/dynamics.hpp"
#include "pdmlab/model.hpp"

namespace pdmlab {

// Complex witnesses of reference-space constants of motion. States are in
// reference coordinates: s.x = q, s.v = qt.

// Q_j = qt_j + i w_j q_j; evolves as dQ/dtau = i w_j Q_j, so |Q_j| is conserved.
std::complex<double> q_complex_linear(const State& s, double omega_j, int axis);

// Q_j = qt_j + i a_j (q_j + eta_j), the shifted-center analogue.
std::complex<double> q_complex_shifted(const State& s, double alpha_j, double eta_j, int axis);

// Q_j = (qt_j^2 - w_j^2 q_j^2 + b_j / q_j^2) + 2 i w_j q_j qt_j for the
// inverse-square families; dQ/dtau = 2 i w_j Q_j.
std::complex<double> q_complex_isotonic(const State& s, double omega_j, double beta_j,
                                        int axis);

// Q_j^{n_k} * conj(Q_k)^{n_j} by repeated multiplication. Exponents are the
// integer frequency multipliers (w_j = n_j w0); they must be >= 0, and a zero
// base is rejected so the result stays a meaningful constant.
std::complex<double> q_jk(std::complex<double> Qj, std::complex<double> Qk, int n_j, int n_k);

// (I1, I2) with I_j = 2 E_j in reference coordinates, dispatched on the
// reference potential family:
//   harmonic          qt_j^2 + w_j^2 q_j^2
//   shifted_harmonic  qt_j^2 + a_j^2 (q_j + eta_j)^2
//   isotonic          qt_j^2 + w_j^2 q_j^2 + b_j / q_j^2
std::pair<double, double> fundamental_integrals(const State& s, const ReferenceModel& ref);

// (I3, I4) = (Re, Im) of Q_1 conj(Q_2) for equal axis frequencies:
//   I3 = qt1 qt2 + w0^2 (q1+s1)(q2+s2),  I4 = w0 [(q1+s1) qt2 - (q2+s2) qt1].
std::pair<double, double> isotropic_integrals(const State& s, double omega0, Vec2 shifts);

// Nearest-branch phase continuation: shifts each angle by a multiple of 2*pi
// so consecutive entries differ by less than pi.
std::vector<double> unwrap_phases(const std::vector<double>& wrapped);

// Closed-form total energies, kept verbatim so disagreements with measured
// trajectory energy surface as diagnostics instead of being absorbed.

// (1/2) w^2 (A1^2+A2^2) / (1 + sigma beta (A1^2+A2^2)); equals the measured
// total energy at the turning state for the radially scaled oscillators.
double energy_closed_form_radial(double omega, double sigma, double beta, Vec2 amplitude);

// w^2 xi^2 / (1 - xi^2 (A1^2+A2^2)), exactly as printed; only an exactly
// vanishing denominator is an error, a negative one yields the printed
// (negative) value so the discrepancy report can show it.
double energy_closed_form_constant(double omega, double xi, Vec2 amplitude);

// Frequency-squared of the deformed inverse-square family, one row per
// printed case: equal axis frequencies, distinct frequencies with distinct
// amplitudes, distinct frequencies with equal amplitudes.
enum class IsotonicFrequencyCase { automatic, isotropic, anisotropic, equal_amplitude };

double isotonic_frequency_sq(IsotonicFrequencyCase c, double omega1, double omega2,
                             double lambda, double a1, double a2);

// (1/2) { (w1^2 A1 + w2^2 A2) / (W + s lambda (A1+A2))
//         - [W + s lambda (A1+A2)] (A1+A2) },  W = sqrt of the row value;
// s is the printed plus-or-minus branch, passed explicitly as +1 or -1.
double energy_closed_form_isotonic(double omega1, double omega2, double lambda, double a1,
                                   double a2, double big_omega, int sign);

} // namespace pdmlab

#endif
