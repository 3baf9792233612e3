#ifndef PDMLAB_ORACLES_HPP
#define PDMLAB_ORACLES_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "pdmlab/dynamics.hpp"
#include "pdmlab/vec2.hpp"

namespace pdmlab {

// An exact trajectory candidate with analytic derivatives. The velocity and
// acceleration come from differentiating the position formula directly, never
// from the equations of motion, so residual measurements stay independent of
// the dynamics they test.
struct ClosedForm {
    std::function<Vec2(double)> position;
    std::function<Vec2(double)> velocity;
    std::function<Vec2(double)> acceleration;
    double t_min = 0.0;
    double t_max = 0.0; // t_max <= t_min means unrestricted
    double period = 0.0;
    std::string label;

    bool unrestricted() const { return !(t_max > t_min); }
    bool contains(double t0, double t1) const {
        return unrestricted() || (t0 >= t_min && t1 <= t_max);
    }
    State state(double t) const { return {t, position(t), velocity(t)}; }
    Trajectory sample(double t0, double t1, std::size_t n) const;
};

// Per-axis cosines x_j = A_j cos(w_j t + phi_j) - offset_j.
ClosedForm cosine_solution(Vec2 amplitude, Vec2 freq, Vec2 phase, Vec2 offset,
                           std::string label);

// The deformed-oscillator solutions, common frequency
// W^2 = w^2 / (1 + sigma beta |A|^2):
ClosedForm pdm_radial_solution(double omega, double sigma, double beta, Vec2 amplitude,
                               double phase);                                    // x = A cos
ClosedForm pdm_shifted_solution(double omega, double sigma, double beta, Vec2 gamma,
                                Vec2 amplitude, double phase);      // x = A cos - gamma
// Constant-potential family, W^2 = -sigma beta w^2 xi^2 / (1 + sigma beta |A|^2).
ClosedForm pdm_constant_solution(double omega, double xi, double sigma, double beta,
                                 Vec2 amplitude, double phase);

double pdm_radial_frequency_sq(double omega, double sigma, double beta, Vec2 amplitude);
double pdm_constant_frequency_sq(double omega, double xi, double sigma, double beta,
                                 Vec2 amplitude);

// Unit-mass references.
ClosedForm reference_linear(Vec2 amplitude, Vec2 freq, Vec2 phase);
ClosedForm reference_shifted(Vec2 amplitude, Vec2 alpha, Vec2 phase, Vec2 eta);

// Inverse-square reference, energy-parameterized form
//   q_j^2 = E_j / w_j^2 + C_j sin(2 w_j tau + delta_j),
//   C_j = sqrt(E_j^2 - w_j^2 b_j) / w_j^2,
// globally valid for b_j > 0; E_j is the exact axis energy.
ClosedForm reference_isotonic_energy(Vec2 omega, Vec2 strength, Vec2 energy, Vec2 delta);

// Inverse-square reference as printed: q_j = sqrt((A_j / w_j) sin(w_j tau + delta_j))
// with strengths pinned to b_j = -A_j^2. Valid only where every sine is
// positive; kept verbatim as a diagnostic subject.
ClosedForm reference_isotonic_printed(Vec2 amplitude, Vec2 omega, Vec2 delta);

// Deformed inverse-square solution as printed:
// x_j = sqrt((A_j / W) sin(W t + delta_j)) with a caller-selected W.
ClosedForm pdm_isotonic_printed(Vec2 amplitude, double big_omega, Vec2 delta);

// Max-norm residual of the equations of motion along the closed form:
// max over n uniform samples of |form acceleration - accel(t, x, v)|.
double ode_residual(const ClosedForm& form, const Accel& accel, double t0, double t1,
                    std::size_t n);

// Integrates from the closed form's state at t0 and reports the worst
// position disagreement over the shared samples.
double oracle_vs_integration(const ClosedForm& form, const Accel& accel, double t0,
                             double t1, const IntegratorConfig& cfg);

double max_position_deviation(const Trajectory& tr, const ClosedForm& form);

// Cosine with amplitude and phase matched to one state:
// A_j = sqrt(q_j^2 + (qt_j/w_j)^2), phi_j = atan2(-qt_j / w_j, q_j) - w_j t.
ClosedForm fit_cosine(const State& s, Vec2 freq, std::string label);

// Five-point central-difference probes used to cross-check the analytic
// derivative members against the position formula.
Vec2 fd_velocity(const ClosedForm& form, double t, double h);
Vec2 fd_acceleration(const ClosedForm& form, double t, double h);

} // namespace pdmlab

#endif
