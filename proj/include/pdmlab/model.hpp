#ifndef PDMLAB_MODEL_HPP
#define PDMLAB_MODEL_HPP

#include <string>

#include "pdmlab/errors.hpp"
#include "pdmlab/vec2.hpp"

namespace pdmlab {

// m(r_s) = 1/(1 + sigma*beta*r_s^2) with r_s the distance from `center`,
// or identically 1 for the constant family. For sigma = -1 the function is
// only defined on beta*r_s^2 < 1; evaluation outside is a hard error, never
// a clamp, so that conservation measurements stay trustworthy.
struct MassFunction {
    enum class Family { constant, inverse_quadratic };

    Family family = Family::constant;
    double sigma = +1.0; // +1 or -1
    double beta = 0.0;   // >= 0, units 1/length^2
    Vec2 center{0.0, 0.0};

    static MassFunction constant();
    static MassFunction inverse_quadratic(double sigma, double beta, Vec2 center = {0.0, 0.0});

    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;

    // m as a function of the shifted radius alone.
    double value_at_radius(double rs) const;
    // dm/dr at the shifted radius: -2*sigma*beta*r*m^2.
    double radial_derivative(double rs) const;

    bool in_domain(Vec2 x) const;
    bool is_constant() const { return family == Family::constant || beta == 0.0; }
};

double mass_value(const MassFunction& m, Vec2 x);
Vec2 mass_gradient(const MassFunction& m, Vec2 x);

// Potential families. The pdm_scaled_* families include the m(r_s) factor of
// their model's MassFunction; their gradients are the full gradients of that
// product (the axis-separable form is the beta = 0 special case).
struct Potential {
    enum class Family {
        harmonic,              // 1/2 sum_j omega_j^2 q_j^2, omega_j = n_j * omega0
        shifted_harmonic,      // 1/2 sum_j alpha_j^2 (q_j + eta_j)^2
        pdm_scaled_harmonic,   // 1/2 m(r_s) omega^2 r_s^2
        pdm_scaled_constant,   // 1/2 m(r) omega^2 xi^2
        isotonic,              // 1/2 sum_j (omega_j^2 q_j^2 + beta_j / q_j^2)
        pdm_deformed_isotonic  // 1/2 [ m sum w_j^2 x_j^2 + (1/m) sum beta_j / x_j^2 ]
    };

    Family family = Family::harmonic;
    double omega0 = 1.0;
    int n1 = 1;
    int n2 = 1;
    Vec2 shift{0.0, 0.0};       // eta for shifted_harmonic
    double xi = 0.0;            // pdm_scaled_constant, xi_j = xi/sqrt(2)
    double beta1 = 0.0;         // isotonic strengths, length^4/time^2
    double beta2 = 0.0;
    MassFunction mass;          // only read by pdm_scaled_* / pdm_deformed_* families

    double omega(int axis) const { return (axis == 0 ? n1 : n2) * omega0; }
    double isotonic_strength(int axis) const { return axis == 0 ? beta1 : beta2; }

    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;

    // Axis-restricted slice V_j used by the sub-energy monitor. Separable
    // families return their genuine per-axis term. The PDM-scaled families
    // freeze the other coordinate at its current value and subtract the
    // value with coordinate j moved to the potential centre, so the
    // constant-mass limit reduces to the separable slice exactly. The
    // deformed-isotonic family keeps its j-numerator terms instead (the
    // centre would sit on the inverse-square pole).
    double axis_slice(Vec2 x, int axis) const;

    static Potential harmonic(double omega0, int n1 = 1, int n2 = 1);
    static Potential shifted_harmonic(double alpha0, Vec2 eta, int n1 = 1, int n2 = 1);
    static Potential pdm_scaled_harmonic(double omega, const MassFunction& m);
    static Potential pdm_scaled_constant(double omega, double xi, const MassFunction& m);
    static Potential isotonic(double omega1, double omega2, double beta1, double beta2);
    static Potential pdm_deformed_isotonic(double omega1, double omega2, double beta1,
                                           double beta2, const MassFunction& m);
};

double potential_value(const Potential& p, Vec2 x);
Vec2 potential_gradient(const Potential& p, Vec2 x);

// A position-dependent-mass system in (x, t) space.
struct PdmModel {
    MassFunction mass;
    Potential potential;
    std::string label;
};

// The unit-mass system in (q, tau) space.
struct ReferenceModel {
    Potential potential; // harmonic, shifted_harmonic or isotonic
    std::string label;
};

} // namespace pdmlab

#endif
