#include "pdmlab/invariants.hpp"

#include <cmath>

namespace pdmlab {

namespace {

void require_axis(int axis) {
    if (axis != 0 && axis != 1)
        throw InputError("axis must be 0 or 1");
}

} // namespace

std::complex<double> q_complex_linear(const State& s, double omega_j, int axis) {
    require_axis(axis);
    return {s.v[axis], omega_j * s.x[axis]};
}

std::complex<double> q_complex_shifted(const State& s, double alpha_j, double eta_j,
                                       int axis) {
    require_axis(axis);
    return {s.v[axis], alpha_j * (s.x[axis] + eta_j)};
}

std::complex<double> q_complex_isotonic(const State& s, double omega_j, double beta_j,
                                        int axis) {
    require_axis(axis);
    const double q = s.x[axis];
    const double qt = s.v[axis];
    if (q == 0.0)
        throw SingularityError("complex witness undefined at q_j = 0");
    return {qt * qt - omega_j * omega_j * q * q + beta_j / (q * q),
            2.0 * omega_j * q * qt};
}

std::complex<double> q_jk(std::complex<double> Qj, std::complex<double> Qk, int n_j,
                          int n_k) {
    if (n_j < 0 || n_k < 0)
        throw UnsupportedError("frequency multipliers must be non-negative integers");
    if ((Qj == 0.0 && n_k > 0) || (Qk == 0.0 && n_j > 0))
        throw SingularityError("zero base in the product of complex witnesses");
    std::complex<double> out{1.0, 0.0};
    for (int i = 0; i < n_k; ++i)
        out *= Qj;
    const std::complex<double> ck = std::conj(Qk);
    for (int i = 0; i < n_j; ++i)
        out *= ck;
    return out;
}

std::pair<double, double> fundamental_integrals(const State& s, const ReferenceModel& ref) {
    const Potential& p = ref.potential;
    auto one = [&](int axis) {
        const double q = s.x[axis];
        const double qt = s.v[axis];
        const double w = p.omega(axis);
        switch (p.family) {
        case Potential::Family::harmonic:
            return qt * qt + w * w * q * q;
        case Potential::Family::shifted_harmonic: {
            const double u = q + p.shift[axis];
            return qt * qt + w * w * u * u;
        }
        case Potential::Family::isotonic: {
            if (q == 0.0)
                throw SingularityError("fundamental integral undefined at q_j = 0");
            return qt * qt + w * w * q * q + p.isotonic_strength(axis) / (q * q);
        }
        default:
            throw UnsupportedError("fundamental integrals are defined for unit-mass "
                                   "reference families only");
        }
    };
    return {one(0), one(1)};
}

std::pair<double, double> isotropic_integrals(const State& s, double omega0, Vec2 shifts) {
    const double u1 = s.x.x1 + shifts.x1;
    const double u2 = s.x.x2 + shifts.x2;
    const double i3 = s.v.x1 * s.v.x2 + omega0 * omega0 * u1 * u2;
    const double i4 = omega0 * (u1 * s.v.x2 - u2 * s.v.x1);
    return {i3, i4};
}

std::vector<double> unwrap_phases(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    if (wrapped.empty())
        return out;
    constexpr double two_pi = 6.283185307179586476925286766559;
    out[0] = wrapped[0];
    double offset = 0.0;
    for (std::size_t i = 1; i < wrapped.size(); ++i) {
        double step = wrapped[i] - wrapped[i - 1];
        while (step > 0.5 * two_pi) {
            step -= two_pi;
            offset -= two_pi;
        }
        while (step < -0.5 * two_pi) {
            step += two_pi;
            offset += two_pi;
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

double energy_closed_form_radial(double omega, double sigma, double beta, Vec2 amplitude) {
    const double a2 = amplitude.norm2();
    const double denom = 1.0 + sigma * beta * a2;
    if (denom <= 0.0)
        throw DomainError("energy expression undefined: 1 + sigma beta |A|^2 <= 0");
    return 0.5 * omega * omega * a2 / denom;
}

double energy_closed_form_constant(double omega, double xi, Vec2 amplitude) {
    const double denom = 1.0 - xi * xi * amplitude.norm2();
    if (denom == 0.0)
        throw DomainError("energy expression undefined: vanishing denominator");
    return omega * omega * xi * xi / denom;
}

double isotonic_frequency_sq(IsotonicFrequencyCase c, double omega1, double omega2,
                             double lambda, double a1, double a2) {
    if (c == IsotonicFrequencyCase::automatic) {
        if (omega1 == omega2)
            c = IsotonicFrequencyCase::isotropic;
        else if (a1 == a2)
            c = IsotonicFrequencyCase::equal_amplitude;
        else
            c = IsotonicFrequencyCase::anisotropic;
    }
    const double s = a1 + a2;
    switch (c) {
    case IsotonicFrequencyCase::isotropic:
        return omega1 * omega1 + lambda * lambda * s * s;
    case IsotonicFrequencyCase::anisotropic: {
        if (s == 0.0)
            throw DomainError("frequency expression undefined: A1 + A2 = 0");
        return (a1 * omega1 * omega1 + a2 * omega2 * omega2 + lambda * lambda * s * s * s) / s;
    }
    case IsotonicFrequencyCase::equal_amplitude: {
        const double denom = 16.0 * a1 * a1 * lambda * lambda;
        if (denom == 0.0)
            throw DomainError("frequency expression undefined: vanishing 16 A^2 lambda^2");
        return (omega1 * omega1 + omega2 * omega2) / denom;
    }
    case IsotonicFrequencyCase::automatic:
        break;
    }
    throw InternalError("unhandled frequency case");
}

double energy_closed_form_isotonic(double omega1, double omega2, double lambda, double a1,
                                   double a2, double big_omega, int sign) {
    if (sign != 1 && sign != -1)
        throw ParameterError("sign selector must be +1 or -1");
    const double s = a1 + a2;
    const double shifted = big_omega + static_cast<double>(sign) * lambda * s;
    if (shifted == 0.0)
        throw DomainError("energy expression undefined: vanishing shifted frequency");
    return 0.5 * ((omega1 * omega1 * a1 + omega2 * omega2 * a2) / shifted - shifted * s);
}

} // namespace pdmlab
