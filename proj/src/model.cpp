#include "pdmlab/model.hpp"

#include <cmath>

namespace pdmlab {

const char* errc_name(errc c) {
    switch (c) {
    case errc::domain: return "domain";
    case errc::input: return "input";
    case errc::lookup: return "lookup";
    case errc::parameter: return "parameter";
    case errc::singularity: return "singularity";
    case errc::monotonicity: return "monotonicity";
    case errc::unsupported: return "unsupported";
    case errc::parse: return "parse";
    case errc::validation: return "validation";
    case errc::truncated: return "truncated";
    case errc::step_limit: return "step_limit";
    case errc::io: return "io";
    case errc::internal: return "internal";
    }
    return "unknown";
}

namespace {

void require_finite(Vec2 x) {
    if (!x.finite())
        throw InputError("non-finite coordinates");
}

} // namespace

MassFunction MassFunction::constant() { return MassFunction{}; }

MassFunction MassFunction::inverse_quadratic(double sigma, double beta, Vec2 center) {
    if (sigma != 1.0 && sigma != -1.0)
        throw ParameterError("mass sign must be +1 or -1");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ParameterError("mass deformation beta must be finite and >= 0");
    if (!center.finite())
        throw ParameterError("mass center must be finite");
    MassFunction m;
    m.family = Family::inverse_quadratic;
    m.sigma = sigma;
    m.beta = beta;
    m.center = center;
    return m;
}

bool MassFunction::in_domain(Vec2 x) const {
    if (!x.finite())
        return false;
    if (family == Family::constant || sigma > 0.0 || beta == 0.0)
        return true;
    return beta * (x - center).norm2() < 1.0;
}

double MassFunction::value(Vec2 x) const {
    require_finite(x);
    if (family == Family::constant)
        return 1.0;
    const double rs2 = (x - center).norm2();
    const double denom = 1.0 + sigma * beta * rs2;
    if (denom <= 0.0)
        throw DomainError("mass undefined: beta*r^2 >= 1 on the sigma=-1 branch");
    return 1.0 / denom;
}

Vec2 MassFunction::gradient(Vec2 x) const {
    require_finite(x);
    if (family == Family::constant)
        return {0.0, 0.0};
    const double m = value(x);
    return (x - center) * (-2.0 * sigma * beta * m * m);
}

double MassFunction::value_at_radius(double rs) const {
    if (family == Family::constant)
        return 1.0;
    const double denom = 1.0 + sigma * beta * rs * rs;
    if (denom <= 0.0)
        throw DomainError("mass undefined: beta*r^2 >= 1 on the sigma=-1 branch");
    return 1.0 / denom;
}

double MassFunction::radial_derivative(double rs) const {
    if (family == Family::constant)
        return 0.0;
    const double m = value_at_radius(rs);
    return -2.0 * sigma * beta * rs * m * m;
}

double mass_value(const MassFunction& m, Vec2 x) { return m.value(x); }
Vec2 mass_gradient(const MassFunction& m, Vec2 x) { return m.gradient(x); }

Potential Potential::harmonic(double omega0, int n1, int n2) {
    Potential p;
    p.family = Family::harmonic;
    p.omega0 = omega0;
    p.n1 = n1;
    p.n2 = n2;
    return p;
}

Potential Potential::shifted_harmonic(double alpha0, Vec2 eta, int n1, int n2) {
    Potential p;
    p.family = Family::shifted_harmonic;
    p.omega0 = alpha0;
    p.n1 = n1;
    p.n2 = n2;
    p.shift = eta;
    return p;
}

Potential Potential::pdm_scaled_harmonic(double omega, const MassFunction& m) {
    Potential p;
    p.family = Family::pdm_scaled_harmonic;
    p.omega0 = omega;
    p.mass = m;
    return p;
}

Potential Potential::pdm_scaled_constant(double omega, double xi, const MassFunction& m) {
    Potential p;
    p.family = Family::pdm_scaled_constant;
    p.omega0 = omega;
    p.xi = xi;
    p.mass = m;
    return p;
}

Potential Potential::isotonic(double omega1, double omega2, double beta1, double beta2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0))
        throw ParameterError("isotonic frequencies must be positive");
    if (beta1 < 0.0 || beta2 < 0.0)
        throw ParameterError("isotonic strengths must be >= 0");
    Potential p;
    p.family = Family::isotonic;
    p.omega0 = omega1;
    p.n1 = 1;
    const double ratio = omega2 / omega1;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || rounded * omega1 != omega2)
        throw ParameterError("axis frequencies must be integer multiples of the base frequency");
    p.n2 = static_cast<int>(rounded);
    p.beta1 = beta1;
    p.beta2 = beta2;
    return p;
}

Potential Potential::pdm_deformed_isotonic(double omega1, double omega2, double beta1,
                                           double beta2, const MassFunction& m) {
    Potential p = isotonic(omega1, omega2, beta1, beta2);
    p.family = Family::pdm_deformed_isotonic;
    p.mass = m;
    return p;
}

namespace {

double isotonic_axis_value(double w, double b, double q) {
    if (q == 0.0)
        throw SingularityError("isotonic potential evaluated at q_j = 0");
    return 0.5 * (w * w * q * q + b / (q * q));
}

} // namespace

double Potential::value(Vec2 x) const {
    require_finite(x);
    switch (family) {
    case Family::harmonic:
        return 0.5 * (omega(0) * omega(0) * x.x1 * x.x1 + omega(1) * omega(1) * x.x2 * x.x2);
    case Family::shifted_harmonic: {
        const double u1 = x.x1 + shift.x1;
        const double u2 = x.x2 + shift.x2;
        return 0.5 * (omega(0) * omega(0) * u1 * u1 + omega(1) * omega(1) * u2 * u2);
    }
    case Family::pdm_scaled_harmonic: {
        const double rs2 = (x - mass.center).norm2();
        return 0.5 * mass.value(x) * omega0 * omega0 * rs2;
    }
    case Family::pdm_scaled_constant:
        return 0.5 * mass.value(x) * omega0 * omega0 * xi * xi;
    case Family::isotonic:
        return isotonic_axis_value(omega(0), beta1, x.x1)
             + isotonic_axis_value(omega(1), beta2, x.x2);
    case Family::pdm_deformed_isotonic: {
        if (x.x1 == 0.0 || x.x2 == 0.0)
            throw SingularityError("deformed isotonic potential evaluated at x_j = 0");
        const double m = mass.value(x);
        const double quad = 0.5 * (omega(0) * omega(0) * x.x1 * x.x1
                                 + omega(1) * omega(1) * x.x2 * x.x2);
        const double inv = 0.5 * (beta1 / (x.x1 * x.x1) + beta2 / (x.x2 * x.x2));
        return m * quad + inv / m;
    }
    }
    throw InternalError("unhandled potential family");
}

Vec2 Potential::gradient(Vec2 x) const {
    require_finite(x);
    switch (family) {
    case Family::harmonic:
        return {omega(0) * omega(0) * x.x1, omega(1) * omega(1) * x.x2};
    case Family::shifted_harmonic:
        return {omega(0) * omega(0) * (x.x1 + shift.x1),
                omega(1) * omega(1) * (x.x2 + shift.x2)};
    case Family::pdm_scaled_harmonic: {
        // d_j [ 1/2 m w^2 r^2 ] = w^2 u_j m [1 - rho] with rho = sigma beta r^2 m;
        // for the inverse-quadratic family this collapses to w^2 u_j m^2.
        const Vec2 u = x - mass.center;
        const double m = mass.value(x);
        if (mass.is_constant())
            return u * (omega0 * omega0);
        return u * (omega0 * omega0 * m * m);
    }
    case Family::pdm_scaled_constant: {
        const Vec2 gm = mass.gradient(x);
        return gm * (0.5 * omega0 * omega0 * xi * xi);
    }
    case Family::isotonic: {
        if (x.x1 == 0.0 || x.x2 == 0.0)
            throw SingularityError("isotonic potential gradient at q_j = 0");
        return {omega(0) * omega(0) * x.x1 - beta1 / (x.x1 * x.x1 * x.x1),
                omega(1) * omega(1) * x.x2 - beta2 / (x.x2 * x.x2 * x.x2)};
    }
    case Family::pdm_deformed_isotonic: {
        if (x.x1 == 0.0 || x.x2 == 0.0)
            throw SingularityError("deformed isotonic potential gradient at x_j = 0");
        const double m = mass.value(x);
        const Vec2 gm = mass.gradient(x);
        const double quad = 0.5 * (omega(0) * omega(0) * x.x1 * x.x1
                                 + omega(1) * omega(1) * x.x2 * x.x2);
        const double inv = 0.5 * (beta1 / (x.x1 * x.x1) + beta2 / (x.x2 * x.x2));
        // d(1/m) = -dm/m^2
        Vec2 g;
        for (int j = 0; j < 2; ++j) {
            const double xj = x[j];
            const double wj = omega(j);
            const double bj = isotonic_strength(j);
            g[j] = gm[j] * quad + m * wj * wj * xj
                 - gm[j] / (m * m) * inv - (1.0 / m) * bj / (xj * xj * xj);
        }
        return g;
    }
    }
    throw InternalError("unhandled potential family");
}

double Potential::axis_slice(Vec2 x, int axis) const {
    require_finite(x);
    if (axis != 0 && axis != 1)
        throw InputError("axis must be 0 or 1");
    switch (family) {
    case Family::harmonic: {
        const double w = omega(axis);
        return 0.5 * w * w * x[axis] * x[axis];
    }
    case Family::shifted_harmonic: {
        const double w = omega(axis);
        const double u = x[axis] + shift[axis];
        return 0.5 * w * w * u * u;
    }
    case Family::isotonic:
        return isotonic_axis_value(omega(axis), isotonic_strength(axis), x[axis]);
    case Family::pdm_scaled_harmonic: {
        Vec2 frozen = x;
        frozen[axis] = mass.center[axis];
        return value(x) - value(frozen);
    }
    case Family::pdm_scaled_constant: {
        Vec2 frozen = x;
        frozen[axis] = mass.center[axis];
        return value(x) - value(frozen);
    }
    case Family::pdm_deformed_isotonic: {
        if (x[axis] == 0.0)
            throw SingularityError("deformed isotonic slice at x_j = 0");
        const double m = mass.value(x);
        const double w = omega(axis);
        const double b = isotonic_strength(axis);
        return 0.5 * (m * w * w * x[axis] * x[axis] + b / (m * x[axis] * x[axis]));
    }
    }
    throw InternalError("unhandled potential family");
}

double potential_value(const Potential& p, Vec2 x) { return p.value(x); }
Vec2 potential_gradient(const Potential& p, Vec2 x) { return p.gradient(x); }

} // namespace pdmlab
