#include "pdmlab/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "pdmlab/quadrature.hpp"

namespace pdmlab {

TransformSpec TransformSpec::identity() {
    TransformSpec ts;
    ts.family = Family::identity;
    ts.mass = MassFunction::constant();
    return ts;
}

TransformSpec TransformSpec::radial(const MassFunction& m) {
    if (m.center.x1 != 0.0 || m.center.x2 != 0.0)
        throw ParameterError("radial transform requires a mass centered at the origin");
    TransformSpec ts;
    ts.family = Family::radial;
    ts.mass = m;
    return ts;
}

TransformSpec TransformSpec::shifted_radial(const MassFunction& m) {
    TransformSpec ts;
    ts.family = Family::shifted_radial;
    ts.mass = m;
    return ts;
}

TransformSpec TransformSpec::offset_radial(const MassFunction& m, Vec2 eta) {
    TransformSpec ts = radial(m);
    ts.family = Family::offset_radial;
    ts.offset = eta;
    return ts;
}

TransformSpec TransformSpec::constant_ratio(const MassFunction& m, double xi) {
    if (m.center.x1 != 0.0 || m.center.x2 != 0.0)
        throw ParameterError("constant_ratio transform requires a mass centered at the origin");
    if (!(xi > 0.0))
        throw ParameterError("constant_ratio transform requires xi > 0");
    TransformSpec ts;
    ts.family = Family::constant_ratio;
    ts.mass = m;
    ts.xi = xi;
    return ts;
}

namespace {

// f = 1 + r m'/(4m) written in the cancellation-free form 1 - sigma beta r^2 m / 2.
double radial_f(const MassFunction& m, Vec2 x) {
    if (m.is_constant())
        return 1.0;
    const double rs2 = (x - m.center).norm2();
    return 1.0 - 0.5 * m.sigma * m.beta * rs2 * m.value(x);
}

} // namespace

double f_factor(const TransformSpec& ts, Vec2 x) {
    switch (ts.family) {
    case TransformSpec::Family::identity:
        return 1.0;
    case TransformSpec::Family::radial:
    case TransformSpec::Family::offset_radial:
    case TransformSpec::Family::shifted_radial:
        return radial_f(ts.mass, x);
    case TransformSpec::Family::constant_ratio: {
        // xi m'/(4m) = -sigma xi beta r m / 2
        const double mv = ts.mass.value(x);
        const double r = x.norm();
        return -0.5 * ts.mass.sigma * ts.xi * ts.mass.beta * r * mv;
    }
    }
    throw InternalError("unhandled transform family");
}

Point2 point_map(const TransformSpec& ts, Vec2 x) {
    switch (ts.family) {
    case TransformSpec::Family::identity:
        return x;
    case TransformSpec::Family::radial:
        return x * std::sqrt(ts.mass.value(x));
    case TransformSpec::Family::shifted_radial:
        return (x - ts.mass.center) * std::sqrt(ts.mass.value(x));
    case TransformSpec::Family::offset_radial:
        return x * std::sqrt(ts.mass.value(x)) - ts.offset;
    case TransformSpec::Family::constant_ratio: {
        const double s = ts.xi / std::sqrt(2.0) * std::sqrt(ts.mass.value(x));
        return {s, s};
    }
    }
    throw InternalError("unhandled transform family");
}

Vec2 velocity_map(const TransformSpec& ts, Vec2 x, Vec2 v) {
    if (ts.family == TransformSpec::Family::identity)
        return v;
    return v * std::sqrt(ts.mass.value(x));
}

namespace {

// Solves q = u sqrt(m(|u|)) for u given q: |q|^2 = r^2/(1 + sigma beta r^2)
// gives 1/m = 1 - sigma beta |q|^2, so u = q / sqrt(1 - sigma beta |q|^2).
Vec2 radial_inverse(const MassFunction& m, Point2 q) {
    if (!q.finite())
        throw InputError("non-finite coordinates");
    if (m.is_constant())
        return q;
    const double inv_m = 1.0 - m.sigma * m.beta * q.norm2();
    if (inv_m <= 0.0)
        throw DomainError("point outside the image of the map: beta*|q|^2 >= 1");
    return q * (1.0 / std::sqrt(inv_m));
}

} // namespace

Point2 inverse_point_map(const TransformSpec& ts, Point2 q) {
    switch (ts.family) {
    case TransformSpec::Family::identity:
        return q;
    case TransformSpec::Family::radial:
        return radial_inverse(ts.mass, q);
    case TransformSpec::Family::shifted_radial:
        return radial_inverse(ts.mass, q) + ts.mass.center;
    case TransformSpec::Family::offset_radial:
        return radial_inverse(ts.mass, q + ts.offset);
    case TransformSpec::Family::constant_ratio:
        throw UnsupportedError(
            "constant_ratio map collapses the plane onto a ray and has no inverse");
    }
    throw InternalError("unhandled transform family");
}

std::vector<double> tau_of_t(const TransformSpec& ts, const Trajectory& tr) {
    std::vector<double> f(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        f[i] = f_factor(ts, tr.x[i]);
        if (f[i] < 0.0)
            throw MonotonicityError("time factor f is negative along the trajectory");
    }
    std::vector<double> tau = cumulative_integral(tr.t, f);
    for (std::size_t i = 1; i < tau.size(); ++i)
        if (!(tau[i] > tau[i - 1]))
            throw MonotonicityError("rescaled time failed to increase strictly");
    return tau;
}

MappedTrajectory map_trajectory(const TransformSpec& ts, const Trajectory& tr) {
    MappedTrajectory out;
    out.t = tr.t;
    out.tau = tau_of_t(ts, tr);
    out.q.reserve(tr.size());
    out.qt.reserve(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out.q.push_back(point_map(ts, tr.x[i]));
        out.qt.push_back(velocity_map(ts, tr.x[i], tr.v[i]));
    }
    return out;
}

namespace {

// Analytic diagonal Jacobian entries d_j q_j of the pointwise map, written
// without the r = 0 removable singularity.
Vec2 diagonal_jacobian(const TransformSpec& ts, Vec2 x) {
    const MassFunction& m = ts.mass;
    switch (ts.family) {
    case TransformSpec::Family::identity:
        return {1.0, 1.0};
    case TransformSpec::Family::radial:
    case TransformSpec::Family::offset_radial: {
        const double mv = m.value(x);
        const double sm = std::sqrt(mv);
        // d_j (x_j sqrt(m)) = sqrt(m) (1 - sigma beta x_j^2 m)
        return {sm * (1.0 - m.sigma * m.beta * x.x1 * x.x1 * mv),
                sm * (1.0 - m.sigma * m.beta * x.x2 * x.x2 * mv)};
    }
    case TransformSpec::Family::shifted_radial: {
        const Vec2 u = x - m.center;
        const double mv = m.value(x);
        const double sm = std::sqrt(mv);
        return {sm * (1.0 - m.sigma * m.beta * u.x1 * u.x1 * mv),
                sm * (1.0 - m.sigma * m.beta * u.x2 * u.x2 * mv)};
    }
    case TransformSpec::Family::constant_ratio: {
        const double mv = m.value(x);
        const double xi_j = ts.xi / std::sqrt(2.0);
        // d_j (xi_j sqrt(m)) = -sigma beta xi_j x_j m^{3/2}
        const double c = -m.sigma * m.beta * xi_j * mv * std::sqrt(mv);
        return {c * x.x1, c * x.x2};
    }
    }
    throw InternalError("unhandled transform family");
}

} // namespace

double invariance_residual(const TransformSpec& ts, const std::vector<Point2>& grid,
                           const std::function<double(Vec2)>& f_override) {
    double worst = 0.0;
    for (Vec2 x : grid) {
        const Vec2 dq = diagonal_jacobian(ts, x);
        const double mv = ts.mass.value(x);
        const double f = f_override ? f_override(x) : f_factor(ts, x);
        double res;
        if (ts.family == TransformSpec::Family::constant_ratio)
            res = std::abs(dq.x1 * dq.x1 + dq.x2 * dq.x2 - 2.0 * mv * f * f);
        else
            res = std::abs(dq.x1 + dq.x2 - 2.0 * std::sqrt(mv) * f);
        worst = std::max(worst, res);
    }
    return worst;
}

double invariance_residual(const TransformSpec& ts, const std::vector<Point2>& grid) {
    return invariance_residual(ts, grid, nullptr);
}

} // namespace pdmlab
