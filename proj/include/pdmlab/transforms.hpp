#ifndef PDMLAB_TRANSFORMS_HPP
#define PDMLAB_TRANSFORMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "pdmlab/dynamics.hpp"
#include "pdmlab/model.hpp"
#include "pdmlab/vec2.hpp"

namespace pdmlab {

// Pointwise realization of the coordinate/time substitution that carries a
// PDM system onto its unit-mass counterpart:
//   q = point_map(x),  qt = v * sqrt(m),  tau = integral of f dt.
// Families:
//   identity         q = x,                      f = 1
//   radial           q_j = x_j sqrt(m(r)),       f = 1 + r m'/(4m)
//   shifted_radial   q_j = (x_j - c_j) sqrt(m(r_s)), same f in r_s
//   offset_radial    q_j = x_j sqrt(m(r)) - eta_j,   radial f
//   constant_ratio   q_j = xi_j sqrt(m(r)),      f = xi m'/(4m), xi_j = xi/sqrt(2)
// The mass function supplies sigma, beta and (for shifted_radial) the
// center c; the radial formulas collapse to the identity at beta = 0.
struct TransformSpec {
    enum class Family { identity, radial, shifted_radial, offset_radial, constant_ratio };

    Family family = Family::identity;
    MassFunction mass;
    Vec2 offset{0.0, 0.0}; // eta, offset_radial only
    double xi = 0.0;       // constant_ratio only

    static TransformSpec identity();
    static TransformSpec radial(const MassFunction& m);
    static TransformSpec shifted_radial(const MassFunction& m);
    static TransformSpec offset_radial(const MassFunction& m, Vec2 eta);
    static TransformSpec constant_ratio(const MassFunction& m, double xi);
};

double f_factor(const TransformSpec& ts, Vec2 x);
Point2 point_map(const TransformSpec& ts, Vec2 x);
Vec2 velocity_map(const TransformSpec& ts, Vec2 x, Vec2 v);

// Inverts point_map. constant_ratio is not invertible (the image is a ray);
// requesting its inverse is an unsupported-operation error. Radial inverses
// require q inside the image of the map (sigma = +1 maps the plane onto
// beta*|q|^2 < 1).
Point2 inverse_point_map(const TransformSpec& ts, Point2 q);

// Rescaled time along a sampled trajectory: cumulative integral of f over
// the sample grid. f < 0 anywhere, or a non-increasing result, is a
// monotonicity error (the time substitution would not be invertible).
std::vector<double> tau_of_t(const TransformSpec& ts, const Trajectory& tr);

struct MappedTrajectory {
    std::vector<double> t;   // original times
    std::vector<double> tau; // rescaled times
    std::vector<Point2> q;
    std::vector<Vec2> qt;
    std::size_t size() const { return t.size(); }
    State state(std::size_t i) const { return {tau[i], q[i], qt[i]}; }
};

MappedTrajectory map_trajectory(const TransformSpec& ts, const Trajectory& tr);

// Max-norm defect of the defining first-order identity over a grid. The
// trace families satisfy d1q1 + d2q2 = 2 sqrt(m) f pointwise; the
// constant_ratio family instead satisfies its own defining identity
// (d1q1)^2 + (d2q2)^2 = 2 m f^2 (the trace version holds only on the
// diagonal for it). The optional override replaces the family f, which lets
// callers probe deliberately mismatched time factors.
double invariance_residual(const TransformSpec& ts, const std::vector<Point2>& grid);
double invariance_residual(const TransformSpec& ts, const std::vector<Point2>& grid,
                           const std::function<double(Vec2)>& f_override);

} // namespace pdmlab

#endif
