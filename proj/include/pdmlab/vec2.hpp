#ifndef PDMLAB_VEC2_HPP
#define PDMLAB_VEC2_HPP

#include <cmath>

namespace pdmlab {

// Plane vector used for positions, velocities and accelerations alike.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double a, double b) : x1(a), x2(b) {}

    constexpr double operator[](int axis) const { return axis == 0 ? x1 : x2; }
    double& operator[](int axis) { return axis == 0 ? x1 : x2; }

    constexpr Vec2 operator+(Vec2 o) const { return {x1 + o.x1, x2 + o.x2}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x1 - o.x1, x2 - o.x2}; }
    constexpr Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
    constexpr Vec2 operator-() const { return {-x1, -x2}; }

    constexpr double dot(Vec2 o) const { return x1 * o.x1 + x2 * o.x2; }
    constexpr double norm2() const { return x1 * x1 + x2 * x2; }
    double norm() const { return std::hypot(x1, x2); }

    bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

using Point2 = Vec2;

} // namespace pdmlab

#endif
