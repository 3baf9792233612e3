#include "pdmlab/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "pdmlab/errors.hpp"

namespace pdmlab {

namespace {

// Integral over [a, b] of (x - u)(x - v).
double moment(double a, double b, double u, double v) {
    const double pb = b * b * b / 3.0 - (u + v) * b * b / 2.0 + u * v * b;
    const double pa = a * a * a / 3.0 - (u + v) * a * a / 2.0 + u * v * a;
    return pb - pa;
}

// Integral over [a, b] of the parabola through three nodes. Shifts the
// abscissae to the middle node before evaluating the cubic primitives.
double parabola_integral(double x0, double y0, double x1, double y1, double x2, double y2,
                         double a, double b) {
    const double u0 = x0 - x1;
    const double u2 = x2 - x1;
    const double lo = a - x1;
    const double hi = b - x1;
    const double i0 = moment(lo, hi, 0.0, u2) / (u0 * (u0 - u2));
    const double i1 = moment(lo, hi, u0, u2) / (u0 * u2);
    const double i2 = moment(lo, hi, u0, 0.0) / ((u2 - u0) * u2);
    return y0 * i0 + y1 * i1 + y2 * i2;
}

} // namespace

std::vector<double> cumulative_integral(const std::vector<double>& t,
                                        const std::vector<double>& f) {
    const std::size_t n = t.size();
    if (f.size() != n)
        throw InputError("grid and values must have the same length");
    if (n == 0)
        throw InputError("cannot integrate an empty grid");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(f[i]))
            throw InputError("non-finite node in quadrature input");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw InputError("quadrature grid must be strictly increasing");
    }

    std::vector<double> out(n, 0.0);
    if (n == 1)
        return out;
    if (n == 2) {
        out[1] = 0.5 * (f[0] + f[1]) * (t[1] - t[0]);
        return out;
    }

    std::size_t k = 0;
    for (; k + 2 < n; k += 2) {
        out[k + 1] = out[k]
                   + parabola_integral(t[k], f[k], t[k + 1], f[k + 1], t[k + 2], f[k + 2],
                                       t[k], t[k + 1]);
        out[k + 2] = out[k + 1]
                   + parabola_integral(t[k], f[k], t[k + 1], f[k + 1], t[k + 2], f[k + 2],
                                       t[k + 1], t[k + 2]);
    }
    if (k + 1 < n) { // one interval left over on even-length grids
        out[k + 1] = out[k]
                   + parabola_integral(t[k - 1], f[k - 1], t[k], f[k], t[k + 1], f[k + 1],
                                       t[k], t[k + 1]);
    }
    return out;
}

double integral(const std::vector<double>& t, const std::vector<double>& f) {
    return cumulative_integral(t, f).back();
}

} // namespace pdmlab
