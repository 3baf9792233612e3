#ifndef PDMLAB_QUADRATURE_HPP
#define PDMLAB_QUADRATURE_HPP

#include <vector>

namespace pdmlab {

// Cumulative integral of a sampled function over a strictly increasing grid;
// out[i] holds the integral from t[0] to t[i], out[0] = 0. Each consecutive
// node triple carries a fitted parabola integrated over both of its
// sub-intervals, which reduces to composite Simpson on uniform grids; a
// trailing unpaired interval reuses the parabola through the last three
// nodes. Two nodes fall back to the trapezoid.
std::vector<double> cumulative_integral(const std::vector<double>& t,
                                        const std::vector<double>& f);

double integral(const std::vector<double>& t, const std::vector<double>& f);

} // namespace pdmlab

#endif
