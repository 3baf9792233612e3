#ifndef PDMLAB_DYNAMICS_HPP
#define PDMLAB_DYNAMICS_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pdmlab/errors.hpp"
#include "pdmlab/model.hpp"
#include "pdmlab/vec2.hpp"

namespace pdmlab {

struct State {
    double t = 0.0;
    Vec2 x;
    Vec2 v;
};

// Right-hand side: acceleration as a function of (t, position, velocity).
using Accel = std::function<Vec2(double, Vec2, Vec2)>;

// Acceleration of the PDM Euler-Lagrange equations,
//   m xdd_j = -(grad m . v) v_j + 1/2 |v|^2 d_j m - d_j V.
Vec2 pdm_acceleration(const PdmModel& model, Vec2 x, Vec2 v);

// Unit-mass reference dynamics: qdd = -grad V(q).
Vec2 reference_acceleration(const ReferenceModel& model, Vec2 q);

Accel make_accel(const PdmModel& model);
Accel make_accel(const ReferenceModel& model);

struct IntegratorConfig {
    enum class Method { rk45, rk4 };

    Method method = Method::rk45;
    double rtol = 1e-10;
    double atol = 1e-10;
    double h_init = 0.0;            // 0: automatic (rk45) / stride/20 (rk4)
    double h_min = 1e-12;
    double h_max = 0.0;             // 0: (t_end - t0)/10
    std::size_t max_steps = 10'000'000;
    std::size_t samples = 1001;     // uniform output samples, both endpoints included
};

// Uniformly sampled solution. The integrator steps exactly onto every sample
// time, so stored states carry integration error only, never interpolation
// error.
struct Trajectory {
    std::vector<double> t;
    std::vector<Vec2> x;
    std::vector<Vec2> v;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    bool truncated = false;

    std::size_t size() const { return t.size(); }
    State state(std::size_t i) const { return {t[i], x[i], v[i]}; }
};

// Raised when the run cannot be continued (right-hand side left its validity
// domain and step halving bottomed out at h_min). Carries whatever samples
// were completed.
class TruncatedError : public Error {
public:
    TruncatedError(const std::string& w, Trajectory partial)
        : Error(errc::truncated, w), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

class StepLimitError : public Error {
public:
    explicit StepLimitError(const std::string& w) : Error(errc::step_limit, w) {}
};

Trajectory integrate(const Accel& accel, const State& initial, double t_end,
                     const IntegratorConfig& cfg);

// Energies. The PDM total is 1/2 m(x)|v|^2 + V(x); the per-axis monitor adds
// the axis kinetic term to the potential's axis_slice.
double total_energy(const PdmModel& model, Vec2 x, Vec2 v);
double sub_energy(const PdmModel& model, Vec2 x, Vec2 v, int axis);
double total_energy(const ReferenceModel& model, Vec2 q, Vec2 qdot);
double sub_energy(const ReferenceModel& model, Vec2 q, Vec2 qdot, int axis);

std::vector<double> energy_series(const PdmModel& model, const Trajectory& tr);
std::vector<double> sub_energy_series(const PdmModel& model, const Trajectory& tr, int axis);
std::vector<double> energy_series(const ReferenceModel& model, const Trajectory& tr);
std::vector<double> sub_energy_series(const ReferenceModel& model, const Trajectory& tr,
                                      int axis);

// Drift of a sampled scalar against its first value.
struct DriftReport {
    double initial = 0.0;
    double max_abs_deviation = 0.0;
    double max_rel_deviation = 0.0; // abs deviation / max(|initial|, 1e-300)
    std::size_t argmax = 0;
};

DriftReport drift(const std::vector<double>& series);

} // namespace pdmlab

#endif
