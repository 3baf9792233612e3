#include "pdmlab/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace pdmlab {

Vec2 pdm_acceleration(const PdmModel& model, Vec2 x, Vec2 v) {
    const double m = model.mass.value(x);
    const Vec2 gm = model.mass.gradient(x);
    const Vec2 gv = model.potential.gradient(x);
    const double mdot = gm.dot(v);
    const Vec2 num = gm * (0.5 * v.norm2()) - v * mdot - gv;
    return num * (1.0 / m);
}

Vec2 reference_acceleration(const ReferenceModel& model, Vec2 q) {
    return -model.potential.gradient(q);
}

Accel make_accel(const PdmModel& model) {
    return [model](double, Vec2 x, Vec2 v) { return pdm_acceleration(model, x, v); };
}

Accel make_accel(const ReferenceModel& model) {
    return [model](double, Vec2 q, Vec2) { return reference_acceleration(model, q); };
}

namespace {

using Y = std::array<double, 4>; // x1, x2, v1, v2

Y pack(Vec2 x, Vec2 v) { return {x.x1, x.x2, v.x1, v.x2}; }

Y deriv(const Accel& accel, double t, const Y& y) {
    const Vec2 x{y[0], y[1]};
    const Vec2 v{y[2], y[3]};
    const Vec2 a = accel(t, x, v);
    return {v.x1, v.x2, a.x1, a.x2};
}

bool finite(const Y& y) {
    for (double c : y)
        if (!std::isfinite(c))
            return false;
    return true;
}

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
                 A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double A71 = 35.0 / 384.0, A73 = 500.0 / 1113.0, A74 = 125.0 / 192.0,
                 A75 = -2187.0 / 6784.0, A76 = 11.0 / 84.0;
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

struct StepResult {
    Y y1;
    Y k7;    // derivative at y1, reused as next k1 (first-same-as-last)
    double err = 0.0;
};

// One trial step. Throws whatever the right-hand side throws.
StepResult dopri_step(const Accel& accel, double t, const Y& y, const Y& k1, double h,
                      double atol, double rtol) {
    Y w;
    for (int i = 0; i < 4; ++i)
        w[i] = y[i] + h * A21 * k1[i];
    const Y k2 = deriv(accel, t + C2 * h, w);
    for (int i = 0; i < 4; ++i)
        w[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    const Y k3 = deriv(accel, t + C3 * h, w);
    for (int i = 0; i < 4; ++i)
        w[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    const Y k4 = deriv(accel, t + C4 * h, w);
    for (int i = 0; i < 4; ++i)
        w[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    const Y k5 = deriv(accel, t + C5 * h, w);
    for (int i = 0; i < 4; ++i)
        w[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    const Y k6 = deriv(accel, t + h, w);

    StepResult r;
    for (int i = 0; i < 4; ++i)
        r.y1[i] = y[i]
                + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
    r.k7 = deriv(accel, t + h, r.y1);
    if (!finite(r.y1) || !finite(r.k7))
        throw DomainError("non-finite state produced inside a step");

    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double e = h
                       * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                          + E7 * r.k7[i]);
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(r.y1[i]));
        sum += (e / sc) * (e / sc);
    }
    r.err = std::sqrt(sum / 4.0);
    if (!std::isfinite(r.err))
        throw DomainError("non-finite error estimate inside a step");
    return r;
}

double scaled_norm(const Y& a, const Y& ref, double atol, double rtol) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = atol + rtol * std::abs(ref[i]);
        sum += (a[i] / sc) * (a[i] / sc);
    }
    return std::sqrt(sum / 4.0);
}

// Initial step guess, order-5 variant of the usual two-probe heuristic.
double initial_step(const Accel& accel, double t0, const Y& y0, const Y& f0, double span,
                    double h_max, double atol, double rtol) {
    const double d0 = scaled_norm(y0, y0, atol, rtol);
    const double d1 = scaled_norm(f0, y0, atol, rtol);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);
    Y y1;
    for (int i = 0; i < 4; ++i)
        y1[i] = y0[i] + h0 * f0[i];
    double d2 = 0.0;
    bool probed = false;
    try {
        const Y f1 = deriv(accel, t0 + h0, y1);
        Y df;
        for (int i = 0; i < 4; ++i)
            df[i] = f1[i] - f0[i];
        d2 = scaled_norm(df, y0, atol, rtol) / h0;
        probed = finite(f1);
    } catch (const Error&) {
        probed = false;
    }
    double h1;
    if (!probed || std::max(d1, d2) <= 1e-15)
        h1 = std::max(1e-6, h0 * 1e-3);
    else
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    return std::min({100.0 * h0, h1, h_max, span});
}

Trajectory integrate_rk45(const Accel& accel, const State& initial, double t_end,
                          const IntegratorConfig& cfg) {
    const double t0 = initial.t;
    const double span = t_end - t0;
    const std::size_t n = cfg.samples;
    const double stride = span / static_cast<double>(n - 1);
    const double h_max = cfg.h_max > 0.0 ? cfg.h_max : span / 10.0;

    Trajectory tr;
    tr.t.reserve(n);
    tr.x.reserve(n);
    tr.v.reserve(n);
    tr.t.push_back(t0);
    tr.x.push_back(initial.x);
    tr.v.push_back(initial.v);

    double t = t0;
    Y y = pack(initial.x, initial.v);
    Y k1 = deriv(accel, t0, y); // throws immediately if the start is invalid

    double h = cfg.h_init > 0.0
                   ? std::min(cfg.h_init, h_max)
                   : initial_step(accel, t0, y, k1, span, h_max, cfg.atol, cfg.rtol);
    h = std::max(h, cfg.h_min);

    // PI step control constants as in classic embedded 5(4) drivers.
    constexpr double safe = 0.9;
    constexpr double expo1 = 0.2 - 0.04 * 0.75; // 0.17
    constexpr double beta = 0.04;
    constexpr double fac_shrink = 0.2; // max shrink factor per step
    constexpr double fac_grow = 10.0;  // max growth factor per step
    double facold = 1e-4;
    bool just_rejected = false;

    std::size_t steps = 0;
    std::size_t sample = 1; // next sample index to land on

    auto truncate = [&](const std::string& why) -> TruncatedError {
        tr.truncated = true;
        return TruncatedError("integration truncated at t = " + std::to_string(t) + ": " + why,
                              tr);
    };

    while (sample < n) {
        if (steps >= cfg.max_steps)
            throw StepLimitError("step budget exhausted after "
                                 + std::to_string(cfg.max_steps) + " steps at t = "
                                 + std::to_string(t));
        ++steps;

        const double target = t0 + stride * static_cast<double>(sample);
        bool clipped = false;
        double h_use = std::min(h, h_max);
        if (t + h_use >= target || target - t < cfg.h_min) {
            h_use = target - t;
            clipped = true;
        }

        StepResult st;
        try {
            st = dopri_step(accel, t, y, k1, h_use, cfg.atol, cfg.rtol);
        } catch (const Error&) {
            ++tr.rejected_steps;
            const double h_half = h_use / 2.0;
            if (h_half < cfg.h_min)
                throw truncate("right-hand side rejected states at the minimum step size");
            h = h_half;
            just_rejected = true;
            continue;
        }

        if (st.err <= 1.0) {
            ++tr.accepted_steps;
            t = clipped ? target : t + h_use;
            y = st.y1;
            k1 = st.k7;
            if (clipped) {
                tr.t.push_back(target);
                tr.x.push_back({y[0], y[1]});
                tr.v.push_back({y[2], y[3]});
                ++sample;
            }
            const double fac11 = std::pow(std::max(st.err, 1e-16), expo1);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / fac_grow, std::min(1.0 / fac_shrink, fac / safe));
            double h_next = h_use / fac;
            if (just_rejected)
                h_next = std::min(h_next, h_use);
            if (!clipped || h_next > h)
                h = h_next; // a clipped step may raise the proposal, never lower it
            facold = std::max(st.err, 1e-4);
            just_rejected = false;
        } else {
            ++tr.rejected_steps;
            const double fac11 = std::pow(st.err, expo1);
            h = h_use / std::min(1.0 / fac_shrink, fac11 / safe);
            just_rejected = true;
            if (h < cfg.h_min)
                throw truncate("error control pushed the step below the minimum step size");
        }
    }
    return tr;
}

Trajectory integrate_rk4(const Accel& accel, const State& initial, double t_end,
                         const IntegratorConfig& cfg) {
    const double t0 = initial.t;
    const std::size_t n = cfg.samples;
    const double stride = (t_end - t0) / static_cast<double>(n - 1);
    const double target_h = cfg.h_init > 0.0 ? cfg.h_init : stride / 20.0;
    const std::size_t per = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(stride / target_h)));
    if (per * (n - 1) > cfg.max_steps)
        throw StepLimitError("fixed-step plan exceeds the step budget");

    Trajectory tr;
    tr.t.reserve(n);
    tr.x.reserve(n);
    tr.v.reserve(n);
    tr.t.push_back(t0);
    tr.x.push_back(initial.x);
    tr.v.push_back(initial.v);

    double t = t0;
    Y y = pack(initial.x, initial.v);
    for (std::size_t s = 1; s < n; ++s) {
        const double target = t0 + stride * static_cast<double>(s);
        const double h = (target - t) / static_cast<double>(per);
        for (std::size_t j = 0; j < per; ++j) {
            Y w;
            const Y k1 = deriv(accel, t, y);
            for (int i = 0; i < 4; ++i)
                w[i] = y[i] + 0.5 * h * k1[i];
            const Y k2 = deriv(accel, t + 0.5 * h, w);
            for (int i = 0; i < 4; ++i)
                w[i] = y[i] + 0.5 * h * k2[i];
            const Y k3 = deriv(accel, t + 0.5 * h, w);
            for (int i = 0; i < 4; ++i)
                w[i] = y[i] + h * k3[i];
            const Y k4 = deriv(accel, t + h, w);
            for (int i = 0; i < 4; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t += h;
            ++tr.accepted_steps;
            if (!finite(y)) {
                tr.truncated = true;
                throw TruncatedError("fixed-step run produced a non-finite state at t = "
                                         + std::to_string(t),
                                     tr);
            }
        }
        t = target;
        tr.t.push_back(target);
        tr.x.push_back({y[0], y[1]});
        tr.v.push_back({y[2], y[3]});
    }
    return tr;
}

} // namespace

Trajectory integrate(const Accel& accel, const State& initial, double t_end,
                     const IntegratorConfig& cfg) {
    if (!initial.x.finite() || !initial.v.finite() || !std::isfinite(initial.t))
        throw InputError("non-finite initial state");
    if (!std::isfinite(t_end) || t_end <= initial.t)
        throw InputError("t_end must be finite and greater than the initial time");
    if (cfg.samples < 2)
        throw InputError("at least two output samples required");
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0))
        throw InputError("tolerances must be positive");
    if (!(cfg.h_min > 0.0))
        throw InputError("h_min must be positive");
    switch (cfg.method) {
    case IntegratorConfig::Method::rk45:
        return integrate_rk45(accel, initial, t_end, cfg);
    case IntegratorConfig::Method::rk4:
        return integrate_rk4(accel, initial, t_end, cfg);
    }
    throw InternalError("unhandled integrator method");
}

double total_energy(const PdmModel& model, Vec2 x, Vec2 v) {
    return 0.5 * model.mass.value(x) * v.norm2() + model.potential.value(x);
}

double sub_energy(const PdmModel& model, Vec2 x, Vec2 v, int axis) {
    return 0.5 * model.mass.value(x) * v[axis] * v[axis] + model.potential.axis_slice(x, axis);
}

double total_energy(const ReferenceModel& model, Vec2 q, Vec2 qdot) {
    return 0.5 * qdot.norm2() + model.potential.value(q);
}

double sub_energy(const ReferenceModel& model, Vec2 q, Vec2 qdot, int axis) {
    return 0.5 * qdot[axis] * qdot[axis] + model.potential.axis_slice(q, axis);
}

namespace {

template <class Model>
std::vector<double> series_impl(const Model& m, const Trajectory& tr, int axis) {
    std::vector<double> out;
    out.reserve(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (axis < 0)
            out.push_back(total_energy(m, tr.x[i], tr.v[i]));
        else
            out.push_back(sub_energy(m, tr.x[i], tr.v[i], axis));
    }
    return out;
}

} // namespace

std::vector<double> energy_series(const PdmModel& model, const Trajectory& tr) {
    return series_impl(model, tr, -1);
}
std::vector<double> sub_energy_series(const PdmModel& model, const Trajectory& tr, int axis) {
    return series_impl(model, tr, axis);
}
std::vector<double> energy_series(const ReferenceModel& model, const Trajectory& tr) {
    return series_impl(model, tr, -1);
}
std::vector<double> sub_energy_series(const ReferenceModel& model, const Trajectory& tr,
                                      int axis) {
    return series_impl(model, tr, axis);
}

DriftReport drift(const std::vector<double>& series) {
    if (series.empty())
        throw InputError("drift of an empty series");
    DriftReport r;
    r.initial = series.front();
    const double scale = std::max(std::abs(r.initial), 1e-300);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double d = std::abs(series[i] - r.initial);
        if (d > r.max_abs_deviation) {
            r.max_abs_deviation = d;
            r.argmax = i;
        }
    }
    r.max_rel_deviation = r.max_abs_deviation / scale;
    return r;
}

} // namespace pdmlab
