#include "pdmlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pdmlab {

Trajectory ClosedForm::sample(double t0, double t1, std::size_t n) const {
    if (n < 2)
        throw InputError("at least two samples required");
    if (!(t1 > t0))
        throw InputError("sampling span must be increasing");
    if (!contains(t0, t1))
        throw DomainError("sampling span leaves the validity window of '" + label + "'");
    Trajectory tr;
    tr.t.reserve(n);
    tr.x.reserve(n);
    tr.v.reserve(n);
    const double stride = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (i + 1 == n) ? t1 : t0 + stride * static_cast<double>(i);
        tr.t.push_back(t);
        tr.x.push_back(position(t));
        tr.v.push_back(velocity(t));
    }
    return tr;
}

ClosedForm cosine_solution(Vec2 amplitude, Vec2 freq, Vec2 phase, Vec2 offset,
                           std::string label) {
    if (!amplitude.finite() || !freq.finite() || !phase.finite() || !offset.finite())
        throw ParameterError("non-finite cosine parameters");
    if (!(freq.x1 > 0.0) || !(freq.x2 > 0.0))
        throw ParameterError("cosine frequencies must be positive");
    ClosedForm f;
    f.position = [=](double t) -> Vec2 {
        return {amplitude.x1 * std::cos(freq.x1 * t + phase.x1) - offset.x1,
                amplitude.x2 * std::cos(freq.x2 * t + phase.x2) - offset.x2};
    };
    f.velocity = [=](double t) -> Vec2 {
        return {-amplitude.x1 * freq.x1 * std::sin(freq.x1 * t + phase.x1),
                -amplitude.x2 * freq.x2 * std::sin(freq.x2 * t + phase.x2)};
    };
    f.acceleration = [=](double t) -> Vec2 {
        return {-amplitude.x1 * freq.x1 * freq.x1 * std::cos(freq.x1 * t + phase.x1),
                -amplitude.x2 * freq.x2 * freq.x2 * std::cos(freq.x2 * t + phase.x2)};
    };
    constexpr double two_pi = 6.283185307179586476925286766559;
    f.period = two_pi / std::min(freq.x1, freq.x2);
    f.label = std::move(label);
    return f;
}

double pdm_radial_frequency_sq(double omega, double sigma, double beta, Vec2 amplitude) {
    const double denom = 1.0 + sigma * beta * amplitude.norm2();
    if (denom <= 0.0)
        throw ParameterError("frequency undefined: 1 + sigma beta |A|^2 <= 0");
    return omega * omega / denom;
}

double pdm_constant_frequency_sq(double omega, double xi, double sigma, double beta,
                                 Vec2 amplitude) {
    const double denom = 1.0 + sigma * beta * amplitude.norm2();
    if (denom <= 0.0)
        throw ParameterError("frequency undefined: 1 + sigma beta |A|^2 <= 0");
    const double w2 = -sigma * beta * omega * omega * xi * xi / denom;
    if (!(w2 > 0.0))
        throw ParameterError(
            "constant-potential oscillation requires sigma = -1 with beta > 0");
    return w2;
}

ClosedForm pdm_radial_solution(double omega, double sigma, double beta, Vec2 amplitude,
                               double phase) {
    const double w = std::sqrt(pdm_radial_frequency_sq(omega, sigma, beta, amplitude));
    return cosine_solution(amplitude, {w, w}, {phase, phase}, {0.0, 0.0},
                           "deformed oscillator, common frequency "
                               + std::to_string(w));
}

ClosedForm pdm_shifted_solution(double omega, double sigma, double beta, Vec2 gamma,
                                Vec2 amplitude, double phase) {
    const double w = std::sqrt(pdm_radial_frequency_sq(omega, sigma, beta, amplitude));
    return cosine_solution(amplitude, {w, w}, {phase, phase}, gamma,
                           "shifted deformed oscillator, common frequency "
                               + std::to_string(w));
}

ClosedForm pdm_constant_solution(double omega, double xi, double sigma, double beta,
                                 Vec2 amplitude, double phase) {
    const double w =
        std::sqrt(pdm_constant_frequency_sq(omega, xi, sigma, beta, amplitude));
    return cosine_solution(amplitude, {w, w}, {phase, phase}, {0.0, 0.0},
                           "constant-potential oscillator, frequency " + std::to_string(w));
}

ClosedForm reference_linear(Vec2 amplitude, Vec2 freq, Vec2 phase) {
    return cosine_solution(amplitude, freq, phase, {0.0, 0.0}, "unit-mass oscillator");
}

ClosedForm reference_shifted(Vec2 amplitude, Vec2 alpha, Vec2 phase, Vec2 eta) {
    return cosine_solution(amplitude, alpha, phase, eta, "unit-mass shifted oscillator");
}

namespace {

struct SqrtAxis {
    // q(t) = sqrt(u(t)) with u = base + amp * sin(freq * t + delta).
    double base, amp, freq, delta;

    double u(double t) const { return base + amp * std::sin(freq * t + delta); }
    double du(double t) const { return amp * freq * std::cos(freq * t + delta); }
    double ddu(double t) const { return -amp * freq * freq * std::sin(freq * t + delta); }

    double q(double t) const {
        const double uu = u(t);
        if (!(uu > 0.0))
            throw DomainError("square-root solution evaluated outside its window");
        return std::sqrt(uu);
    }
    double v(double t) const { return du(t) / (2.0 * q(t)); }
    double a(double t) const {
        const double uu = u(t);
        const double qq = q(t);
        return ddu(t) / (2.0 * qq) - du(t) * du(t) / (4.0 * uu * qq);
    }
};

ClosedForm sqrt_sine_solution(SqrtAxis a1, SqrtAxis a2, double t_min, double t_max,
                              double period, std::string label) {
    ClosedForm f;
    f.position = [=](double t) -> Vec2 { return {a1.q(t), a2.q(t)}; };
    f.velocity = [=](double t) -> Vec2 { return {a1.v(t), a2.v(t)}; };
    f.acceleration = [=](double t) -> Vec2 { return {a1.a(t), a2.a(t)}; };
    f.t_min = t_min;
    f.t_max = t_max;
    f.period = period;
    f.label = std::move(label);
    return f;
}

// Window on which sin(freq t + delta) > 0, shrunk by a relative margin to
// keep the endpoints clear of the square-root branch point.
std::pair<double, double> positive_sine_window(double freq, double delta) {
    const double pi = 3.14159265358979323846264338328;
    const double lo = -delta / freq;
    const double hi = (pi - delta) / freq;
    const double margin = 0.05 * (hi - lo);
    return {lo + margin, hi - margin};
}

} // namespace

ClosedForm reference_isotonic_energy(Vec2 omega, Vec2 strength, Vec2 energy, Vec2 delta) {
    SqrtAxis ax[2];
    for (int j = 0; j < 2; ++j) {
        const double w = omega[j];
        const double b = strength[j];
        const double e = energy[j];
        if (!(w > 0.0))
            throw ParameterError("frequencies must be positive");
        if (!(b > 0.0))
            throw ParameterError("the energy-parameterized form needs strengths > 0");
        const double disc = e * e - w * w * b;
        if (disc < 0.0)
            throw ParameterError("axis energy below the potential minimum");
        ax[j] = SqrtAxis{e / (w * w), std::sqrt(disc) / (w * w), 2.0 * w, delta[j]};
    }
    const double pi = 3.14159265358979323846264338328;
    const double period = pi / std::min(omega.x1, omega.x2);
    return sqrt_sine_solution(ax[0], ax[1], 0.0, 0.0, period,
                              "inverse-square oscillator, energy form");
}

ClosedForm reference_isotonic_printed(Vec2 amplitude, Vec2 omega, Vec2 delta) {
    SqrtAxis ax[2];
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < 2; ++j) {
        if (!(omega[j] > 0.0) || !(amplitude[j] > 0.0))
            throw ParameterError("printed form needs positive amplitudes and frequencies");
        ax[j] = SqrtAxis{0.0, amplitude[j] / omega[j], omega[j], delta[j]};
        auto [l, h] = positive_sine_window(omega[j], delta[j]);
        lo = (j == 0) ? l : std::max(lo, l);
        hi = (j == 0) ? h : std::min(hi, h);
    }
    if (!(hi > lo))
        throw ParameterError("the axis validity windows do not overlap");
    const double pi = 3.14159265358979323846264338328;
    return sqrt_sine_solution(ax[0], ax[1], lo, hi, 2.0 * pi / std::min(omega.x1, omega.x2),
                              "inverse-square oscillator, printed form");
}

ClosedForm pdm_isotonic_printed(Vec2 amplitude, double big_omega, Vec2 delta) {
    if (!(big_omega > 0.0))
        throw ParameterError("printed form needs a positive frequency");
    SqrtAxis ax[2];
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < 2; ++j) {
        if (!(amplitude[j] > 0.0))
            throw ParameterError("printed form needs positive amplitudes");
        ax[j] = SqrtAxis{0.0, amplitude[j] / big_omega, big_omega, delta[j]};
        auto [l, h] = positive_sine_window(big_omega, delta[j]);
        lo = (j == 0) ? l : std::max(lo, l);
        hi = (j == 0) ? h : std::min(hi, h);
    }
    if (!(hi > lo))
        throw ParameterError("the axis validity windows do not overlap");
    const double pi = 3.14159265358979323846264338328;
    return sqrt_sine_solution(ax[0], ax[1], lo, hi, 2.0 * pi / big_omega,
                              "deformed inverse-square oscillator, printed form");
}

double ode_residual(const ClosedForm& form, const Accel& accel, double t0, double t1,
                    std::size_t n) {
    if (n < 2)
        throw InputError("at least two residual samples required");
    if (!form.contains(t0, t1))
        throw DomainError("residual span leaves the validity window of '" + form.label
                          + "'");
    const double stride = (t1 - t0) / static_cast<double>(n - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (i + 1 == n) ? t1 : t0 + stride * static_cast<double>(i);
        const Vec2 lhs = form.acceleration(t);
        const Vec2 rhs = accel(t, form.position(t), form.velocity(t));
        worst = std::max(worst, (lhs - rhs).norm());
    }
    return worst;
}

double max_position_deviation(const Trajectory& tr, const ClosedForm& form) {
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i)
        worst = std::max(worst, (tr.x[i] - form.position(tr.t[i])).norm());
    return worst;
}

double oracle_vs_integration(const ClosedForm& form, const Accel& accel, double t0,
                             double t1, const IntegratorConfig& cfg) {
    const Trajectory tr = integrate(accel, form.state(t0), t1, cfg);
    return max_position_deviation(tr, form);
}

ClosedForm fit_cosine(const State& s, Vec2 freq, std::string label) {
    Vec2 amplitude, phase;
    for (int j = 0; j < 2; ++j) {
        const double w = freq[j];
        if (!(w > 0.0))
            throw ParameterError("fit requires positive frequencies");
        const double c = s.x[j];
        const double sn = -s.v[j] / w;
        amplitude[j] = std::hypot(c, sn);
        phase[j] = std::atan2(sn, c) - w * s.t;
    }
    return cosine_solution(amplitude, freq, phase, {0.0, 0.0}, std::move(label));
}

Vec2 fd_velocity(const ClosedForm& form, double t, double h) {
    const Vec2 m2 = form.position(t - 2.0 * h);
    const Vec2 m1 = form.position(t - h);
    const Vec2 p1 = form.position(t + h);
    const Vec2 p2 = form.position(t + 2.0 * h);
    return (m2 - p2 + (p1 - m1) * 8.0) * (1.0 / (12.0 * h));
}

Vec2 fd_acceleration(const ClosedForm& form, double t, double h) {
    const Vec2 m2 = form.velocity(t - 2.0 * h);
    const Vec2 m1 = form.velocity(t - h);
    const Vec2 p1 = form.velocity(t + h);
    const Vec2 p2 = form.velocity(t + 2.0 * h);
    return (m2 - p2 + (p1 - m1) * 8.0) * (1.0 / (12.0 * h));
}

} // namespace pdmlab
