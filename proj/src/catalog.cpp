#include "pdmlab/catalog.hpp"

#include <cmath>

namespace pdmlab {

namespace {

const std::vector<std::string> kNames = {"ml1",          "ml2",     "ml3",
                                         "shifted-linear", "isotonic-pdm", "linear",
                                         "shifted",      "isotonic"};

std::string unknown_model_message(const std::string& name) {
    std::string msg = "unknown model '" + name + "'; available:";
    for (const auto& n : kNames)
        msg += " " + n;
    return msg;
}

Vec2 axis_frequencies(const ModelParams& p) {
    return {static_cast<double>(p.n1) * p.omega, static_cast<double>(p.n2) * p.omega};
}

// Pulls the energy-form reference start back through the radial map.
State pulled_back_initial(const TransformSpec& ts, const ClosedForm& ref) {
    const State s = ref.state(0.0);
    const Vec2 x = inverse_point_map(ts, s.x);
    const double m = ts.mass.value(x);
    return {0.0, x, s.v * (1.0 / std::sqrt(m))};
}

CatalogEntry build_ml1(const ModelParams& p) {
    CatalogEntry e;
    e.name = "ml1";
    e.title = "deformed-mass oscillator: m = 1/(1 + s b r^2), V = (1/2) m w^2 r^2";
    e.deformed = p.beta != 0.0;
    const MassFunction mass = MassFunction::inverse_quadratic(p.sigma, p.beta);
    e.pdm = {mass, Potential::pdm_scaled_harmonic(p.omega, mass), e.title};
    e.reference = {Potential::harmonic(p.omega), "unit-mass oscillator"};
    e.transform = TransformSpec::radial(mass);
    e.solution = pdm_radial_solution(p.omega, p.sigma, p.beta, p.amplitude, p.phase);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_ml2(const ModelParams& p) {
    CatalogEntry e;
    e.name = "ml2";
    e.title = "deformed mass in a constant potential: V = (1/2) m w^2 xi^2";
    e.deformed = true;
    const MassFunction mass = MassFunction::inverse_quadratic(p.sigma, p.beta);
    e.pdm = {mass, Potential::pdm_scaled_constant(p.omega, p.xi, mass), e.title};
    e.reference = {Potential::harmonic(p.omega), "unit-mass oscillator"};
    e.transform = TransformSpec::constant_ratio(mass, p.xi);
    e.solution = pdm_constant_solution(p.omega, p.xi, p.sigma, p.beta, p.amplitude, p.phase);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_ml3(const ModelParams& p) {
    CatalogEntry e;
    e.name = "ml3";
    e.title = "deformed-mass shifted oscillator: m = m(|x + g|), V = (1/2) m w^2 |x + g|^2";
    e.deformed = p.beta != 0.0;
    const MassFunction mass = MassFunction::inverse_quadratic(p.sigma, p.beta, -p.gamma);
    e.pdm = {mass, Potential::pdm_scaled_harmonic(p.omega, mass), e.title};
    e.reference = {Potential::harmonic(p.omega), "unit-mass oscillator"};
    e.transform = TransformSpec::shifted_radial(mass);
    e.solution =
        pdm_shifted_solution(p.omega, p.sigma, p.beta, p.gamma, p.amplitude, p.phase);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_shifted_linear(const ModelParams& p) {
    CatalogEntry e;
    e.name = "shifted-linear";
    e.title = "deformed-mass oscillator carried onto a shifted unit-mass oscillator";
    e.deformed = p.beta != 0.0;
    const MassFunction mass = MassFunction::inverse_quadratic(p.sigma, p.beta);
    e.pdm = {mass, Potential::pdm_scaled_harmonic(p.omega, mass), e.title};
    e.reference = {Potential::shifted_harmonic(p.omega, p.eta),
                   "unit-mass shifted oscillator"};
    e.transform = TransformSpec::offset_radial(mass, p.eta);
    e.solution = pdm_radial_solution(p.omega, p.sigma, p.beta, p.amplitude, p.phase);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_isotonic_pdm(const ModelParams& p) {
    CatalogEntry e;
    e.name = "isotonic-pdm";
    e.title = "deformed inverse-square oscillator: "
              "V = (1/2) [m w_j^2 x_j^2 + b_j / (m x_j^2)]";
    e.deformed = p.beta != 0.0;
    const MassFunction mass = MassFunction::inverse_quadratic(p.sigma, p.beta);
    const Vec2 w = axis_frequencies(p);
    e.pdm = {mass,
             Potential::pdm_deformed_isotonic(w.x1, w.x2, p.strength.x1, p.strength.x2,
                                              mass),
             e.title};
    e.reference = {Potential::isotonic(w.x1, w.x2, p.strength.x1, p.strength.x2),
                   "unit-mass inverse-square oscillator"};
    e.transform = TransformSpec::radial(mass);
    const double w2 = isotonic_frequency_sq(p.frequency_case, w.x1, w.x2, p.beta,
                                            p.amplitude.x1, p.amplitude.x2);
    e.exact_solution = false; // printed form, kept as a diagnostic subject
    e.solution = pdm_isotonic_printed(p.amplitude, std::sqrt(w2), p.delta);
    const ClosedForm ref = reference_isotonic_energy(w, p.strength, p.energy, p.delta);
    e.initial = pulled_back_initial(e.transform, ref);
    e.period = ref.period;
    e.params = p;
    return e;
}

CatalogEntry build_linear(const ModelParams& p) {
    CatalogEntry e;
    e.name = "linear";
    e.title = "unit-mass oscillator: V = (1/2) sum_j (n_j w)^2 q_j^2";
    e.deformed = false;
    e.pdm = {MassFunction::constant(), Potential::harmonic(p.omega, p.n1, p.n2), e.title};
    e.reference = {e.pdm.potential, e.title};
    e.transform = TransformSpec::identity();
    e.solution =
        reference_linear(p.amplitude, axis_frequencies(p), {p.phase, p.phase});
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_shifted(const ModelParams& p) {
    CatalogEntry e;
    e.name = "shifted";
    e.title = "unit-mass shifted oscillator: V = (1/2) sum_j a_j^2 (q_j + eta_j)^2";
    e.deformed = false;
    e.pdm = {MassFunction::constant(),
             Potential::shifted_harmonic(p.omega, p.eta, p.n1, p.n2), e.title};
    e.reference = {e.pdm.potential, e.title};
    e.transform = TransformSpec::identity();
    e.solution = reference_shifted(p.amplitude, axis_frequencies(p), {p.phase, p.phase},
                                   p.eta);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

CatalogEntry build_isotonic(const ModelParams& p) {
    CatalogEntry e;
    e.name = "isotonic";
    e.title = "unit-mass inverse-square oscillator: "
              "V = (1/2) sum_j (w_j^2 q_j^2 + b_j / q_j^2)";
    e.deformed = false;
    const Vec2 w = axis_frequencies(p);
    e.pdm = {MassFunction::constant(),
             Potential::isotonic(w.x1, w.x2, p.strength.x1, p.strength.x2), e.title};
    e.reference = {e.pdm.potential, e.title};
    e.transform = TransformSpec::identity();
    e.solution = reference_isotonic_energy(w, p.strength, p.energy, p.delta);
    e.initial = e.solution.state(0.0);
    e.period = e.solution.period;
    e.params = p;
    return e;
}

} // namespace

const std::vector<std::string>& catalog_names() { return kNames; }

bool catalog_has(const std::string& name) {
    for (const auto& n : kNames)
        if (n == name)
            return true;
    return false;
}

ModelParams catalog_defaults(const std::string& name) {
    ModelParams p;
    if (name == "ml2") {
        p.sigma = -1.0;
        p.beta = 0.25; // the equivalence tie beta = 1/xi^2 at the default xi
    } else if (name == "linear") {
        p.n2 = 2;
    }
    if (!catalog_has(name))
        throw LookupError(unknown_model_message(name));
    return p;
}

CatalogEntry catalog_build(const std::string& name, const ModelParams& p) {
    if (p.sigma != 1.0 && p.sigma != -1.0)
        throw ParameterError("mass branch sign must be +1 or -1");
    if (name == "ml1")
        return build_ml1(p);
    if (name == "ml2")
        return build_ml2(p);
    if (name == "ml3")
        return build_ml3(p);
    if (name == "shifted-linear")
        return build_shifted_linear(p);
    if (name == "isotonic-pdm")
        return build_isotonic_pdm(p);
    if (name == "linear")
        return build_linear(p);
    if (name == "shifted")
        return build_shifted(p);
    if (name == "isotonic")
        return build_isotonic(p);
    throw LookupError(unknown_model_message(name));
}

std::string catalog_title(const std::string& name) {
    return catalog_build(name, catalog_defaults(name)).title;
}

} // namespace pdmlab
