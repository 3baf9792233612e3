#ifndef PDMLAB_CATALOG_HPP
#define PDMLAB_CATALOG_HPP

#include <string>
#include <vector>

#include "pdmlab/dynamics.hpp"
#include "pdmlab/invariants.hpp"
#include "pdmlab/model.hpp"
#include "pdmlab/oracles.hpp"
#include "pdmlab/transforms.hpp"

namespace pdmlab {

// Every knob a catalog model can read. Each model consumes the subset that
// applies to it; catalog_defaults() pins the per-model values that differ
// from these baseline ones.
struct ModelParams {
    double omega = 1.0;               // base frequency
    double sigma = +1.0;              // mass branch, +1 or -1
    double beta = 0.1;                // mass deformation strength
    double xi = 2.0;                  // constant-potential length scale
    Vec2 gamma{0.5, 0.0};             // oscillator center shift (x-space)
    Vec2 eta{0.5, 0.5};               // oscillator center shift (q-space)
    int n1 = 1;                       // axis frequency multipliers
    int n2 = 1;
    Vec2 amplitude{1.0, 0.5};
    double phase = 0.0;
    Vec2 strength{0.75, 0.75};        // inverse-square strengths
    Vec2 energy{1.0, 1.0};            // axis energies of the energy-form solution
    Vec2 delta{1.5707963267948966, 1.5707963267948966};
    IsotonicFrequencyCase frequency_case = IsotonicFrequencyCase::automatic;
    int energy_sign = +1;             // branch inside the closed-form energy
};

struct CatalogEntry {
    std::string name;
    std::string title;
    bool deformed = false;     // the mass actually varies
    PdmModel pdm;              // the system in (x, t); unit mass for references
    ReferenceModel reference;  // its unit-mass image in (q, tau)
    TransformSpec transform;
    bool exact_solution = true; // false: `solution` is a printed form kept for diagnostics
    ClosedForm solution;        // in the entry's own time variable
    State initial;              // canonical start, t = 0
    double period = 0.0;        // span unit behind "periods"
    ModelParams params;
};

const std::vector<std::string>& catalog_names();
bool catalog_has(const std::string& name);

// Per-model default parameters (the baseline ModelParams with the few
// model-specific pins applied).
ModelParams catalog_defaults(const std::string& name);

CatalogEntry catalog_build(const std::string& name, const ModelParams& p);

std::string catalog_title(const std::string& name);

} // namespace pdmlab

#endif
