#ifndef PDMLAB_EXPERIMENT_HPP
#define PDMLAB_EXPERIMENT_HPP

#include <string>

#include "pdmlab/config.hpp"
#include "pdmlab/report.hpp"

namespace pdmlab {

// Integrates the chosen model, monitors energies, maps the trajectory to
// reference coordinates and emits a trajectory CSV.
ReportBundle run_simulate(const ExperimentConfig& cfg);

// Runs the model's full verification ledger: closed-form residuals,
// oracle-vs-integration deviations, conservation drifts, transform identity
// checks, round trips and degeneration limits. Asserted checks decide the
// exit status; diagnostics never do.
ReportBundle run_verify(const ExperimentConfig& cfg);

// Integrates in model coordinates, maps through (q = point_map(x),
// tau = integral of f dt), compares against the matched reference solution
// and emits both trajectories.
ReportBundle run_map(const ExperimentConfig& cfg);

// Plain-text table of catalog models with their defining formulas and the
// defaults that differ per model.
std::string list_models_text();

} // namespace pdmlab

#endif
