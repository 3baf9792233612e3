#ifndef PDMLAB_CONFIG_HPP
#define PDMLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdmlab/catalog.hpp"
#include "pdmlab/dynamics.hpp"

namespace pdmlab {

// Fully resolved experiment description: the chosen model with per-model
// defaults applied, then file values, then command-line overrides.
struct ExperimentConfig {
    std::string model = "ml1";
    ModelParams params;
    double periods = 10.0;
    std::uint64_t seed = 42;
    IntegratorConfig integrator;
};

// Grammar (documented in the README): `key = value` lines, `#` comments,
// one nesting level via `integrator { ... }`. Vector values take two numbers
// separated by whitespace or a comma. Unknown keys are parse errors carrying
// line and column. An empty text yields pure defaults.
ExperimentConfig parse_config(const std::string& text);

// parse_config plus `key=value` overrides (nested keys spelled
// `integrator.rtol`), applied in order after the file.
ExperimentConfig load_config(const std::string& text,
                             const std::vector<std::string>& overrides);

// Cross-field checks plus a trial model build; throws ValidationError naming
// the offending key.
void validate_config(const ExperimentConfig& cfg);

} // namespace pdmlab

#endif
