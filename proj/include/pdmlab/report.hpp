#ifndef PDMLAB_REPORT_HPP
#define PDMLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdmlab/config.hpp"

namespace pdmlab {

// One measured quantity. Asserted checks compare |value| against a tolerance
// and participate in the exit status; diagnostics are recorded as-is.
struct Check {
    std::string name;
    std::string statement; // what was measured, in formula text
    bool asserted = true;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string detail;
};

Check asserted_check(std::string name, std::string statement, double value,
                     double tolerance, std::string detail = "");
Check diagnostic_check(std::string name, std::string statement, double value,
                       std::string detail = "");

struct NamedFile {
    std::string name;
    std::string content;
};

// Everything a run produces: the checks plus any data files to be written
// next to the report. Serialization is deterministic; two runs with the same
// seed produce byte-identical JSON.
struct ReportBundle {
    std::string command; // simulate | verify | map
    std::string model;
    std::string title;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<Check> checks;
    std::vector<NamedFile> files;

    bool all_asserted_pass() const;
};

// Canonical key/value echo of a resolved config, nested keys dotted.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

// Shortest round-trip decimal form of x.
std::string format_double(double x);

std::string report_to_json(const ReportBundle& report);
ReportBundle report_from_json(const std::string& json_text);

// Human-readable table; ANSI color only when use_color is set.
std::string render_table(const ReportBundle& report, bool use_color);

// Column-oriented CSV with one header row. All columns must share a length.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& columns);

} // namespace pdmlab

#endif
