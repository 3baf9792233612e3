#include "pdmlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include <json.hpp>

#include "pdmlab/errors.hpp"

namespace pdmlab {

using ordered_json = nlohmann::ordered_json;

Check asserted_check(std::string name, std::string statement, double value,
                     double tolerance, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.asserted = true;
    c.value = value;
    c.tolerance = tolerance;
    c.pass = std::isfinite(value) && std::abs(value) <= tolerance;
    c.detail = std::move(detail);
    return c;
}

Check diagnostic_check(std::string name, std::string statement, double value,
                       std::string detail) {
    Check c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.asserted = false;
    c.value = value;
    c.tolerance = 0.0;
    c.pass = true;
    c.detail = std::move(detail);
    return c;
}

bool ReportBundle::all_asserted_pass() const {
    for (const Check& c : checks)
        if (c.asserted && !c.pass) return false;
    return true;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw InternalError("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::string format_vec(Vec2 v) {
    return format_double(v.x1) + " " + format_double(v.x2);
}

std::string sign_text(double s) { return s < 0 ? "-" : "+"; }

// JSON has no spelling for non-finite numbers (the serializer would emit
// null); carry them as their text spellings so reports round-trip.
ordered_json json_number(double x) {
    if (std::isfinite(x)) return ordered_json(x);
    return ordered_json(format_double(x));
}

double double_field(const ordered_json& jc, const char* key, double missing,
                    double null_value) {
    auto it = jc.find(key);
    if (it == jc.end()) return missing;
    if (it->is_number()) return it->get<double>();
    if (it->is_null()) return null_value;
    if (it->is_string()) {
        const std::string s = it->get<std::string>();
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (end != s.c_str() && *end == '\0') return x;
    }
    throw ParseError(0, 0,
                     std::string("not a report JSON: '") + key + "' is not a number");
}

const char* case_text(IsotonicFrequencyCase c) {
    switch (c) {
        case IsotonicFrequencyCase::automatic: return "auto";
        case IsotonicFrequencyCase::isotropic: return "isotropic";
        case IsotonicFrequencyCase::anisotropic: return "anisotropic";
        case IsotonicFrequencyCase::equal_amplitude: return "equal-amplitude";
    }
    return "auto";
}

} // namespace

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
    const ModelParams& p = cfg.params;
    const IntegratorConfig& ic = cfg.integrator;
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("model", cfg.model);
    out.emplace_back("sign", sign_text(p.sigma));
    out.emplace_back("beta", format_double(p.beta));
    out.emplace_back("omega", format_double(p.omega));
    out.emplace_back("n1", std::to_string(p.n1));
    out.emplace_back("n2", std::to_string(p.n2));
    out.emplace_back("xi", format_double(p.xi));
    out.emplace_back("gamma", format_vec(p.gamma));
    out.emplace_back("eta", format_vec(p.eta));
    out.emplace_back("amplitude", format_vec(p.amplitude));
    out.emplace_back("phase", format_double(p.phase));
    out.emplace_back("strength", format_vec(p.strength));
    out.emplace_back("energy", format_vec(p.energy));
    out.emplace_back("delta", format_vec(p.delta));
    out.emplace_back("frequency-case", case_text(p.frequency_case));
    out.emplace_back("energy-sign", p.energy_sign < 0 ? "-" : "+");
    out.emplace_back("periods", format_double(cfg.periods));
    out.emplace_back("samples", std::to_string(ic.samples));
    out.emplace_back("seed", std::to_string(cfg.seed));
    out.emplace_back("integrator.method",
                     ic.method == IntegratorConfig::Method::rk45 ? "rk45" : "rk4");
    out.emplace_back("integrator.rtol", format_double(ic.rtol));
    out.emplace_back("integrator.atol", format_double(ic.atol));
    out.emplace_back("integrator.h-init", format_double(ic.h_init));
    out.emplace_back("integrator.h-min", format_double(ic.h_min));
    out.emplace_back("integrator.h-max", format_double(ic.h_max));
    out.emplace_back("integrator.max-steps", std::to_string(ic.max_steps));
    return out;
}

std::string report_to_json(const ReportBundle& report) {
    ordered_json j;
    j["tool"] = "pdmlab";
    j["command"] = report.command;
    j["model"] = report.model;
    j["title"] = report.title;
    j["seed"] = report.seed;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : report.config_echo) cfg[k] = v;
    j["config"] = cfg;

    ordered_json checks = ordered_json::array();
    std::size_t asserted = 0, passed = 0;
    for (const Check& c : report.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["statement"] = c.statement;
        jc["kind"] = c.asserted ? "asserted" : "diagnostic";
        jc["value"] = json_number(c.value);
        if (c.asserted) {
            jc["tolerance"] = json_number(c.tolerance);
            jc["pass"] = c.pass;
            ++asserted;
            if (c.pass) ++passed;
        }
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);

    ordered_json files = ordered_json::array();
    for (const NamedFile& f : report.files) files.push_back(f.name);
    j["files"] = std::move(files);

    j["summary"] = {{"asserted", asserted},
                    {"passed", passed},
                    {"all_pass", asserted == passed}};
    return j.dump(2) + "\n";
}

ReportBundle report_from_json(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(0, 0, std::string("not a report JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError(0, 0, "not a report JSON: expected an object at the top level");
    ReportBundle r;
    r.command = j.value("command", "");
    r.model = j.value("model", "");
    r.title = j.value("title", "");
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("config") && j["config"].is_object())
        for (const auto& [k, v] : j["config"].items())
            r.config_echo.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    if (j.contains("checks") && j["checks"].is_array()) {
        for (const auto& jc : j["checks"]) {
            Check c;
            c.name = jc.value("name", "");
            c.statement = jc.value("statement", "");
            c.asserted = jc.value("kind", "asserted") == std::string("asserted");
            c.value = double_field(jc, "value", 0.0,
                                   std::numeric_limits<double>::quiet_NaN());
            c.tolerance = double_field(jc, "tolerance", 0.0,
                                       std::numeric_limits<double>::infinity());
            c.pass = jc.value("pass", true);
            c.detail = jc.value("detail", "");
            r.checks.push_back(std::move(c));
        }
    }
    if (j.contains("files") && j["files"].is_array())
        for (const auto& f : j["files"])
            if (f.is_string()) r.files.push_back({f.get<std::string>(), ""});
    return r;
}

namespace {

const char* kGreen = "\x1b[32m";
const char* kRed = "\x1b[31m";
const char* kDim = "\x1b[2m";
const char* kReset = "\x1b[0m";

void pad_to(std::string& s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
}

} // namespace

std::string render_table(const ReportBundle& report, bool use_color) {
    std::string out;
    out += report.title.empty() ? report.model : report.title;
    out += "  [" + report.command + ", model " + report.model + ", seed "
           + std::to_string(report.seed) + "]\n";

    std::size_t name_w = 5, value_w = 5, tol_w = 9;
    std::vector<std::string> values, tols;
    values.reserve(report.checks.size());
    tols.reserve(report.checks.size());
    for (const Check& c : report.checks) {
        name_w = std::max(name_w, c.name.size());
        values.push_back(format_double(c.value));
        value_w = std::max(value_w, values.back().size());
        tols.push_back(c.asserted ? format_double(c.tolerance) : std::string("-"));
        tol_w = std::max(tol_w, tols.back().size());
    }

    std::string header = "  check";
    pad_to(header, 2 + name_w + 2);
    header += "value";
    pad_to(header, 2 + name_w + 2 + value_w + 2);
    header += "tolerance";
    pad_to(header, 2 + name_w + 2 + value_w + 2 + tol_w + 2);
    header += "status\n";
    out += header;

    std::size_t asserted = 0, passed = 0;
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const Check& c = report.checks[i];
        std::string line = "  " + c.name;
        pad_to(line, 2 + name_w + 2);
        line += values[i];
        pad_to(line, 2 + name_w + 2 + value_w + 2);
        line += tols[i];
        pad_to(line, 2 + name_w + 2 + value_w + 2 + tol_w + 2);
        if (c.asserted) {
            ++asserted;
            if (c.pass) ++passed;
            if (use_color)
                line += c.pass ? std::string(kGreen) + "PASS" + kReset
                               : std::string(kRed) + "FAIL" + kReset;
            else
                line += c.pass ? "PASS" : "FAIL";
        } else {
            line += use_color ? std::string(kDim) + "info" + kReset : "info";
        }
        out += line + "\n";
        if (!c.detail.empty()) out += "        " + c.detail + "\n";
    }
    out += "summary: " + std::to_string(passed) + "/" + std::to_string(asserted)
           + " asserted checks passed\n";
    return out;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw InternalError("csv: header and column counts differ");
    std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw InternalError("csv: ragged columns");

    std::string out;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out += ',';
        out += header[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) out += ',';
            out += format_double(columns[j][i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace pdmlab
