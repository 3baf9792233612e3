#include "pdmlab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <string_view>
#include <utility>

#include "pdmlab/errors.hpp"

namespace pdmlab {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// One `key = value` occurrence. File entries carry their position; command
// line overrides use line 0 and describe themselves in error messages.
struct Entry {
    int line = 0;
    int column = 0;
    std::string section; // "" or "integrator"
    std::string key;
    std::string value;
    std::string origin;  // override text, empty for file entries
};

[[noreturn]] void fail(const Entry& e, const std::string& msg) {
    if (e.origin.empty()) throw ParseError(e.line, e.column, msg);
    throw ParseError(0, 0, "override '" + e.origin + "': " + msg);
}

double parse_double(const Entry& e, std::string_view token) {
    token = trim(token);
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        fail(e, "expected a number, got '" + std::string(token) + "'");
    if (!std::isfinite(out)) fail(e, "number out of range: '" + std::string(token) + "'");
    return out;
}

long long parse_integer(const Entry& e) {
    std::string_view token = trim(e.value);
    long long out = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        fail(e, "expected an integer, got '" + std::string(token) + "'");
    return out;
}

std::uint64_t parse_u64(const Entry& e) {
    std::string_view token = trim(e.value);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        fail(e, "expected a non-negative integer, got '" + std::string(token) + "'");
    return out;
}

Vec2 parse_vec2(const Entry& e) {
    std::string_view v = trim(e.value);
    std::size_t cut = v.find(',');
    if (cut == std::string_view::npos) {
        // two tokens separated by whitespace
        std::size_t i = 0;
        while (i < v.size() && !std::isspace(static_cast<unsigned char>(v[i]))) ++i;
        cut = i;
        if (cut == v.size()) fail(e, "expected two numbers, got '" + std::string(v) + "'");
        return {parse_double(e, v.substr(0, cut)), parse_double(e, v.substr(cut))};
    }
    return {parse_double(e, v.substr(0, cut)), parse_double(e, v.substr(cut + 1))};
}

int parse_sign_value(const Entry& e) {
    std::string_view v = trim(e.value);
    if (v == "+" || v == "+1" || v == "1") return +1;
    if (v == "-" || v == "-1") return -1;
    fail(e, "expected '+' or '-', got '" + std::string(v) + "'");
}

void apply_integrator_key(IntegratorConfig& ic, const Entry& e) {
    if (e.key == "method") {
        std::string_view v = trim(e.value);
        if (v == "rk45") ic.method = IntegratorConfig::Method::rk45;
        else if (v == "rk4") ic.method = IntegratorConfig::Method::rk4;
        else fail(e, "unknown method '" + std::string(v) + "' (rk45 or rk4)");
    } else if (e.key == "rtol") {
        ic.rtol = parse_double(e, e.value);
    } else if (e.key == "atol") {
        ic.atol = parse_double(e, e.value);
    } else if (e.key == "h-init") {
        ic.h_init = parse_double(e, e.value);
    } else if (e.key == "h-min") {
        ic.h_min = parse_double(e, e.value);
    } else if (e.key == "h-max") {
        ic.h_max = parse_double(e, e.value);
    } else if (e.key == "max-steps") {
        long long n = parse_integer(e);
        if (n < 1) fail(e, "max-steps must be at least 1");
        ic.max_steps = static_cast<std::size_t>(n);
    } else {
        fail(e, "unknown integrator key '" + e.key + "'");
    }
}

void apply_key(ExperimentConfig& cfg, const Entry& e) {
    if (e.section == "integrator") {
        apply_integrator_key(cfg.integrator, e);
        return;
    }
    ModelParams& p = cfg.params;
    if (e.key == "model") {
        return; // consumed in a first pass so defaults resolve order-independently
    } else if (e.key == "sign") {
        p.sigma = parse_sign_value(e);
    } else if (e.key == "beta") {
        p.beta = parse_double(e, e.value);
    } else if (e.key == "omega") {
        p.omega = parse_double(e, e.value);
    } else if (e.key == "n1") {
        long long n = parse_integer(e);
        if (n < 1) fail(e, "n1 must be a positive integer");
        p.n1 = static_cast<int>(n);
    } else if (e.key == "n2") {
        long long n = parse_integer(e);
        if (n < 1) fail(e, "n2 must be a positive integer");
        p.n2 = static_cast<int>(n);
    } else if (e.key == "xi") {
        p.xi = parse_double(e, e.value);
    } else if (e.key == "gamma") {
        p.gamma = parse_vec2(e);
    } else if (e.key == "eta") {
        p.eta = parse_vec2(e);
    } else if (e.key == "amplitude") {
        p.amplitude = parse_vec2(e);
    } else if (e.key == "phase") {
        p.phase = parse_double(e, e.value);
    } else if (e.key == "strength") {
        p.strength = parse_vec2(e);
    } else if (e.key == "energy") {
        p.energy = parse_vec2(e);
    } else if (e.key == "delta") {
        p.delta = parse_vec2(e);
    } else if (e.key == "frequency-case") {
        std::string_view v = trim(e.value);
        if (v == "auto") p.frequency_case = IsotonicFrequencyCase::automatic;
        else if (v == "isotropic") p.frequency_case = IsotonicFrequencyCase::isotropic;
        else if (v == "anisotropic") p.frequency_case = IsotonicFrequencyCase::anisotropic;
        else if (v == "equal-amplitude") p.frequency_case = IsotonicFrequencyCase::equal_amplitude;
        else fail(e, "unknown frequency-case '" + std::string(v)
                         + "' (auto, isotropic, anisotropic, equal-amplitude)");
    } else if (e.key == "energy-sign") {
        p.energy_sign = parse_sign_value(e);
    } else if (e.key == "periods") {
        cfg.periods = parse_double(e, e.value);
    } else if (e.key == "samples") {
        long long n = parse_integer(e);
        if (n < 2) fail(e, "samples must be at least 2");
        cfg.integrator.samples = static_cast<std::size_t>(n);
    } else if (e.key == "seed") {
        cfg.seed = parse_u64(e);
    } else {
        fail(e, "unknown key '" + e.key + "'");
    }
}

std::vector<Entry> parse_entries(const std::string& text) {
    std::vector<Entry> entries;
    std::string section;
    int section_line = 0;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view raw(text.data() + pos, eol - pos);
        ++line_no;
        std::size_t line_start = pos;
        pos = eol + 1;

        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);

        std::size_t first = 0;
        while (first < raw.size() && std::isspace(static_cast<unsigned char>(raw[first])))
            ++first;
        std::string_view body = trim(raw);
        if (body.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        int column = static_cast<int>(first) + 1;

        if (body == "}") {
            if (section.empty())
                throw ParseError(line_no, column, "'}' without an open block");
            section.clear();
            if (eol == text.size()) break;
            continue;
        }
        if (body.back() == '{') {
            std::string_view name = trim(body.substr(0, body.size() - 1));
            if (!section.empty())
                throw ParseError(line_no, column, "blocks do not nest");
            if (name != "integrator")
                throw ParseError(line_no, column, "unknown block '" + std::string(name) + "'");
            section = "integrator";
            section_line = line_no;
            if (eol == text.size()) break;
            continue;
        }

        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, column, "expected 'key = value'");
        std::string_view key = trim(body.substr(0, eq));
        std::string_view value = trim(body.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, column, "empty key");
        if (value.empty())
            throw ParseError(line_no, column, "empty value for key '" + std::string(key) + "'");

        Entry e;
        e.line = line_no;
        e.column = column;
        e.section = section;
        e.key = std::string(key);
        e.value = std::string(value);
        entries.push_back(std::move(e));
        (void)line_start;
        if (eol == text.size()) break;
    }
    if (!section.empty())
        throw ParseError(section_line, 1, "unterminated 'integrator {' block");
    return entries;
}

void reject_duplicates(const std::vector<Entry>& entries) {
    std::map<std::pair<std::string, std::string>, int> seen;
    for (const Entry& e : entries) {
        if (!e.origin.empty()) continue; // later overrides deliberately re-set keys
        auto key = std::make_pair(e.section, e.key);
        auto [it, inserted] = seen.emplace(key, e.line);
        if (!inserted)
            fail(e, "duplicate key '" + e.key + "' (first set on line "
                        + std::to_string(it->second) + ")");
    }
}

ExperimentConfig build(const std::vector<Entry>& file_entries,
                       const std::vector<Entry>& override_entries) {
    reject_duplicates(file_entries);

    ExperimentConfig cfg;
    // The model choice picks the defaults every other key lands on, so it is
    // resolved first regardless of where it appears.
    const Entry* model_entry = nullptr;
    for (const Entry& e : file_entries)
        if (e.section.empty() && e.key == "model") model_entry = &e;
    for (const Entry& e : override_entries)
        if (e.section.empty() && e.key == "model") model_entry = &e;
    if (model_entry) {
        std::string name(trim(model_entry->value));
        if (!catalog_has(name)) fail(*model_entry, "unknown model '" + name + "'");
        cfg.model = name;
    }
    cfg.params = catalog_defaults(cfg.model);

    for (const Entry& e : file_entries) apply_key(cfg, e);
    for (const Entry& e : override_entries) apply_key(cfg, e);
    return cfg;
}

Entry parse_override(const std::string& text) {
    std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ParseError(0, 0, "override '" + text + "': expected key=value");
    std::string_view key = trim(std::string_view(text).substr(0, eq));
    std::string_view value = trim(std::string_view(text).substr(eq + 1));
    Entry e;
    e.origin = text;
    std::size_t dot = key.find('.');
    if (dot != std::string_view::npos) {
        e.section = std::string(trim(key.substr(0, dot)));
        e.key = std::string(trim(key.substr(dot + 1)));
        if (e.section != "integrator")
            fail(e, "unknown block '" + e.section + "'");
    } else {
        e.key = std::string(key);
    }
    e.value = std::string(value);
    if (e.key.empty()) fail(e, "empty key");
    if (e.value.empty()) fail(e, "empty value");
    return e;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    return build(parse_entries(text), {});
}

ExperimentConfig load_config(const std::string& text,
                             const std::vector<std::string>& overrides) {
    std::vector<Entry> extra;
    extra.reserve(overrides.size());
    for (const std::string& o : overrides) extra.push_back(parse_override(o));
    return build(parse_entries(text), extra);
}

void validate_config(const ExperimentConfig& cfg) {
    auto bad = [](const std::string& key, const std::string& why) {
        throw ValidationError("invalid config: " + key + " " + why);
    };
    if (!(cfg.periods > 0.0)) bad("periods", "must be positive");
    if (cfg.integrator.samples < 2) bad("samples", "must be at least 2");
    if (!(cfg.integrator.rtol > 0.0)) bad("integrator.rtol", "must be positive");
    if (!(cfg.integrator.atol > 0.0)) bad("integrator.atol", "must be positive");
    if (!(cfg.integrator.h_min > 0.0)) bad("integrator.h-min", "must be positive");
    if (cfg.integrator.h_max < 0.0) bad("integrator.h-max", "must be non-negative");
    if (cfg.integrator.h_init < 0.0) bad("integrator.h-init", "must be non-negative");
    if (!(cfg.params.omega > 0.0)) bad("omega", "must be positive");
    if (cfg.params.sigma != 1.0 && cfg.params.sigma != -1.0)
        bad("sign", "must be + or -");

    try {
        (void)catalog_build(cfg.model, cfg.params);
    } catch (const ParameterError& e) {
        throw ValidationError("model '" + cfg.model + "': " + e.what());
    } catch (const DomainError& e) {
        throw ValidationError("model '" + cfg.model + "': " + e.what());
    }
}

} // namespace pdmlab
