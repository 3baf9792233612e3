#include "pdmlab.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "pdmlab/config.hpp"
#include "pdmlab/errors.hpp"
#include "pdmlab/experiment.hpp"
#include "pdmlab/report.hpp"

using namespace pdmlab;

// Handles keep the raw text plus the override list so that resolution stays
// order-independent: the model key is located first, its defaults applied,
// then every explicit key, no matter when it arrived.
struct pdmlab_config {
    std::string text;
    std::vector<std::string> overrides;

    ExperimentConfig resolve() const { return load_config(text, overrides); }
};

struct pdmlab_report {
    ReportBundle bundle;
};

namespace {

thread_local std::string t_last_error;

pdmlab_status status_of(errc c) {
    switch (c) {
        case errc::domain: return PDMLAB_E_DOMAIN;
        case errc::input: return PDMLAB_E_INPUT;
        case errc::lookup: return PDMLAB_E_LOOKUP;
        case errc::parameter: return PDMLAB_E_PARAMETER;
        case errc::singularity: return PDMLAB_E_SINGULARITY;
        case errc::monotonicity: return PDMLAB_E_MONOTONICITY;
        case errc::unsupported: return PDMLAB_E_UNSUPPORTED;
        case errc::parse: return PDMLAB_E_PARSE;
        case errc::validation: return PDMLAB_E_VALIDATION;
        case errc::truncated: return PDMLAB_E_TRUNCATED;
        case errc::step_limit: return PDMLAB_E_STEP_LIMIT;
        case errc::io: return PDMLAB_E_IO;
        case errc::internal: return PDMLAB_E_INTERNAL;
    }
    return PDMLAB_E_INTERNAL;
}

template <class F>
pdmlab_status guarded(F&& f) {
    try {
        f();
        t_last_error.clear();
        return PDMLAB_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return PDMLAB_E_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return PDMLAB_E_INTERNAL;
    }
}

pdmlab_status bad_handle(const char* what) {
    t_last_error = std::string(what) + ": null handle";
    return PDMLAB_E_BAD_HANDLE;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pdmlab_status run_common(const pdmlab_config* cfg, pdmlab_report** out,
                         ReportBundle (*run)(const ExperimentConfig&)) {
    if (!cfg || !out) return bad_handle("run");
    *out = nullptr;
    return guarded([&] {
        ReportBundle bundle = run(cfg->resolve());
        *out = new pdmlab_report{std::move(bundle)};
    });
}

} // namespace

extern "C" {

pdmlab_status pdmlab_config_create(pdmlab_config** out) {
    if (!out) return bad_handle("pdmlab_config_create");
    *out = nullptr;
    return guarded([&] { *out = new pdmlab_config{}; });
}

pdmlab_status pdmlab_config_parse(const char* text, pdmlab_config** out) {
    if (!text || !out) return bad_handle("pdmlab_config_parse");
    *out = nullptr;
    return guarded([&] {
        std::string body(text);
        (void)parse_config(body); // surface grammar errors immediately
        *out = new pdmlab_config{std::move(body), {}};
    });
}

pdmlab_status pdmlab_config_set(pdmlab_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return bad_handle("pdmlab_config_set");
    return guarded([&] {
        std::string entry = std::string(key) + "=" + value;
        std::vector<std::string> trial = cfg->overrides;
        trial.push_back(entry);
        (void)load_config(cfg->text, trial); // reject unknown keys and bad values now
        cfg->overrides.push_back(std::move(entry));
    });
}

void pdmlab_config_free(pdmlab_config* cfg) { delete cfg; }

pdmlab_status pdmlab_run_simulate(const pdmlab_config* cfg, pdmlab_report** out) {
    return run_common(cfg, out, &run_simulate);
}

pdmlab_status pdmlab_run_verify(const pdmlab_config* cfg, pdmlab_report** out) {
    return run_common(cfg, out, &run_verify);
}

pdmlab_status pdmlab_run_map(const pdmlab_config* cfg, pdmlab_report** out) {
    return run_common(cfg, out, &run_map);
}

int pdmlab_report_passed(const pdmlab_report* rep) {
    return rep && rep->bundle.all_asserted_pass() ? 1 : 0;
}

pdmlab_status pdmlab_report_json(const pdmlab_report* rep, char** out) {
    if (!rep || !out) return bad_handle("pdmlab_report_json");
    *out = nullptr;
    return guarded([&] { *out = copy_string(report_to_json(rep->bundle)); });
}

pdmlab_status pdmlab_report_table(const pdmlab_report* rep, int use_color, char** out) {
    if (!rep || !out) return bad_handle("pdmlab_report_table");
    *out = nullptr;
    return guarded([&] { *out = copy_string(render_table(rep->bundle, use_color != 0)); });
}

size_t pdmlab_report_file_count(const pdmlab_report* rep) {
    return rep ? rep->bundle.files.size() : 0;
}

const char* pdmlab_report_file_name(const pdmlab_report* rep, size_t index) {
    if (!rep || index >= rep->bundle.files.size()) return nullptr;
    return rep->bundle.files[index].name.c_str();
}

const char* pdmlab_report_file_content(const pdmlab_report* rep, size_t index) {
    if (!rep || index >= rep->bundle.files.size()) return nullptr;
    return rep->bundle.files[index].content.c_str();
}

void pdmlab_report_free(pdmlab_report* rep) { delete rep; }

pdmlab_status pdmlab_list_models(char** out) {
    if (!out) return bad_handle("pdmlab_list_models");
    *out = nullptr;
    return guarded([&] { *out = copy_string(list_models_text()); });
}

pdmlab_status pdmlab_render_report_json(const char* json_text, int use_color, char** out) {
    if (!json_text || !out) return bad_handle("pdmlab_render_report_json");
    *out = nullptr;
    return guarded([&] {
        const ReportBundle bundle = report_from_json(json_text);
        *out = copy_string(render_table(bundle, use_color != 0));
    });
}

const char* pdmlab_last_error(void) { return t_last_error.c_str(); }

const char* pdmlab_status_name(pdmlab_status s) {
    switch (s) {
        case PDMLAB_OK: return "ok";
        case PDMLAB_E_DOMAIN: return "domain";
        case PDMLAB_E_INPUT: return "input";
        case PDMLAB_E_LOOKUP: return "lookup";
        case PDMLAB_E_PARAMETER: return "parameter";
        case PDMLAB_E_SINGULARITY: return "singularity";
        case PDMLAB_E_MONOTONICITY: return "monotonicity";
        case PDMLAB_E_UNSUPPORTED: return "unsupported";
        case PDMLAB_E_PARSE: return "parse";
        case PDMLAB_E_VALIDATION: return "validation";
        case PDMLAB_E_TRUNCATED: return "truncated";
        case PDMLAB_E_STEP_LIMIT: return "step-limit";
        case PDMLAB_E_IO: return "io";
        case PDMLAB_E_INTERNAL: return "internal";
        case PDMLAB_E_BAD_HANDLE: return "bad-handle";
    }
    return "unknown";
}

void pdmlab_string_free(char* s) { delete[] s; }

} // extern "C"
