// Command-line front end. Talks to the library exclusively through the C API
// in pdmlab.h; all physics and reporting live behind that boundary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "pdmlab.h"

namespace {

namespace fs = std::filesystem;

struct RunOptions {
    std::string model;
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "both";
    std::vector<std::string> sets;
    std::string seed;
    std::string periods;
};

[[noreturn]] void die(pdmlab_status st) {
    std::fprintf(stderr, "pdmlab: %s error: %s\n", pdmlab_status_name(st),
                 pdmlab_last_error());
    std::exit(2);
}

void check(pdmlab_status st) {
    if (st != PDMLAB_OK) die(st);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "pdmlab: cannot read '%s'\n", path.c_str());
        std::exit(2);
    }
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_file(const fs::path& path, const char* content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        std::fprintf(stderr, "pdmlab: cannot write '%s'\n", path.string().c_str());
        std::exit(2);
    }
}

bool want_color() {
    const char* no_color = std::getenv("NO_COLOR");
    if (no_color && *no_color) return false;
    return isatty(fileno(stdout)) != 0;
}

pdmlab_config* build_config(const RunOptions& opt) {
    pdmlab_config* cfg = nullptr;
    if (!opt.config_path.empty()) {
        const std::string text = read_file(opt.config_path);
        check(pdmlab_config_parse(text.c_str(), &cfg));
    } else {
        check(pdmlab_config_create(&cfg));
    }
    if (!opt.model.empty()) check(pdmlab_config_set(cfg, "model", opt.model.c_str()));
    if (!opt.seed.empty()) check(pdmlab_config_set(cfg, "seed", opt.seed.c_str()));
    if (!opt.periods.empty())
        check(pdmlab_config_set(cfg, "periods", opt.periods.c_str()));
    for (const std::string& kv : opt.sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::fprintf(stderr, "pdmlab: --set expects key=value, got '%s'\n",
                         kv.c_str());
            std::exit(2);
        }
        check(pdmlab_config_set(cfg, kv.substr(0, eq).c_str(),
                                kv.substr(eq + 1).c_str()));
    }
    return cfg;
}

int run_command(const char* name,
                pdmlab_status (*run)(const pdmlab_config*, pdmlab_report**),
                const RunOptions& opt) {
    pdmlab_config* cfg = build_config(opt);
    pdmlab_report* rep = nullptr;
    const pdmlab_status st = run(cfg, &rep);
    pdmlab_config_free(cfg);
    if (st != PDMLAB_OK) die(st);

    char* table = nullptr;
    check(pdmlab_report_table(rep, want_color() ? 1 : 0, &table));
    std::fputs(table, stdout);
    pdmlab_string_free(table);

    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "pdmlab: cannot create '%s': %s\n", opt.out_dir.c_str(),
                     ec.message().c_str());
        std::exit(2);
    }
    if (opt.format != "csv") {
        char* json = nullptr;
        check(pdmlab_report_json(rep, &json));
        write_file(fs::path(opt.out_dir) / (std::string(name) + "_report.json"), json);
        pdmlab_string_free(json);
    }
    if (opt.format != "json") {
        const size_t n = pdmlab_report_file_count(rep);
        for (size_t i = 0; i < n; ++i)
            write_file(fs::path(opt.out_dir) / pdmlab_report_file_name(rep, i),
                       pdmlab_report_file_content(rep, i));
    }
    const int passed = pdmlab_report_passed(rep);
    pdmlab_report_free(rep);
    return passed ? 0 : 1;
}

void add_run_options(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("model", opt.model, "catalog model name (see list-models)");
    cmd->add_option("--config", opt.config_path, "config file (key = value grammar)");
    cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "seed for the property sweeps");
    cmd->add_option("--periods", opt.periods, "run length in model periods");
    cmd->add_option("--format", opt.format, "which outputs to write")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    cmd->add_option("--set", opt.sets, "override key=value (repeatable)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for position-dependent-mass dynamics"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list-models", "list catalog models and defaults");

    RunOptions sim_opt, ver_opt, map_opt;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "integrate a model and emit the trajectory with its mapped image");
    add_run_options(sim_cmd, sim_opt);
    auto* ver_cmd =
        app.add_subcommand("verify", "run the model's full verification ledger");
    add_run_options(ver_cmd, ver_opt);
    auto* map_cmd = app.add_subcommand(
        "map", "integrate, map to reference coordinates and compare to the reference "
               "solution");
    add_run_options(map_cmd, map_opt);

    std::string report_path;
    auto* rep_cmd = app.add_subcommand("report", "render a report JSON file as a table");
    rep_cmd->add_option("file", report_path, "report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        char* text = nullptr;
        check(pdmlab_list_models(&text));
        std::fputs(text, stdout);
        pdmlab_string_free(text);
        return 0;
    }
    if (sim_cmd->parsed()) return run_command("simulate", &pdmlab_run_simulate, sim_opt);
    if (ver_cmd->parsed()) return run_command("verify", &pdmlab_run_verify, ver_opt);
    if (map_cmd->parsed()) return run_command("map", &pdmlab_run_map, map_opt);
    if (rep_cmd->parsed()) {
        const std::string text = read_file(report_path);
        char* table = nullptr;
        check(pdmlab_render_report_json(text.c_str(), want_color() ? 1 : 0, &table));
        std::fputs(table, stdout);
        pdmlab_string_free(table);
        return 0;
    }
    return 0;
}
