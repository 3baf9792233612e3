#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <pdmlab.h>

namespace {

struct ConfigGuard {
    pdmlab_config* c = nullptr;
    ~ConfigGuard() { pdmlab_config_free(c); }
};

struct ReportGuard {
    pdmlab_report* r = nullptr;
    ~ReportGuard() { pdmlab_report_free(r); }
};

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { pdmlab_string_free(s); }
};

} // namespace

TEST_CASE("status names cover the enum") {
    CHECK(std::string(pdmlab_status_name(PDMLAB_OK)) == "ok");
    CHECK(std::strlen(pdmlab_status_name(PDMLAB_E_DOMAIN)) > 0);
    CHECK(std::strlen(pdmlab_status_name(PDMLAB_E_BAD_HANDLE)) > 0);
}

TEST_CASE("full lifecycle: configure, run, read the report") {
    ConfigGuard cfg;
    REQUIRE(pdmlab_config_create(&cfg.c) == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "model", "ml1") == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "periods", "2") == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "samples", "201") == PDMLAB_OK);

    ReportGuard rep;
    REQUIRE(pdmlab_run_simulate(cfg.c, &rep.r) == PDMLAB_OK);
    CHECK(pdmlab_report_passed(rep.r) == 1);

    StringGuard js;
    REQUIRE(pdmlab_report_json(rep.r, &js.s) == PDMLAB_OK);
    CHECK(std::string(js.s).find("\"command\": \"simulate\"") != std::string::npos);

    StringGuard table;
    REQUIRE(pdmlab_report_table(rep.r, 0, &table.s) == PDMLAB_OK);
    CHECK(std::string(table.s).find("summary:") != std::string::npos);
    CHECK(std::string(table.s).find("\x1b[") == std::string::npos);

    REQUIRE(pdmlab_report_file_count(rep.r) == 1);
    CHECK(std::string(pdmlab_report_file_name(rep.r, 0)) == "ml1_trajectory.csv");
    const char* content = pdmlab_report_file_content(rep.r, 0);
    REQUIRE(content != nullptr);
    CHECK(std::string(content).substr(0, 2) == "t,");
    CHECK(pdmlab_report_file_name(rep.r, 99) == nullptr);
}

TEST_CASE("parse accepts the structured text and set layers on top") {
    ConfigGuard cfg;
    REQUIRE(pdmlab_config_parse("model = ml2\nperiods = 1\n", &cfg.c) == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "integrator.rtol", "1e-11") == PDMLAB_OK);
    ReportGuard rep;
    REQUIRE(pdmlab_run_map(cfg.c, &rep.r) == PDMLAB_OK);
    StringGuard js;
    REQUIRE(pdmlab_report_json(rep.r, &js.s) == PDMLAB_OK);
    CHECK(std::string(js.s).find("\"model\": \"ml2\"") != std::string::npos);
    CHECK(std::string(js.s).find("\"integrator.rtol\": \"1e-11\"") != std::string::npos);
}

TEST_CASE("errors carry a status and a thread-local message") {
    pdmlab_config* raw = nullptr;
    CHECK(pdmlab_config_parse("model = nosuch\n", &raw) == PDMLAB_E_PARSE);
    CHECK(raw == nullptr);
    CHECK(std::string(pdmlab_last_error()).find("nosuch") != std::string::npos);

    ConfigGuard cfg;
    REQUIRE(pdmlab_config_create(&cfg.c) == PDMLAB_OK);
    CHECK(pdmlab_config_set(cfg.c, "wibble", "1") == PDMLAB_E_PARSE);
    CHECK(std::string(pdmlab_last_error()).find("wibble") != std::string::npos);

    // Keys are checked at set time, physics at run time.
    REQUIRE(pdmlab_config_set(cfg.c, "model", "ml2") == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "sign", "+1") == PDMLAB_OK);
    ReportGuard rep;
    CHECK(pdmlab_run_verify(cfg.c, &rep.r) == PDMLAB_E_VALIDATION);
    CHECK(rep.r == nullptr);
    CHECK(std::string(pdmlab_last_error()).find("ml2") != std::string::npos);
}

TEST_CASE("null handles are rejected, not dereferenced") {
    CHECK(pdmlab_config_create(nullptr) == PDMLAB_E_BAD_HANDLE);
    CHECK(pdmlab_run_simulate(nullptr, nullptr) == PDMLAB_E_BAD_HANDLE);
    CHECK(pdmlab_report_passed(nullptr) == 0);
    CHECK(pdmlab_report_file_count(nullptr) == 0);
    char* out = nullptr;
    CHECK(pdmlab_report_json(nullptr, &out) == PDMLAB_E_BAD_HANDLE);
    CHECK(out == nullptr);
    pdmlab_config_free(nullptr); // must be a no-op
    pdmlab_report_free(nullptr);
    pdmlab_string_free(nullptr);
}

TEST_CASE("model listing names every catalog entry") {
    StringGuard s;
    REQUIRE(pdmlab_list_models(&s.s) == PDMLAB_OK);
    const std::string text(s.s);
    for (const char* name : {"ml1", "ml2", "ml3", "shifted-linear", "isotonic-pdm",
                             "linear", "shifted", "isotonic"})
        CHECK(text.find(name) != std::string::npos);
}

TEST_CASE("a report json re-renders as a table") {
    ConfigGuard cfg;
    REQUIRE(pdmlab_config_create(&cfg.c) == PDMLAB_OK);
    REQUIRE(pdmlab_config_set(cfg.c, "periods", "1") == PDMLAB_OK);
    ReportGuard rep;
    REQUIRE(pdmlab_run_verify(cfg.c, &rep.r) == PDMLAB_OK);
    StringGuard js;
    REQUIRE(pdmlab_report_json(rep.r, &js.s) == PDMLAB_OK);
    StringGuard table;
    REQUIRE(pdmlab_render_report_json(js.s, 0, &table.s) == PDMLAB_OK);
    CHECK(std::string(table.s).find("summary:") != std::string::npos);
    char* bad = nullptr;
    CHECK(pdmlab_render_report_json("{ bad", 0, &bad) == PDMLAB_E_PARSE);
    CHECK(bad == nullptr);
}

TEST_CASE("identical configurations produce identical report bytes") {
    auto run_json = []() {
        ConfigGuard cfg;
        REQUIRE(pdmlab_config_create(&cfg.c) == PDMLAB_OK);
        REQUIRE(pdmlab_config_set(cfg.c, "seed", "42") == PDMLAB_OK);
        REQUIRE(pdmlab_config_set(cfg.c, "periods", "2") == PDMLAB_OK);
        ReportGuard rep;
        REQUIRE(pdmlab_run_verify(cfg.c, &rep.r) == PDMLAB_OK);
        StringGuard js;
        REQUIRE(pdmlab_report_json(rep.r, &js.s) == PDMLAB_OK);
        return std::string(js.s);
    };
    CHECK(run_json() == run_json());
}
