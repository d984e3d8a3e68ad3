#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "qswap/qswap.h"

TEST_CASE("version string") {
    CHECK(std::strlen(qswap_version()) > 0);
}

TEST_CASE("builtin load, run, render") {
    qswap_protocol* p = nullptr;
    REQUIRE(qswap_protocol_load("builtin:cascade-fock-phi+", nullptr, nullptr, &p) ==
            QSWAP_OK);
    CHECK(std::string(qswap_protocol_name(p)) == "cascade-fock-phi+");

    qswap_report* r = nullptr;
    REQUIRE(qswap_run(p, nullptr, &r) == QSWAP_OK);
    CHECK(qswap_report_all_passed(r) == 1);

    char* json = nullptr;
    REQUIRE(qswap_report_render(r, "json", nullptr, &json) == QSWAP_OK);
    std::string doc(json);
    CHECK(doc.find("\"schema_version\": 1") != std::string::npos);
    CHECK(doc.find("\"bell_label\": \"phi+\"") != std::string::npos);
    CHECK(doc.find("\"all_assertions_passed\": true") != std::string::npos);
    qswap_string_free(json);

    // identical renders are byte-identical
    char *a = nullptr, *b = nullptr;
    REQUIRE(qswap_report_render(r, "json", nullptr, &a) == QSWAP_OK);
    REQUIRE(qswap_report_render(r, "json", nullptr, &b) == QSWAP_OK);
    CHECK(std::string(a) == std::string(b));
    qswap_string_free(a);
    qswap_string_free(b);

    qswap_report_free(r);
    qswap_protocol_free(p);
}

TEST_CASE("two independent runs render identically") {
    std::string out[2];
    for (int i = 0; i < 2; ++i) {
        qswap_protocol* p = nullptr;
        REQUIRE(qswap_protocol_load("builtin:swap-lambda-fock", nullptr, nullptr, &p) ==
                QSWAP_OK);
        qswap_report* r = nullptr;
        REQUIRE(qswap_run(p, nullptr, &r) == QSWAP_OK);
        char* text = nullptr;
        REQUIRE(qswap_report_render(r, "json", nullptr, &text) == QSWAP_OK);
        out[i] = text;
        qswap_string_free(text);
        qswap_report_free(r);
        qswap_protocol_free(p);
    }
    CHECK(out[0] == out[1]);
}

TEST_CASE("error paths set codes and messages") {
    qswap_protocol* p = nullptr;
    CHECK(qswap_protocol_load("builtin:not-a-thing", nullptr, nullptr, &p) ==
          QSWAP_ERR_ARGUMENT);
    CHECK(std::string(qswap_last_error()).find("not-a-thing") != std::string::npos);

    CHECK(qswap_protocol_load("/no/such/file.qsp", nullptr, nullptr, &p) == QSWAP_ERR_IO);

    CHECK(qswap_protocol_parse("qsp 1\nrotate A9 MA\n", nullptr, nullptr, nullptr, &p) ==
          QSWAP_ERR_PARSE);
    CHECK(std::string(qswap_last_error()).find("2:8") != std::string::npos);

    CHECK(qswap_protocol_load(nullptr, nullptr, nullptr, &p) == QSWAP_ERR_ARGUMENT);
}

TEST_CASE("zero-probability postselection maps to its own status") {
    qswap_protocol* p = nullptr;
    REQUIRE(qswap_protocol_parse(
                "qsp 1\natom A1 cascade\nprepare A1 f\npostselect A1 g\n", "t", nullptr,
                nullptr, &p) == QSWAP_OK);
    qswap_report* r = nullptr;
    CHECK(qswap_run(p, nullptr, &r) == QSWAP_ERR_ZERO_BRANCH);
    qswap_protocol_free(p);
}

TEST_CASE("parameter overrides reach the protocol") {
    double alpha = 1.0;
    qswap_protocol* p = nullptr;
    REQUIRE(qswap_protocol_load("builtin:cascade-coherent-phi+", &alpha, nullptr, &p) ==
            QSWAP_OK);
    char* text = nullptr;
    REQUIRE(qswap_protocol_serialize(p, &text) == QSWAP_OK);
    CHECK(std::string(text).find("param alpha 1\n") != std::string::npos);
    qswap_string_free(text);
    qswap_protocol_free(p);
}

TEST_CASE("serialize parses back through the C API") {
    qswap_protocol* p = nullptr;
    REQUIRE(qswap_protocol_load("builtin:lambda-fock-psi-", nullptr, nullptr, &p) ==
            QSWAP_OK);
    char* text = nullptr;
    REQUIRE(qswap_protocol_serialize(p, &text) == QSWAP_OK);
    qswap_protocol* q = nullptr;
    REQUIRE(qswap_protocol_parse(text, nullptr, nullptr, nullptr, &q) == QSWAP_OK);
    char* text2 = nullptr;
    REQUIRE(qswap_protocol_serialize(q, &text2) == QSWAP_OK);
    CHECK(std::string(text) == std::string(text2));
    qswap_string_free(text);
    qswap_string_free(text2);
    qswap_protocol_free(p);
    qswap_protocol_free(q);
}

TEST_CASE("sweep emits one row per grid point plus a header") {
    char* csv = nullptr;
    REQUIRE(qswap_sweep_csv("prepare-cascade-coherent", "alpha", 0.5, 2.0, 0.5, nullptr,
                            nullptr, nullptr, &csv) == QSWAP_OK);
    std::string s(csv);
    qswap_string_free(csv);
    int rows = 0;
    for (char c : s) rows += (c == '\n');
    CHECK(rows == 1 + 4);
    CHECK(s.rfind("parameter,value,success_probability,conditional_fidelity\n", 0) == 0);

    CHECK(qswap_sweep_csv("prepare-cascade-coherent", "alpha", 1.0, 2.0, -0.5, nullptr,
                          nullptr, nullptr, &csv) == QSWAP_ERR_ARGUMENT);
    CHECK(qswap_sweep_csv("prepare-cascade-coherent", "beta", 1.0, 2.0, 0.5, nullptr,
                          nullptr, nullptr, &csv) == QSWAP_ERR_ARGUMENT);
}

TEST_CASE("verify runs and mutation testing trips the parity check") {
    char* table = nullptr;
    int all = -1;
    REQUIRE(qswap_verify("parity", nullptr, &table, &all) == QSWAP_OK);
    CHECK(all == 1);
    CHECK(std::string(table).find("parity-algebra") != std::string::npos);
    qswap_string_free(table);

    REQUIRE(qswap_verify("parity", "parity-sign", &table, &all) == QSWAP_OK);
    CHECK(all == 0);
    qswap_string_free(table);

    CHECK(qswap_verify(nullptr, "bogus-fault", &table, &all) == QSWAP_ERR_ARGUMENT);
}
