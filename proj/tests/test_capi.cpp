// Exercises the shared library through its C header only.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"
#include "tori/tori.h"

using json = nlohmann::json;

namespace {

std::string take(char* p) {
    std::string s = p ? p : "";
    tori_free(p);
    return s;
}

std::string data(const char* f) { return std::string(TORI_TEST_DATA) + "/" + f; }

}  // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(tori_status_name(TORI_OK)) == "Ok");
    CHECK(std::string(tori_status_name(TORI_E_USAGE)) == "UsageError");
    CHECK(std::string(tori_status_name(TORI_E_MISSING_ROLE)) == "MissingRole");
    CHECK(std::string(tori_status_name(static_cast<tori_status>(99))) == "Unknown");
    int o, a, b;
    CHECK(tori_group_invariants("H_{99,z}", &o, &a, &b) == TORI_E_UNRECOGNIZED);
    CHECK(std::strlen(tori_last_error()) > 0);
    CHECK(tori_group_invariants("H_4_e", &o, &a, &b) == TORI_OK);
    CHECK(std::string(tori_last_error()).empty());
    CHECK((o == 4 && a == 1 && b == 1));
    CHECK(tori_group_invariants("H_{4,e}", nullptr, &a, &b) == TORI_E_USAGE);
}

TEST_CASE("groups table") {
    char* csv = nullptr;
    REQUIRE(tori_groups_table(&csv) == TORI_OK);
    std::string s = take(csv);
    CHECK(s.rfind("label,order,iso,a,b\n", 0) == 0);
    int lines = 0;
    for (char c : s) lines += c == '\n';
    CHECK(lines == 73);
    CHECK(s.find("H_{12,b},12,D6,2,5\n") != std::string::npos);
}

TEST_CASE("field enumeration and import round trip") {
    char* csv = nullptr;
    REQUIRE(tori_fields_enum("quad", 10, 1, &csv) == TORI_OK);
    std::string s = take(csv);
    CHECK(s == "label,degree,galois_label,disc,subfield_discs\n2.0.3.1,2,C2,-3,\n2.0.4.1,2,C2,-4,\n"
               "2.2.5.1,2,C2,5,\n2.0.7.1,2,C2,-7,\n2.0.8.1,2,C2,-8,\n2.2.8.1,2,C2,8,\n");
    CHECK(tori_fields_enum("d4", 10, 1, &csv) == TORI_E_USAGE);

    for (const char* kind : {"c3", "s3", "c4"}) {
        REQUIRE(tori_fields_enum(kind, 20000, 2, &csv) == TORI_OK);
        std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/tori_capi_" + kind + ".csv";
        FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f);
        std::fputs(csv, f);
        std::fclose(f);
        tori_free(csv);
        size_t rows = 0;
        CHECK(tori_fields_import(path.c_str(), &rows) == TORI_OK);
        CHECK(rows > 0);
    }
    size_t rows = 0;
    CHECK(tori_fields_import("/no/such/file.csv", &rows) == TORI_E_IO);

    int64_t h = 0, h2 = 0, h3 = 0;
    CHECK(tori_class_group(-23, &h, &h2, &h3) == TORI_OK);
    CHECK((h == 3 && h3 == 3 && h2 == 1));
    CHECK(tori_class_group(-12, &h, &h2, &h3) == TORI_E_INVALID_DISCRIMINANT);
}

TEST_CASE("identity verification and conductors") {
    char* js = nullptr;
    REQUIRE(tori_verify_identities("3.2", data("bundles_3.2.csv").c_str(), &js) == TORI_OK);
    auto j = json::parse(take(js));
    CHECK(j["rows"] == 6);
    CHECK(j["failed"] == 0);
    CHECK(tori_verify_identities("3.2", data("bundles_22a.csv").c_str(), &js) == TORI_E_SCHEMA_MISMATCH);
    CHECK(tori_verify_identities("7.7", data("bundles_3.2.csv").c_str(), &js) == TORI_E_UNRECOGNIZED);

    char* v = nullptr;
    REQUIRE(tori_conductor("H_2_e", "DL=5", &v) == TORI_OK);
    CHECK(take(v) == "125");
    CHECK(tori_conductor("H_2_e", "", &v) == TORI_E_MISSING_ROLE);
    CHECK(tori_conductor("H_2_e", "DL", &v) == TORI_E_USAGE);
}

TEST_CASE("series handles") {
    tori_series* s = nullptr;
    REQUIRE(tori_series_expand("lemma42", 1000, &s) == TORI_OK);
    CHECK(tori_series_length(s) == 1000);
    CHECK(tori_series_denominator(s) == 2);
    int64_t a = -1;
    CHECK(tori_series_coefficient(s, 1, &a) == TORI_OK);
    CHECK(a == 0);
    CHECK(tori_series_coefficient(s, 1001, &a) == TORI_E_BOUND_EXCEEDED);
    char* csv = nullptr;
    REQUIRE(tori_series_csv(s, &csv) == TORI_OK);
    CHECK(take(csv).rfind("# series=lemma42 N=1000\nn,a\n", 0) == 0);
    tori_series_free(s);
    CHECK(tori_series_expand("zeta", 10, &s) == TORI_E_UNRECOGNIZED);
    tori_series_free(nullptr);
}

TEST_CASE("series fit through a file") {
    tori_series* s = nullptr;
    REQUIRE(tori_series_expand("lemma25", 1000000, &s) == TORI_OK);
    char* csv = nullptr;
    REQUIRE(tori_series_csv(s, &csv) == TORI_OK);
    tori_series_free(s);
    std::string path = "/tmp/tori_capi_lemma25.csv";
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f);
    std::fputs(csv, f);
    std::fclose(f);
    tori_free(csv);
    char* js = nullptr;
    REQUIRE(tori_series_fit(path.c_str(), &js) == TORI_OK);
    auto j = json::parse(take(js));
    CHECK(j["N"] == 1000000);
    CHECK(j["a_hat"].get<double>() > 0.9);
    CHECK(j["a_hat"].get<double>() < 1.1);
}

TEST_CASE("census handles") {
    tori_census* c = nullptr;
    REQUIRE(tori_census_new(2, 100000, &c) == TORI_OK);
    int64_t n = 0;
    CHECK(tori_census_count(c, "H_2_b", 10, &n) == TORI_OK);
    CHECK(n == 6);
    CHECK(tori_census_count(c, "H_24_a", 10, &n) == TORI_E_UNIMPLEMENTED);
    size_t len = 0;
    REQUIRE(tori_half_decade_grid(8, 14, nullptr, &len) == TORI_OK);
    CHECK(len == 7);
    uint64_t grid[7];
    REQUIRE(tori_half_decade_grid(8, 14, grid, &len) == TORI_OK);
    CHECK(grid[6] == 10000000);
    char* js = nullptr;
    REQUIRE(tori_census_report(c, "H_4_e", grid, len, 1, &js) == TORI_OK);
    auto j = json::parse(take(js));
    CHECK(j["label"] == "H_{4,e}");
    CHECK(j["counts"].size() == 7);
    CHECK(j["a_conj"] == 1.0);
    CHECK(j["b_conj"] == 1);
    CHECK(j["a_hat"].is_number());
    REQUIRE(tori_census_report(c, "H_4_e", grid, 1, 0, &js) == TORI_OK);
    CHECK(json::parse(take(js))["a_hat"].is_null());

    CHECK(tori_census_count(c, "H_12_c", 1000, &n) == TORI_E_UNIMPLEMENTED);
    CHECK(tori_census_import(c, data("sextic_6t3.csv").c_str()) == TORI_OK);
    CHECK(tori_census_count(c, "H_12_c", 1000, &n) == TORI_OK);
    tori_census_free(c);

    char* fams = nullptr;
    REQUIRE(tori_census_families(&fams) == TORI_OK);
    CHECK(take(fams).find("H_{6,c}\n") != std::string::npos);
}
