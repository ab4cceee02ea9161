#include <cmath>
#include <set>

#include "census.hpp"
#include "dirichlet.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fields.hpp"
#include "lattice_groups.hpp"

using namespace tori;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

std::vector<i64> quadratics(i64 X) {
    std::vector<i64> v;
    for_each_quadratic(X, [&](i64 d) { v.push_back(d); });
    return v;
}

}  // namespace

TEST_CASE("single-field families") {
    Census c;
    CHECK(c.count_family("H_{2,b}", 10) == 6);
    CHECK(c.count_family("H_{2,b}", 2) == 0);
    // D_L^3 <= X
    CHECK(c.count_family("H_{2,e}", 1000) == 6);
}

TEST_CASE("pairs of distinct quadratics: inclusion-exclusion") {
    Census c;
    for (i64 X : {1000, 100000, 1000000}) {
        auto q = quadratics(X);
        i64 all = 0, diag = 0;
        for (i64 d1 : q)
            for (i64 d3 : q) {
                i64 a = std::abs(d1), b = std::abs(d3);
                if (b * b > X / a) break;  // q is sorted by |d|
                ++all;
            }
        for (i64 d : q)
            if (std::abs(d) * std::abs(d) * std::abs(d) <= X) ++diag;
        CHECK(c.count_family("H_{4,e}", X) == all - diag);

        i64 direct = 0;
        for (i64 d1 : q)
            for (i64 d3 : q) {
                i64 a = std::abs(d1), b = std::abs(d3);
                if (b * b > X / a) break;
                if (d1 != d3 && a * b * b <= X) ++direct;
            }
        CHECK(c.count_family("H_{4,e}", X) == direct);
    }
}

TEST_CASE("quadratic times C4 family") {
    Census c;
    const i64 X = 200000;
    auto q = quadratics(X);
    i64 want = 0;
    // D2 * D4'/D2' = |d| f^2
    for (auto& f : cyclic_quartic_fields_by_conductor(static_cast<i64>(std::sqrt(static_cast<double>(X)))))
        for (i64 d : q) {
            if (std::abs(d) * f.conductor * f.conductor > X) break;
            if (d != f.quadratic_disc) ++want;
        }
    CHECK(c.count_family("H_{8,a}", X) == want);
}

TEST_CASE("the two C6 families count the same fields") {
    Census c;
    auto grid = half_decade_grid(2, 14);
    CHECK(c.count_family_grid("H_{6,c}", grid) == c.count_family_grid("H_{6,d}", grid));
}

TEST_CASE("counts are nondecreasing") {
    Census c(1, CensusBounds{200000, 1000000000});
    auto grid = half_decade_grid(2, 10);
    for (auto& l : implemented_families()) {
        if (family_spec(l).needs_import) continue;
        CAPTURE(l);
        auto v = c.count_family_grid(l, grid);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] <= v[i]);
        CHECK(v.front() >= 0);
    }
}

TEST_CASE("counts do not depend on the worker count") {
    Census one(1, CensusBounds{300000, 1000000000}), three(3, CensusBounds{300000, 1000000000});
    for (auto& l : {"H_{6,e}", "H_{6,f}", "H_{6,i}", "H_{4,a}", "H_{8,b}"}) {
        u64 x = std::min<u64>(one.max_x(l), 300000);
        CHECK(one.count_family(l, x) == three.count_family(l, x));
    }
}

TEST_CASE("families outside the implemented set") {
    Census c;
    CHECK(code_of([&] { c.count_family("H_{24,a}", 1000); }) == Errc::Unimplemented);
    CHECK(code_of([&] { c.count_family("H_{12,c}", 1000); }) == Errc::Unimplemented);  // no import yet
    CHECK_FALSE(family_implemented("H_{48,c}"));
    CHECK(code_of([] { family_spec("H_{16,a}"); }) == Errc::Unimplemented);
}

TEST_CASE("sextic import drives the D6 family") {
    Census c;
    c.add_import(import_fields_csv(std::string(TORI_TEST_DATA) + "/sextic_6t3.csv"));
    u64 x = c.max_x("H_{12,c}");
    REQUIRE(x > 0);
    auto grid = half_decade_grid(2, 12);
    std::vector<u64> g;
    for (auto v : grid)
        if (v <= x) g.push_back(v);
    auto v = c.count_family_grid("H_{12,c}", g);
    CHECK(v.back() > 0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] <= v[i]);
    auto rep = fit_family(c, "H_{12,c}", g);
    CHECK(rep.coverage_limited);
    CHECK(code_of([&] { c.count_family("H_{12,c}", x + 1); }) == Errc::BoundExceeded);
}

TEST_CASE("fit reports carry the conjectured values") {
    Census c;
    auto rep = fit_family(c, "H_{4,e}", half_decade_grid(8, 14));
    CHECK(rep.a_conj == 1.0);
    CHECK(rep.b_conj == 1);
    CHECK(rep.fitted);
    CHECK(std::abs(rep.a_hat - 1.0) < 0.05);
    CHECK(rep.verdict.rfind("consistent", 0) == 0);
}

TEST_CASE("summary table") {
    auto rows = summary_table();
    CHECK(rows.size() == 72);
    int implemented = 0;
    for (auto& r : rows) {
        implemented += r.implemented;
        CHECK_FALSE(r.fit.has_value());
        if (r.label == "H_{12,b}") CHECK((r.a == 2 && r.b == 5));
        if (r.label == "H_{24,a}") CHECK_FALSE(r.implemented);
    }
    CHECK(implemented == static_cast<int>(implemented_families().size()));
}
