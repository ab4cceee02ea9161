#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "dirichlet.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fields.hpp"
#include "quadform.hpp"

using namespace tori;

namespace {

bool squarefree_td(i64 n) {
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

// Definition: d = 1 mod 4 squarefree, or d = 4m with m = 2, 3 mod 4 squarefree.
bool fundamental_by_definition(i64 d) {
    if (d == 0 || d == 1) return false;
    i64 a = d < 0 ? -d : d;
    if (((d % 4) + 4) % 4 == 1) return squarefree_td(a);
    if (d % 4 != 0) return false;
    i64 m = d / 4, r = ((m % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree_td(m < 0 ? -m : m);
}

int omega_td(i64 n) {
    int w = 0;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ++w;
            while (n % p == 0) n /= p;
        }
    return w + (n > 1);
}

// Number of cyclic cubic fields of conductor f.
int cyclic_cubic_fields_at(i64 f) {
    i64 m = f;
    if (m % 9 == 0) m /= 9;
    if (m % 3 == 0) return 0;
    for (i64 p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            if (p % 3 != 1) return 0;
            m /= p;
            if (m % p == 0) return 0;
        }
    if (m > 1 && m % 3 != 1) return 0;
    if (f == 1) return 0;
    return 1 << (omega_td(f) - 1);
}

std::string data(const std::string& f) { return std::string(TORI_TEST_DATA) + "/" + f; }

std::filesystem::path scratch(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("tori_unit_" + name);
    std::ofstream(p) << text;
    return p;
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

}  // namespace

TEST_CASE("quadratic enumeration") {
    CHECK(enum_quadratic(2).empty());
    std::vector<i64> got;
    for (auto& r : enum_quadratic(10)) got.push_back(r.disc);
    CHECK(got == std::vector<i64>{-3, -4, 5, -7, -8, 8});

    std::vector<i64> want;
    for (i64 a = 1; a <= 100000; ++a)
        for (i64 d : {-a, a})
            if (fundamental_by_definition(d)) want.push_back(d);
    got.clear();
    for_each_quadratic(100000, [&](i64 d) { got.push_back(d); });
    CHECK(got == want);
}

TEST_CASE("quadratic count per |d| matches the g2 coefficients") {
    const u64 N = 1000000;
    auto g2 = expand_euler(series_spec("g2"), N);
    std::vector<int> per(N + 1, 0);
    for_each_quadratic(N, [&](i64 d) { ++per[d < 0 ? -d : d]; });
    int bad = 0;
    for (u64 n = 2; n <= N; ++n) bad += per[n] * g2.denom != g2.a[n];
    CHECK(bad == 0);
}

TEST_CASE("cyclic cubic enumeration") {
    auto recs = enum_cyclic_cubic(1000000);
    std::map<i64, int> per;
    for (auto& r : recs) {
        ++per[r.disc];
        CHECK(r.galois_label == "C3");
    }
    CHECK(per[49] == 1);
    CHECK(per[81] == 1);
    CHECK(per[3969] == 2);
    for (i64 f = 1; f <= 1000; ++f) CHECK(per[f * f] == cyclic_cubic_fields_at(f));

    auto g3 = expand_euler(series_spec("g3"), 1000000);
    for (u64 n = 2; n <= 1000000; ++n) {
        auto it = per.find(static_cast<i64>(n));
        int c = it == per.end() ? 0 : it->second;
        if (2 * c * g3.denom != g3.a[n]) {
            FAIL("g3 mismatch at n = " << n);
            break;
        }
    }
}

TEST_CASE("S3 cubic enumeration: smallest fields and invariants") {
    auto neg = enum_cubic_s3(2000, -1);
    auto pos = enum_cubic_s3(2000, 1);
    REQUIRE(!neg.empty());
    REQUIRE(!pos.empty());
    CHECK(neg.front().disc == -23);
    CHECK(pos.front().disc == 148);
    std::set<BinaryCubicForm> forms;
    for (auto* v : {&neg, &pos})
        for (auto& r : *v) {
            i64 d = r.disc, m = ((d % 4) + 4) % 4;
            CHECK((m == 0 || m == 1));
            i64 a = d < 0 ? -d : d;
            i64 s = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(a))));
            CHECK((d < 0 || s * s != a));
            auto f = std::get<CubicFormProvenance>(r.provenance).form;
            CHECK(reduce_form(f) == f);
            CHECK(static_cast<i64>(f.disc()) == d);
            CHECK(forms.insert(f).second);
        }
}

TEST_CASE("S3 negative cubics to 1e6 match the reference table row for row") {
    auto table = import_fields_csv(data("s3_cubic_neg_1e6.csv"));
    auto mine = enum_cubic_s3(1000000, -1, 2);
    REQUIRE(mine.size() == table.size());
    int bad = 0;
    for (std::size_t i = 0; i < mine.size(); ++i) bad += mine[i].disc != table[i].disc;
    CHECK(bad == 0);
}

TEST_CASE("S3 enumeration does not depend on the worker count") {
    auto one = enum_cubic_s3(300000, 1, 1);
    auto three = enum_cubic_s3(300000, 1, 3);
    REQUIRE(one.size() == three.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].disc == three[i].disc);
        CHECK(std::get<CubicFormProvenance>(one[i].provenance).form ==
              std::get<CubicFormProvenance>(three[i].provenance).form);
    }
}

TEST_CASE("C3 cubics to 1e6 match the reference table") {
    auto table = import_fields_csv(data("c3_cubic_1e6.csv"));
    auto mine = enum_cyclic_cubic(1000000);
    REQUIRE(mine.size() == table.size());
    for (std::size_t i = 0; i < mine.size(); ++i) CHECK(mine[i].disc == table[i].disc);
}

TEST_CASE("cyclic quartic enumeration") {
    auto small = cyclic_quartic_fields(124);
    CHECK(small.empty());
    auto q = cyclic_quartic_fields(125);
    REQUIRE(q.size() == 1);
    CHECK(q[0].disc == 125);
    CHECK(q[0].quadratic_disc == 5);

    auto table = import_fields_csv(data("c4_quartic_1e6.csv"));
    std::multiset<std::pair<i64, i64>> want, got;
    for (auto& r : table) want.insert({r.disc, std::get<ImportedProvenance>(r.provenance).subfield_discs.at(0)});
    for (auto& f : cyclic_quartic_fields(1000000)) {
        got.insert({f.disc, f.quadratic_disc});
        CHECK(f.disc % (f.quadratic_disc) == 0);
        CHECK(f.disc == f.conductor * f.conductor * f.quadratic_disc);
    }
    CHECK(got == want);
}

TEST_CASE("class groups") {
    auto a = quad_class_group(-23);
    CHECK(a.h == 3);
    CHECK(a.p_torsion.at(3) == 3);
    CHECK(quad_class_group(5).h == 1);
    CHECK(quad_class_group(-4).h == 1);
    CHECK(code_of([] { quad_class_group(-12); }) == Errc::InvalidDiscriminant);
    CHECK(code_of([] { quad_class_group(-1000003, 1000); }) == Errc::BoundExceeded);

    // classical values
    CHECK(quad_class_group(-47).h == 5);
    CHECK(quad_class_group(-71).h == 7);
    CHECK(quad_class_group(12).h == 2);  // narrow
    CHECK(quad_class_group(229).p_torsion.at(3) == 3);
}

TEST_CASE("form composition identities") {
    for (i64 d : {-23, -47, -71, -104, -199, -3299, 229, 316, 1297, 2089}) {
        CAPTURE(d);
        auto reps = class_representatives(d);
        auto e = reduce(principal_form(d));
        auto same_class = [&](QuadForm x, QuadForm y) {
            x = reduce(x);
            y = reduce(y);
            if (d < 0) return x == y;
            QuadForm z = y;  // walk the cycle of y
            for (int i = 0; i < 200; ++i) {
                if (z == x) return true;
                z = rho(z);
            }
            return false;
        };
        for (auto& f : reps) {
            CHECK(same_class(compose(f, principal_form(d)), f));
            CHECK(same_class(compose(f, inverse(f)), e));
        }
    }
}

TEST_CASE("field import") {
    auto empty = scratch("empty.csv", "label,degree,galois_label,disc,subfield_discs\n");
    CHECK(import_fields_csv(empty.string()).empty());

    auto rows = import_fields_csv(data("a4_s4_quartics.csv"));
    bool found = false;
    for (auto& r : rows)
        if (r.disc == 26569) {
            found = true;
            CHECK(r.degree == 4);
        }
    CHECK(found);

    auto zero = scratch("zero.csv", "label,degree,galois_label,disc,subfield_discs\nx,4,A4,0,\n");
    CHECK(code_of([&] { import_fields_csv(zero.string()); }) == Errc::InvalidDiscriminant);
    auto sign = scratch("sign.csv", "label,degree,galois_label,disc,subfield_discs\n4.0.229.1,4,S4,-229,\n");
    CHECK(code_of([&] { import_fields_csv(sign.string()); }) == Errc::InvalidDiscriminant);
    auto hdr = scratch("hdr.csv", "label,degree,disc\n");
    CHECK(code_of([&] { import_fields_csv(hdr.string()); }) == Errc::SchemaMismatch);
    auto cols = scratch("cols.csv", "label,degree,galois_label,disc,subfield_discs\nx,4,A4,5\n");
    CHECK(code_of([&] { import_fields_csv(cols.string()); }) == Errc::SchemaMismatch);
    CHECK(code_of([] { import_fields_csv("/nonexistent/file.csv"); }) == Errc::Io);

    auto commented = scratch("comment.csv", "# tori 0.1.0 invocation=0\nlabel,degree,galois_label,disc,subfield_discs\n"
                                            "2.0.3.1,2,C2,-3,\n");
    CHECK(import_fields_csv(commented.string()).size() == 1);
}
