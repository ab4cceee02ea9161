#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "lattice_groups.hpp"

using namespace tori;

namespace {

// Rank of a 3x3 integer matrix from its minors.
int rank_by_minors(const IntMatrix& m) {
    if (m.det() != 0) return 3;
    for (int r1 = 0; r1 < 3; ++r1)
        for (int r2 = r1 + 1; r2 < 3; ++r2)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = c1 + 1; c2 < 3; ++c2)
                    if (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1) != 0) return 2;
    for (auto v : m.e)
        if (v) return 1;
    return 0;
}

IntMatrix power(const IntMatrix& m, int k) {
    IntMatrix r = IntMatrix::identity();
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

// Brute-force a and b: classes by explicit conjugation, orbits under h -> h^k
// for every k coprime to |H|.
std::pair<int, int> brute_ab(const MatrixGroup& g) {
    const auto& els = g.elements();
    std::map<IntMatrix, int> cls;
    int ncls = 0;
    for (auto& h : els) {
        if (cls.count(h)) continue;
        for (auto& x : els) cls[x * h * x.inverse()] = ncls;
        ++ncls;
    }
    std::vector<int> parent(ncls);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int n = static_cast<int>(g.order());
    for (auto& h : els)
        for (int k = 1; k < n; ++k)
            if (std::gcd(k, n) == 1) parent[find(cls[h])] = find(cls[power(h, k)]);
    int a = 4;
    for (auto& h : els)
        if (!(h == IntMatrix::identity())) a = std::min(a, rank_by_minors(h - IntMatrix::identity()));
    std::set<int> orbits;
    for (auto& h : els)
        if (!(h == IntMatrix::identity()) && rank_by_minors(h - IntMatrix::identity()) == a) orbits.insert(find(cls[h]));
    return {a, static_cast<int>(orbits.size())};
}

}  // namespace

TEST_CASE("generate_group basics") {
    CHECK(generate_group({}).order() == 1);
    auto h2a = generate_group({IntMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})});
    CHECK(h2a.order() == 2);
    CHECK(catalog_entry("H_{48,a}").group.order() == 48);

    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Internal;
    };
    CHECK(code([] { generate_group({IntMatrix::from_rows({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})}); }) == Errc::NonUnimodular);
    CHECK(code([] { generate_group({IntMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})}); }) == Errc::NotFinite);
    CHECK(code([] { a_invariant(generate_group({})); }) == Errc::TrivialGroup);
}

TEST_CASE("generated groups are closed and contain their generators") {
    for (auto& e : catalog()) {
        const auto& g = e.group;
        std::set<IntMatrix> s(g.elements().begin(), g.elements().end());
        REQUIRE(s.size() == g.order());
        CHECK(s.count(IntMatrix::identity()));
        for (auto& x : e.generators) CHECK(s.count(x));
        for (auto& x : g.elements()) {
            CHECK(std::abs(x.det()) == 1);
            CHECK(x.max_abs() <= 2);
            CHECK(s.count(x.inverse()));
            for (auto& y : g.elements()) CHECK(s.count(x * y));
        }
    }
}

TEST_CASE("catalog shape") {
    const auto& cat = catalog();
    CHECK(cat.size() == 73);
    CHECK(cat.front().label == "H_{1,a}");
    CHECK(cat.back().label == "H_{48,c}");
    std::set<std::size_t> allowed = {1, 2, 3, 4, 6, 8, 12, 16, 24, 48};
    for (auto& e : cat) CHECK(allowed.count(e.group.order()));
    CHECK(catalog_entry("H_{24,d}").iso == "D6xC2");
    CHECK(iso_type(catalog_entry("H_{6,e}").group) == "S3");
    CHECK(iso_type(catalog_entry("H_{8,g}").group) == "D4");
    CHECK(iso_type(generate_group({})) == "1");
    for (auto& e : cat) CHECK(iso_type(e.group) == e.iso);
}

TEST_CASE("conjugacy class examples") {
    auto sizes = [](const std::string& l) {
        std::multiset<std::size_t> s;
        for (auto& c : conjugacy_classes(catalog_entry(l).group)) s.insert(c.members.size());
        return s;
    };
    CHECK(sizes("H_{6,e}") == std::multiset<std::size_t>{1, 2, 3});
    CHECK(conjugacy_classes(catalog_entry("H_{24,e}").group).size() == 5);
    for (auto& e : catalog()) {
        auto cls = conjugacy_classes(e.group);
        std::size_t total = 0;
        for (auto& c : cls) {
            total += c.members.size();
            if (e.group.abelian()) CHECK(c.members.size() == 1);
            for (auto& m : c.members) CHECK(rank_q({{m(0, 0) - 1, m(0, 1), m(0, 2)},
                                                    {m(1, 0), m(1, 1) - 1, m(1, 2)},
                                                    {m(2, 0), m(2, 1), m(2, 2) - 1}}) == c.rank_defect);
        }
        CHECK(total == e.group.order());
    }
}

TEST_CASE("a and b invariants: examples") {
    auto ab = [](const std::string& l) {
        auto& g = catalog_entry(l).group;
        return std::pair{a_invariant(g), b_invariant(g)};
    };
    CHECK(ab("H_{2,e}").first == 3);
    CHECK(ab("H_{12,b}") == std::pair{2, 5});
    CHECK(ab("H_{6,f}").first == 1);
    CHECK(ab("H_{4,a}") == std::pair{2, 2});
    CHECK(ab("H_{8,c}").second == 3);
}

TEST_CASE("a and b agree with a brute-force oracle on every class") {
    for (auto& e : catalog()) {
        if (e.group.order() == 1) continue;
        CAPTURE(e.label);
        auto [a, b] = brute_ab(e.group);
        CHECK(a_invariant(e.group) == a);
        CHECK(b_invariant(e.group) == b);
    }
}

TEST_CASE("rank(h - I) is conjugation invariant") {
    for (auto& e : catalog()) {
        const auto& els = e.group.elements();
        for (auto& h : els) {
            int r = rank_by_minors(h - IntMatrix::identity());
            for (auto& g : els) CHECK(rank_by_minors(g * h * g.inverse() - IntMatrix::identity()) == r);
        }
    }
}

TEST_CASE("power-map orbits do not depend on residue order") {
    auto canon = [](std::vector<std::vector<int>> o) {
        for (auto& v : o) std::sort(v.begin(), v.end());
        std::sort(o.begin(), o.end());
        return o;
    };
    for (auto& e : catalog()) {
        auto cls = conjugacy_classes(e.group);
        auto fwd = canon(power_map_orbits(e.group, cls, false));
        CHECK(fwd == canon(power_map_orbits(e.group, cls, true)));
        std::vector<int> all;
        for (auto& o : fwd) all.insert(all.end(), o.begin(), o.end());
        std::sort(all.begin(), all.end());
        std::vector<int> want(cls.size());
        std::iota(want.begin(), want.end(), 0);
        CHECK(all == want);
    }
}

TEST_CASE("a = 3 exactly for <-I>") {
    IntMatrix minus = IntMatrix::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
    for (auto& e : catalog()) {
        if (e.group.order() == 1) continue;
        bool is_minus = e.group.order() == 2 && e.group.index_of(minus) >= 0;
        CHECK((a_invariant(e.group) == 3) == is_minus);
    }
}

TEST_CASE("fingerprints are pairwise distinct") {
    std::set<GroupFingerprint> seen;
    for (auto& e : catalog()) CHECK(seen.insert(fingerprint(e.group)).second);
}

TEST_CASE("label spelling round trip") {
    CHECK(label_to_cli("H_{4,e}") == "H_4_e");
    CHECK(label_from_cli("H_4_e") == "H_{4,e}");
    CHECK(label_from_cli("H_{12,c}") == "H_{12,c}");
    for (auto& e : catalog()) CHECK(label_from_cli(label_to_cli(e.label)) == e.label);
}
