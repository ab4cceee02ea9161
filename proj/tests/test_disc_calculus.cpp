#include <fstream>
#include <random>
#include <sstream>

#include "arith.hpp"
#include "disc_calculus.hpp"
#include "doctest.h"
#include "error.hpp"
#include "lattice_groups.hpp"
#include "order.hpp"

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

FactoredInt F(long v) { return FactoredInt(mpz_class(v)); }
FactoredInt F(const char* v) { return FactoredInt(mpz_class(v)); }

ZX zx(std::initializer_list<long> c) {
    ZX f;
    for (long v : c) f.push_back(mpz_class(v));
    return f;
}

std::vector<RoleBindings> read_bundles(const std::string& lemma) {
    std::ifstream in(std::string(TORI_TEST_DATA) + "/bundles_" + lemma + ".csv");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> hdr;
    std::stringstream hs(line);
    for (std::string c; std::getline(hs, c, ',');) hdr.push_back(c);
    std::vector<RoleBindings> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        RoleBindings b;
        std::size_t i = 0;
        for (std::string c; std::getline(ls, c, ',');) b[hdr.at(i++)] = FactoredInt(mpz_class(c));
        out.push_back(b);
    }
    return out;
}

}  // namespace

TEST_CASE("conductor examples") {
    CHECK(conductor_eval("H_{2,e}", {{"DL", F(5)}}).value() == 125);
    // D6 = D2^3 D3 u gives D2^2 u
    CHECK(conductor_eval("H_{6,a}", {{"D6", F(-27L * 49 * 7)}, {"D2", F(-3)}, {"D3", F(49)}}).value() == 63);
    CHECK(conductor_eval("H_{4,f}", {{"DL", F(144)}}).value() == 144);
    CHECK(conductor_eval("H_{2,b}", {{"DL", F(-23)}}).value() == 23);
    CHECK(conductor_eval("H_{6,c}", {{"D2", F(-3)}, {"D3", F(49)}}).value() == 27 * 49);  // lcm(27, 147)
    CHECK(conductor_eval("H_{6,c}", {{"D2", F(-7)}, {"D3", F(49)}}).value() == 343);
    CHECK(code_of([] { conductor_eval("H_{2,e}", {}); }) == Errc::MissingRole);
    CHECK(code_of([] { conductor_eval("H_{6,a}", {{"D6", F(5)}, {"D2", F(3)}, {"D3", F(7)}}); }) ==
          Errc::NonIntegralQuotient);
    CHECK(code_of([] { conductor_eval("H_{99,z}", {}); }) == Errc::Unrecognized);
}

TEST_CASE("every nontrivial class has a conductor formula") {
    for (auto& e : catalog()) CHECK_NOTHROW(conductor_expression(e.label));
}

TEST_CASE("conductor products are valuation-additive on coprime supports") {
    std::mt19937_64 rng(7);
    const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    for (auto& e : catalog()) {
        const auto& ex = conductor_expression(e.label);
        if (ex.lcm_args) continue;
        bool positive = true;
        for (auto& [r, k] : ex.mono.exps) positive &= k > 0;
        if (!positive) continue;
        RoleBindings b;
        std::map<std::string, std::pair<long, int>> support;
        int i = 0;
        for (auto& [r, k] : ex.mono.exps) {
            long p = primes[i++];
            int v = 1 + static_cast<int>(rng() % 3);
            b[r] = F(p).pow(v);
            support[r] = {p, v};
        }
        auto c = conductor_eval(e.label, b);
        for (auto& [r, pv] : support) CHECK(c.valuation(mpz_class(pv.first)) == pv.second * ex.mono.exps.at(r));
        CHECK(c.factors().size() == support.size());
    }
}

TEST_CASE("biquadratic completion") {
    auto a = v4_complete(5, 8);
    CHECK(a.d3 == 40);
    CHECK(a.disc.value() == 1600);
    auto b = v4_complete(-3, -4);
    CHECK(b.d3 == 12);
    CHECK(b.disc.value() == 144);
    CHECK(code_of([] { v4_complete(5, 5); }) == Errc::Degenerate);
    CHECK(code_of([] { v4_complete(5, 9); }) == Errc::InvalidDiscriminant);
    // generator sqrt(5) + sqrt(8): x^4 - 26x^2 + 9
    CHECK(maximal_order_disc(zx({9, 0, -26, 0, 1})).value() == 1600);
}

TEST_CASE("S3 closure discriminant") {
    auto a = s3_closure_disc(-23);
    CHECK(a.d2 == -23);
    CHECK(a.disc6.value() == -12167);
    auto b = s3_closure_disc(148);
    CHECK(b.d2 == 37);
    CHECK(b.disc6.value() == mpz_class(148 * 148 * 37));
    CHECK(code_of([] { s3_closure_disc(49); }) == Errc::CyclicInput);

    // x^3 - x - 1 depressed: P = 9c - 3b^2 = -9, Q = 27d - 9bc + 2b^3 = -27;
    // the differences of roots (times 3) satisfy x^6 + 6Px^4 + 9P^2x^2 + 4P^3 + 27Q^2.
    long P = -9, Q = -27;
    auto g = zx({4 * P * P * P + 27 * Q * Q, 0, 9 * P * P, 0, 6 * P, 0, 1});
    CHECK(maximal_order_disc(g).value() == -12167);
}

TEST_CASE("A4 and S4 relations") {
    auto r = a4_relations(F(196), F(49));
    CHECK(r.disc6.value() == 49 * 49 * 4);
    CHECK(r.disc_closure == F(196).pow(2) * r.disc6);
    // third relation with a trivial base: D_L = D4^3 D3
    CHECK(r.disc_closure == F(196).pow(3) * F(49));
    auto t = a4_relations(F(49), F(49));
    CHECK(t.disc6.value() == 49 * 49);
    CHECK(t.disc_closure == F(49).pow(4));
    CHECK(code_of([] { a4_relations(F(50), F(49)); }) == Errc::InconsistentPair);

    CHECK(s4_sextic_disc(F(229), F(229)).value() == 229 * 229);
    CHECK(s4_sextic_disc(FactoredInt(), FactoredInt()).is_one());
}

TEST_CASE("compositum valuations") {
    const u64 p = 7;
    RamificationProfile unram2{2, {}, {}}, unram3{3, {}, {}};
    RamificationProfile ram2{2, {{p, {2}}}, {}};
    CHECK(compositum_valuation(unram2, unram3, p) == 0);
    // ramified quadratic with an unramified cubic: inertia in the cubic is trivial
    CHECK(compositum_valuation(ram2, unram3, p) == 3);
    CHECK(compositum_valuation_coprime(ram2, unram3, p) == 3);
    CHECK(compositum_valuation(ram2, ram2, p) == 2);
    // three quadratic subfields of a biquadratic field ramified at p in two of them
    CHECK(ram2.disc_valuation(p) + ram2.disc_valuation(p) + unram2.disc_valuation(p) ==
          compositum_valuation(ram2, ram2, p));
    RamificationProfile wild{2, {{3, {2}}}, {3}};
    CHECK(code_of([&] { compositum_valuation(wild, unram3, 3); }) == Errc::WildPrime);
}

TEST_CASE("maximal order discriminants") {
    CHECK(maximal_order_disc(zx({-2, 0, 1})).value() == 8);
    CHECK(maximal_order_disc(zx({-1, -1, 0, 1})).value() == -23);
    CHECK(maximal_order_disc(zx({-5, 0, 1})).value() == 5);
    CHECK(maximal_order_disc(zx({-12, 0, 1})).value() == 12);
    // x^3 - 3x + 1, the cyclic cubic of conductor 9
    CHECK(maximal_order_disc(zx({1, -3, 0, 1})).value() == 81);
    CHECK(code_of([] { maximal_order_disc(zx({-4, 0, 1})); }) == Errc::Reducible);
    CHECK(code_of([] { maximal_order_disc(zx({-2, 0, 0, 0, 0, 0, 0, 0, 0, 1})); }) == Errc::HeightExceeded);
}

TEST_CASE("lemma bundles: formal identity, reference rows, injected fault") {
    for (auto& lemma : lemma_names()) {
        CAPTURE(lemma);
        RoleBindings ones;
        for (auto& r : lemma_required_roles(lemma)) ones[r] = FactoredInt();
        CHECK(verify_lemma_bundle(ones, lemma).ok);
        CHECK(code_of([&] { verify_lemma_bundle({}, lemma); }) == Errc::MissingRole);

        auto rows = read_bundles(lemma);
        REQUIRE(!rows.empty());
        for (auto& b : rows) {
            auto rep = verify_lemma_bundle(b, lemma);
            CHECK(rep.ok);
            CHECK(rep.checked >= 1);
        }
        for (auto& role : lemma_required_roles(lemma)) {
            auto bad = rows.front();
            bad[role] = bad[role] * F(10007);
            auto rep = verify_lemma_bundle(bad, lemma);
            CHECK_FALSE(rep.ok);
            bool named = false;
            for (auto& r : rep.residual) named |= r.prime == 10007;
            CHECK(named);
        }
    }
    CHECK(code_of([] { verify_lemma_bundle({}, "9.9"); }) == Errc::Unrecognized);
}
