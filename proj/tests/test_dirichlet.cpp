#include <cmath>
#include <numeric>
#include <random>

#include "census.hpp"
#include "dirichlet.hpp"
#include "doctest.h"
#include "error.hpp"

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

// a_n from the factorization of n and the spec, one prime power at a time.
i64 coefficient_by_factoring(const EulerFactorSpec& spec, u64 n) {
    i64 a = 1;
    for (u64 p = 2; n > 1; ++p) {
        if (p * p > n) p = n;
        int k = 0;
        while (n % p == 0) n /= p, ++k;
        if (!k) continue;
        i64 c = 0;
        for (auto& f : spec.factors)
            if (f.primes.matches(p))
                for (auto& [e, v] : f.terms)
                    if (e == k) c += v;
        a *= c;
    }
    return a;
}

bool fundamental(i64 d) {
    auto sqf = [](i64 n) {
        for (i64 p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    i64 a = std::abs(d), r = ((d % 4) + 4) % 4;
    if (d == 1 || d == 0) return false;
    if (r == 1) return sqf(a);
    if (r != 0) return false;
    i64 m = d / 4, rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && sqf(std::abs(m));
}

bool cubic_conductor(i64 f) {
    if (f == 1) return false;
    i64 m = f % 9 == 0 ? f / 9 : f;
    if (m % 3 == 0) return false;
    for (i64 p = 2; p <= m; ++p)
        if (m % p == 0) {
            if (p % 3 != 1) return false;
            m /= p;
            if (m % p == 0) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("Euler expansion examples") {
    for (auto& name : {"g1", "g2", "g3", "h", "lemma25"}) CHECK(expand_euler(series_spec(name), 10).a[1] == 1);
    CHECK(expand_euler(series_spec("g2"), 10).a[8] == 2);
    CHECK(expand_euler(series_spec("g3"), 4000).a[3969] == 4);
    CHECK(code_of([] { series_spec("nope"); }) == Errc::Unrecognized);
}

TEST_CASE("Euler expansion matches coefficients computed by factoring") {
    for (auto& name : {"g1", "g2", "g3", "h", "lemma25"}) {
        auto spec = series_spec(name);
        auto v = expand_euler(spec, 20000);
        int bad = 0;
        for (u64 n = 1; n <= 20000; ++n) bad += v.a[n] != coefficient_by_factoring(spec, n) * v.denom;
        CHECK_MESSAGE(bad == 0, name);
    }
}

TEST_CASE("Euler expansions are multiplicative") {
    std::mt19937_64 rng(11);
    const u64 N = 100000;
    for (auto& name : {"g1", "g2", "g3", "h", "lemma25"}) {
        auto v = expand_euler(series_spec(name), N);
        int bad = 0, trials = 0;
        while (trials < 10000) {
            u64 m = 1 + rng() % 300, n = 1 + rng() % 300;
            if (std::gcd(m, n) != 1) continue;
            ++trials;
            bad += v.a[m * n] * v.denom != v.a[m] * v.a[n];
        }
        CHECK_MESSAGE(bad == 0, name);
    }
}

TEST_CASE("overlapping predicates are rejected") {
    EulerFactorSpec s{"bad", {{PrimePredicate::all(), {{1, 1}}}, {PrimePredicate::congruence(4, {1}), {{1, 2}}}}};
    CHECK(code_of([&] { check_partition(s); }) == Errc::OverlappingPredicates);
    CHECK(code_of([&] { expand_euler(s, 100); }) == Errc::OverlappingPredicates);
    EulerFactorSpec t{"twice", {{PrimePredicate::explicit_prime(5), {{1, 1}}}, {PrimePredicate::congruence(5, {0}), {{1, 1}}}}};
    CHECK(code_of([&] { check_partition(t); }) == Errc::OverlappingPredicates);
}

TEST_CASE("argument tripling keeps only cubes") {
    auto g2 = expand_euler(series_spec("g2"), 100);
    auto t = argument_scale(g2, 3, 100000);
    for (u64 n = 1; n <= 100000; ++n) {
        u64 c = static_cast<u64>(std::llround(std::cbrt(static_cast<double>(n))));
        if (c * c * c != n) CHECK(t.a[n] == 0);
        else CHECK(t.a[n] == g2.a[c]);
    }
}

TEST_CASE("C6 identity: series side against the field census") {
    const u64 N = 100000;
    auto rhs = lemma42_rhs(N);
    auto lhs = census_c6(N);
    CHECK(rhs.a[1] == 0);
    CHECK(lhs.a[1] == 0);
    int bad = 0;
    for (u64 n = 1; n <= N; ++n) {
        CHECK(rhs.a[n] >= 0);
        CHECK(rhs.a[n] % rhs.denom == 0);
        bad += rhs.a[n] * lhs.denom != lhs.a[n] * rhs.denom;
    }
    CHECK(bad == 0);

    // smallest n with a C6 field, by brute force over small d and f
    i64 best = INT64_MAX;
    for (i64 d = -50; d <= 50; ++d) {
        if (!fundamental(d)) continue;
        i64 ad = std::abs(d);
        for (i64 f = 2; f <= 50; ++f)
            if (cubic_conductor(f)) best = std::min(best, std::lcm(ad * ad * ad, ad * f * f));
    }
    u64 first = 0;
    for (u64 n = 1; n <= N && !first; ++n)
        if (lhs.a[n]) first = n;
    CHECK(static_cast<i64>(first) == best);

    Census c;
    i64 total = 0;
    for (u64 n = 1; n <= 10000; ++n) total += lhs.a[n];
    CHECK(c.count_family("H_{6,c}", 10000) * lhs.denom == total);
}

TEST_CASE("partial-sum fit recovers synthetic exponents") {
    auto g = half_decade_grid(4, 18);
    std::vector<double> grid(g.begin(), g.end());
    {
        auto fit = tauberian_fit(grid, grid);
        CHECK(fit.a_hat == doctest::Approx(1.0).epsilon(0.001));
        CHECK(fit.w_hat == doctest::Approx(1.0).epsilon(0.001));
    }
    for (double a : {0.5, 1.0})
        for (double w : {1.0, 2.0, 3.0}) {
            std::vector<double> s;
            for (double x : grid) s.push_back(std::pow(x, a) * std::pow(std::log(x), w - 1));
            auto fit = tauberian_fit(grid, s);
            CHECK(std::abs(fit.a_hat - a) <= 0.01);
            CHECK(std::abs(fit.w_hat - w) <= 0.01);
            auto fixed = tauberian_fit_fixed_w(grid, s, w);
            CHECK(std::abs(fixed.a_hat - a) <= 0.01);
        }
    CHECK(code_of([] { tauberian_fit({100, 1000, 10000}, {1, 2, 3}); }) == Errc::DegenerateGrid);
    CHECK(code_of([] { tauberian_fit({1e5, 1e4, 1e6, 1e7, 1e8}, {1, 2, 3, 4, 5}); }) == Errc::DegenerateGrid);
    CHECK(code_of([] { tauberian_fit({1e5, 1e6, 1e7, 1e8, 1e9}, {1, 0, 3, 4, 5}); }) == Errc::DegenerateGrid);
}

TEST_CASE("half-decade grid") {
    CHECK(half_decade_grid(0, 4) == std::vector<u64>{1, 3, 10, 31, 100});
    CHECK(half_decade_grid(8, 9) == std::vector<u64>{10000, 31622});
}

TEST_CASE("divisor power sums") {
    CHECK(divisor_power_sum(1, 10).exact_sum == 27);
    CHECK(divisor_power_sum(0, 1000).exact_sum == 1000);
    std::vector<int> tau(5001, 0);
    for (int d = 1; d <= 5000; ++d)
        for (int m = d; m <= 5000; m += d) ++tau[m];
    unsigned long long s1 = 0, s2 = 0;
    long double sl = 0;
    const double t = std::log(3.0) / std::log(2.0);
    for (int n = 1; n <= 5000; ++n) {
        s1 += tau[n];
        s2 += static_cast<unsigned long long>(tau[n]) * tau[n];
        sl += std::pow(static_cast<long double>(tau[n]), t);
    }
    CHECK(static_cast<unsigned long long>(divisor_power_sum(1, 5000).exact_sum) == s1);
    CHECK(static_cast<unsigned long long>(divisor_power_sum(2, 5000).exact_sum) == s2);
    auto frac = divisor_power_sum(t, 5000);
    CHECK_FALSE(frac.exact);
    CHECK(static_cast<double>(frac.sum) == doctest::Approx(static_cast<double>(sl)).epsilon(1e-9));
    auto grid = divisor_power_sums(1, {100, 1000, 5000});
    REQUIRE(grid.size() == 3);
    CHECK(static_cast<unsigned long long>(grid[2].exact_sum) == s1);
}
