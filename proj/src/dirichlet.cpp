#include "dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "fields.hpp"

namespace tori {

bool PrimePredicate::matches(u64 p) const {
    switch (kind) {
        case Kind::All:
            return true;
        case Kind::Explicit:
            return p == prime;
        case Kind::Congruence:
            return std::find(residues.begin(), residues.end(), p % modulus) != residues.end();
    }
    return false;
}

std::string PrimePredicate::str() const {
    switch (kind) {
        case Kind::All:
            return "all";
        case Kind::Explicit:
            return "p=" + std::to_string(prime);
        case Kind::Congruence: {
            std::string s = "p%" + std::to_string(modulus) + " in {";
            for (std::size_t i = 0; i < residues.size(); ++i) s += (i ? "," : "") + std::to_string(residues[i]);
            return s + "}";
        }
    }
    return "";
}

std::vector<i64> CoefficientVector::partial_sums(const std::vector<u64>& grid) const {
    std::vector<i64> out;
    i64 s = 0;
    u64 n = 1;
    for (u64 X : grid) {
        if (X > N) fail(Errc::BoundExceeded, "partial sum beyond the expansion bound");
        for (; n <= X; ++n) s += a[n];
        out.push_back(s);
    }
    return out;
}

namespace {

// Two predicates share a prime iff some prime satisfies both; by Dirichlet every
// coprime residue class mod the lcm holds primes, so classes are compared there.
bool overlap(const PrimePredicate& x, const PrimePredicate& y) {
    using K = PrimePredicate::Kind;
    if (x.kind == K::All || y.kind == K::All) return true;
    if (x.kind == K::Explicit) return y.matches(x.prime);
    if (y.kind == K::Explicit) return x.matches(y.prime);
    u64 L = std::lcm(x.modulus, y.modulus);
    if (L > 100000000) fail(Errc::Usage, "congruence moduli too large to compare");
    for (u64 r = 1; r < L; ++r)
        if (std::gcd(r, L) == 1 && x.matches(r) && y.matches(r)) return true;
    // primes dividing the modulus sit in non-coprime classes
    for (auto& [q, e] : factor_u64(L))
        if (x.matches(q) && y.matches(q)) return true;
    return false;
}

std::vector<std::uint32_t> smallest_prime_factor(u64 N) {
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (u64 i = 2; i <= N; ++i) {
        if (spf[i]) continue;
        for (u64 j = i; j <= N; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

}  // namespace

void check_partition(const EulerFactorSpec& spec) {
    for (std::size_t i = 0; i < spec.factors.size(); ++i)
        for (std::size_t j = i + 1; j < spec.factors.size(); ++j)
            if (overlap(spec.factors[i].primes, spec.factors[j].primes))
                fail(Errc::OverlappingPredicates, spec.name + ": " + spec.factors[i].primes.str() + " and " +
                                                      spec.factors[j].primes.str() + " share primes");
}

CoefficientVector expand_euler(const EulerFactorSpec& spec, u64 N) {
    if (N < 1) fail(Errc::Usage, "N must be positive");
    check_partition(spec);
    CoefficientVector out;
    out.N = N;
    out.a.assign(N + 1, 0);
    out.a[1] = 1;
    auto spf = smallest_prime_factor(N);
    // coefficient of p^k for the prime p, cached per prime as we meet it
    std::vector<i64> local;
    u64 local_p = 0;
    for (u64 n = 2; n <= N; ++n) {
        u64 p = spf[n], m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (out.a[m] == 0) continue;
        if (p != local_p) {
            local_p = p;
            local.clear();
            for (auto& f : spec.factors)
                if (f.primes.matches(p)) {
                    for (auto& [e, c] : f.terms) {
                        if (local.size() <= static_cast<std::size_t>(e)) local.resize(e + 1, 0);
                        local[e] = c;
                    }
                }
        }
        i64 c = static_cast<std::size_t>(k) < local.size() ? local[k] : 0;
        out.a[n] = out.a[m] * c;
    }
    return out;
}

EulerFactorSpec series_spec(const std::string& name) {
    using P = PrimePredicate;
    if (name == "g1")
        return {name, {{P::congruence(6, {1}), {{2, 2}, {3, 3}}}, {P::congruence(6, {5}), {{3, 1}}}}};
    if (name == "g2") return {name, {{P::explicit_prime(2), {{2, 1}, {3, 2}}}, {P::congruence(2, {1}), {{1, 1}}}}};
    if (name == "g3") return {name, {{P::explicit_prime(3), {{4, 2}}}, {P::congruence(6, {1}), {{2, 2}}}}};
    if (name == "h")
        return {name, {{P::explicit_prime(2), {{6, 1}, {9, 2}}}, {P::explicit_prime(3), {{3, 1}, {4, 2}, {5, 2}}}}};
    if (name == "lemma25") return {name, {{P::congruence(7, {1, 6}), {{1, 3}}}}};
    fail(Errc::Unrecognized, "unknown series " + name);
}

const std::vector<std::string>& series_names() {
    static const std::vector<std::string> n = {"g1", "g2", "g3", "h", "lemma42", "lemma25"};
    return n;
}

CoefficientVector dirichlet_convolve(const CoefficientVector& x, const CoefficientVector& y) {
    u64 N = std::min(x.N, y.N);
    CoefficientVector out;
    out.N = N;
    out.denom = x.denom * y.denom;
    out.a.assign(N + 1, 0);
    for (u64 i = 1; i <= N; ++i) {
        if (x.a[i] == 0) continue;
        for (u64 j = 1; i * j <= N; ++j) out.a[i * j] += x.a[i] * y.a[j];
    }
    return out;
}

CoefficientVector argument_scale(const CoefficientVector& x, int k, u64 N) {
    CoefficientVector out;
    out.N = N;
    out.denom = x.denom;
    out.a.assign(N + 1, 0);
    for (u64 n = 1; n <= x.N; ++n) {
        u128 m = 1;
        for (int i = 0; i < k && m <= N; ++i) m *= n;
        if (m > N) break;
        out.a[static_cast<u64>(m)] = x.a[n];
    }
    return out;
}

CoefficientVector lemma42_rhs(u64 N) {
    auto hg1 = dirichlet_convolve(expand_euler(series_spec("h"), N), expand_euler(series_spec("g1"), N));
    u64 r = icbrt_u64(N);
    auto g2_3s = argument_scale(expand_euler(series_spec("g2"), std::max<u64>(r, 1)), 3, N);
    auto g3 = expand_euler(series_spec("g3"), N);
    CoefficientVector out;
    out.N = N;
    out.denom = 2;
    out.a.assign(N + 1, 0);
    for (u64 n = 1; n <= N; ++n) out.a[n] = hg1.a[n] - g2_3s.a[n] - g3.a[n] + (n == 1 ? 1 : 0);
    return out;
}

CoefficientVector census_c6(u64 N) {
    CoefficientVector out;
    out.N = N;
    out.a.assign(N + 1, 0);
    auto conductors = cyclic_cubic_conductors(static_cast<i64>(isqrt_u64(N / 3)));
    for_each_quadratic(static_cast<i64>(icbrt_u64(N)), [&](i64 d) {
        u64 ad = static_cast<u64>(d < 0 ? -d : d);
        for (auto& c : conductors) {
            u64 f = static_cast<u64>(c.f);
            if (static_cast<u128>(ad) * f * f > N) break;
            u64 l = ad / gcd_u64(ad, f) * f;
            u128 n = static_cast<u128>(ad) * l * l;
            if (n <= N) out.a[static_cast<u64>(n)] += c.fields;
        }
    });
    return out;
}

namespace {

struct FitWindow {
    std::size_t from = 0;
    std::vector<long double> x1, x2, y;
};

FitWindow fit_window(const std::vector<double>& grid, const std::vector<double>& sums, bool drop_first_decade,
                     std::size_t min_points) {
    if (grid.size() != sums.size()) fail(Errc::DegenerateGrid, "grid and sums differ in length");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) fail(Errc::DegenerateGrid, "grid is not strictly increasing");
    FitWindow w;
    if (drop_first_decade && !grid.empty())
        while (w.from < grid.size() && grid[w.from] < 10 * grid[0] * (1 - 1e-12)) ++w.from;
    if (grid.size() - w.from < min_points)
        fail(Errc::DegenerateGrid, "need at least " + std::to_string(min_points) + " grid points in the fit window");
    for (std::size_t i = w.from; i < grid.size(); ++i) {
        if (grid[i] <= std::exp(1.0)) fail(Errc::DegenerateGrid, "grid points must exceed e");
        if (!(sums[i] > 0)) fail(Errc::DegenerateGrid, "partial sums must be positive");
        long double L = std::log(static_cast<long double>(grid[i]));
        w.x1.push_back(L);
        w.x2.push_back(std::log(L));
        w.y.push_back(std::log(static_cast<long double>(sums[i])));
    }
    return w;
}

long double mean(const std::vector<long double>& v) {
    long double s = 0;
    for (auto t : v) s += t;
    return s / v.size();
}

}  // namespace

PartialSumFit tauberian_fit(const std::vector<double>& grid, const std::vector<double>& sums, bool drop_first_decade) {
    FitWindow win = fit_window(grid, sums, drop_first_decade, 4);
    PartialSumFit fit;
    fit.grid = grid;
    fit.sums = sums;
    fit.used_from = win.from;
    auto& x1 = win.x1;
    auto& x2 = win.x2;
    auto& y = win.y;
    std::size_t n = y.size();
    // centered normal equations
    long double m1 = mean(x1), m2 = mean(x2), my = mean(y);
    long double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double a = x1[i] - m1, b = x2[i] - m2, c = y[i] - my;
        s11 += a * a;
        s12 += a * b;
        s22 += b * b;
        s1y += a * c;
        s2y += b * c;
        syy += c * c;
    }
    long double det = s11 * s22 - s12 * s12;
    if (!(std::fabs(det) > 1e-18L * s11 * s22)) fail(Errc::DegenerateGrid, "regressors are collinear");
    long double a = (s1y * s22 - s2y * s12) / det;
    long double b = (s2y * s11 - s1y * s12) / det;
    fit.a_hat = static_cast<double>(a);
    fit.w_hat = static_cast<double>(b + 1);
    fit.c_hat = static_cast<double>(my - a * m1 - b * m2);
    long double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double r = y[i] - (a * x1[i] + b * x2[i] + fit.c_hat);
        rss += r * r;
    }
    fit.r2 = syy > 0 ? static_cast<double>(1 - rss / syy) : 1.0;
    return fit;
}

PartialSumFit tauberian_fit_fixed_w(const std::vector<double>& grid, const std::vector<double>& sums, double w,
                                    bool drop_first_decade) {
    FitWindow win = fit_window(grid, sums, drop_first_decade, 3);
    PartialSumFit fit;
    fit.grid = grid;
    fit.sums = sums;
    fit.used_from = win.from;
    fit.w_hat = w;
    std::size_t n = win.y.size();
    std::vector<long double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = win.y[i] - (w - 1) * win.x2[i];
    long double m1 = mean(win.x1), mz = mean(z), s11 = 0, s1z = 0, szz = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double a = win.x1[i] - m1, c = z[i] - mz;
        s11 += a * a;
        s1z += a * c;
        szz += c * c;
    }
    long double a = s1z / s11;
    fit.a_hat = static_cast<double>(a);
    fit.c_hat = static_cast<double>(mz - a * m1);
    long double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double r = z[i] - (a * win.x1[i] + fit.c_hat);
        rss += r * r;
    }
    fit.r2 = szz > 0 ? static_cast<double>(1 - rss / szz) : 1.0;
    return fit;
}

std::vector<u64> half_decade_grid(int k_lo, int k_hi) {
    std::vector<u64> g;
    for (int k = k_lo; k <= k_hi; ++k) {
        u64 X = 1;
        for (int i = 0; i < k / 2; ++i) X *= 10;
        if (k % 2) X = isqrt_u64(X * X * 10);
        g.push_back(X);
    }
    return g;
}

std::vector<DivisorPowerSum> divisor_power_sums(double t, const std::vector<u64>& grid) {
    if (grid.empty()) return {};
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] < 2 || (i && grid[i] <= grid[i - 1])) fail(Errc::Usage, "grid must be ascending with X >= 2");
    if (!(t >= 0)) fail(Errc::Usage, "t must be nonnegative");
    bool integral = t == std::floor(t) && t <= 8;
    int ti = static_cast<int>(t);
    u64 N = grid.back();
    auto primes = primes_upto(static_cast<std::uint32_t>(isqrt_u64(N)) + 1);
    std::vector<long double> powcache;
    auto tpow = [&](std::uint32_t tau) {
        if (powcache.size() <= tau) {
            std::size_t old = powcache.size();
            powcache.resize(tau + 64);
            for (std::size_t k = old; k < powcache.size(); ++k) powcache[k] = std::pow(static_cast<long double>(k), t);
        }
        return powcache[tau];
    };
    std::vector<DivisorPowerSum> out;
    u128 exact = 0;
    long double approx = 0;
    std::size_t gi = 0;
    const u64 block = u64{1} << 18;
    std::vector<u64> rem(block);
    std::vector<std::uint32_t> tau(block);
    for (u64 lo = 1; lo <= N && gi < grid.size(); lo += block) {
        u64 hi = std::min(lo + block, N + 1);
        for (u64 m = lo; m < hi; ++m) {
            rem[m - lo] = m;
            tau[m - lo] = 1;
        }
        for (u64 p : primes) {
            if (p * p >= hi) break;
            for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
                u64& r = rem[m - lo];
                std::uint32_t e = 0;
                while (r % p == 0) {
                    r /= p;
                    ++e;
                }
                tau[m - lo] *= e + 1;
            }
        }
        for (u64 m = lo; m < hi; ++m) {
            std::uint32_t tv = tau[m - lo] * (rem[m - lo] > 1 ? 2 : 1);
            if (integral) {
                u128 v = 1;
                for (int k = 0; k < ti; ++k) v *= tv;
                exact += v;
            } else {
                approx += tpow(tv);
            }
            while (gi < grid.size() && grid[gi] == m) {
                DivisorPowerSum d;
                d.t = t;
                d.X = m;
                d.exact = integral;
                d.exact_sum = exact;
                d.sum = integral ? static_cast<long double>(exact) : approx;
                long double L = std::log(static_cast<long double>(m));
                d.ratio = static_cast<double>(d.sum / (m * std::pow(L, std::pow(2.0L, t) - 1)));
                out.push_back(d);
                ++gi;
            }
        }
    }
    return out;
}

DivisorPowerSum divisor_power_sum(double t, u64 X) { return divisor_power_sums(t, {X}).at(0); }

}  // namespace tori
