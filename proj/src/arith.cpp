#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "error.hpp"

namespace tori {

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

std::vector<std::int8_t> mobius_upto(std::uint32_t n) {
    std::vector<std::int8_t> mu(n + 1, 1);
    std::vector<bool> comp(n + 1, false);
    mu[0] = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        for (std::uint64_t j = i; j <= n; j += i) {
            if (j > i) comp[j] = true;
            mu[j] = static_cast<std::int8_t>(-mu[j]);
        }
        for (std::uint64_t j = i * i; j <= n; j += i * i) mu[j] = 0;
    }
    return mu;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 icbrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::cbrt(static_cast<long double>(n)));
    auto cube = [](u64 x) { return static_cast<u128>(x) * x * x; };
    while (r > 0 && cube(r) > n) --r;
    while (cube(r + 1) <= n) ++r;
    return r;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        u64 r = 1;
        const u64 m = 64;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

mpz_class pollard_brent_mpz(const mpz_class& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x = 2, q = 1, g = 1, ys = 2, t;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](mpz_class& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    f(y);
                    t = x - y;
                    q = (q * t) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
            if (r > (1ul << 26)) fail(Errc::Internal, "factorization did not converge");
        } while (g == 1);
        if (g == n) {
            do {
                f(ys);
                t = x - ys;
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec_mpz(const mpz_class& n, std::map<mpz_class, int>& out) {
    if (n == 1) return;
    if (n.fits_ulong_p()) {
        std::map<u64, int> small;
        factor_rec(n.get_ui(), small);
        for (auto& [p, e] : small) out[mpz_class(static_cast<unsigned long>(p))] += e;
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_brent_mpz(n);
    factor_rec_mpz(d, out);
    factor_rec_mpz(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (a % n == 0) continue;
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::map<u64, int> out;
    if (n == 0) fail(Errc::Internal, "factor of zero");
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    factor_rec(n, out);
    return {out.begin(), out.end()};
}

std::vector<std::pair<mpz_class, int>> factor_mpz(const mpz_class& n0) {
    mpz_class n = abs(n0);
    if (n == 0) fail(Errc::Internal, "factor of zero");
    std::map<mpz_class, int> out;
    for (unsigned long p = 2; p < 5000; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out[mpz_class(p)] += e;
        }
        if (n == 1) break;
    }
    factor_rec_mpz(n, out);
    return {out.begin(), out.end()};
}

bool is_squarefree_u64(u64 n) {
    for (auto& [p, e] : factor_u64(n))
        if (e > 1) return false;
    return true;
}

bool is_square_mpz(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_fundamental(i64 d) {
    if (d == 0 || d == 1) return false;
    u64 a = static_cast<u64>(d < 0 ? -d : d);
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return is_squarefree_u64(a);
    if (r != 0) return false;
    i64 m = d / 4;
    i64 mr = ((m % 4) + 4) % 4;
    if (mr != 2 && mr != 3) return false;
    return is_squarefree_u64(a / 4);
}

mpz_class quad_disc_of(const mpz_class& n) {
    if (n == 0 || is_square_mpz(n)) fail(Errc::Degenerate, "square class of a square is trivial");
    mpz_class core = 1;
    for (auto& [p, e] : factor_mpz(n))
        if (e % 2) core *= p;
    if (n < 0) core = -core;
    mpz_class r = core % 4;
    if (r < 0) r += 4;
    return r == 1 ? core : mpz_class(4 * core);
}

i64 quad_disc_of(i64 n) { return to_i64(quad_disc_of(to_mpz(n))); }

u64 count_odd_squarefree(u64 y) {
    if (y == 0) return 0;
    u64 r = isqrt_u64(y);
    // Cached Mobius table grows on demand; callers hit it from many threads.
    static std::mutex mu_lock;
    static std::vector<std::int8_t> mu;
    const std::int8_t* mup;
    {
        std::lock_guard<std::mutex> g(mu_lock);
        if (mu.size() <= r) mu = mobius_upto(static_cast<std::uint32_t>(std::max<u64>(r, 2 * mu.size()) + 1));
        mup = mu.data();
    }
    i64 total = 0;
    for (u64 k = 1; k <= r; k += 2) {
        if (!mup[k]) continue;
        u64 m = y / (k * k);
        total += mup[k] * static_cast<i64>((m + 1) / 2);
    }
    return static_cast<u64>(total);
}

u64 count_fundamental(u64 y) {
    if (y < 3) return 0;
    return count_odd_squarefree(y) - 1 + count_odd_squarefree(y / 4) + 2 * count_odd_squarefree(y / 8);
}

i64 to_i64(const mpz_class& v) {
    if (!v.fits_slong_p()) fail(Errc::Internal, "integer overflow converting " + v.get_str());
    return v.get_si();
}

FactoredInt::FactoredInt(const mpz_class& n) {
    if (n == 0) fail(Errc::InvalidDiscriminant, "zero has no factorization");
    sign_ = n < 0 ? -1 : 1;
    for (auto& [p, e] : factor_mpz(n)) f_[p] = e;
}

int FactoredInt::valuation(const mpz_class& p) const {
    auto it = f_.find(p);
    return it == f_.end() ? 0 : it->second;
}

mpz_class FactoredInt::value() const {
    mpz_class num = 1, den = 1, t;
    for (auto& [p, e] : f_) {
        mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e > 0 ? e : -e));
        (e > 0 ? num : den) *= t;
    }
    if (den != 1) fail(Errc::NonIntegralQuotient, "value of a non-integral quotient");
    return sign_ * num;
}

bool FactoredInt::integral() const {
    return std::all_of(f_.begin(), f_.end(), [](auto& kv) { return kv.second > 0; });
}

FactoredInt FactoredInt::abs() const {
    FactoredInt r = *this;
    r.sign_ = 1;
    return r;
}

FactoredInt FactoredInt::operator*(const FactoredInt& o) const {
    FactoredInt r = *this;
    r.sign_ *= o.sign_;
    for (auto& [p, e] : o.f_) {
        int v = (r.f_[p] += e);
        if (v == 0) r.f_.erase(p);
    }
    return r;
}

FactoredInt FactoredInt::operator/(const FactoredInt& o) const {
    FactoredInt r = *this;
    r.sign_ *= o.sign_;
    for (auto& [p, e] : o.f_) {
        int v = (r.f_[p] -= e);
        if (v == 0) r.f_.erase(p);
    }
    return r;
}

FactoredInt FactoredInt::pow(int e) const {
    FactoredInt r;
    r.sign_ = (e % 2 == 0) ? 1 : sign_;
    if (e == 0) return r;
    for (auto& [p, v] : f_) r.f_[p] = v * e;
    return r;
}

FactoredInt FactoredInt::lcm(const FactoredInt& a, const FactoredInt& b) {
    FactoredInt r = a.abs();
    for (auto& [p, e] : b.f_) r.f_[p] = std::max(r.valuation(p), e);
    return r;
}

std::string FactoredInt::str() const {
    std::ostringstream os;
    if (sign_ < 0) os << '-';
    if (f_.empty()) {
        os << '1';
        return os.str();
    }
    bool first = true;
    for (auto& [p, e] : f_) {
        if (!first) os << '*';
        first = false;
        os << p.get_str();
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

}  // namespace tori
