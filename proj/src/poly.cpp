#include "poly.hpp"

#include <algorithm>
#include <random>

#include "arith.hpp"
#include "error.hpp"

namespace tori {

int degree(const ZX& f) { return static_cast<int>(f.size()) - 1; }

void normalize(ZX& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZX zx_add(const ZX& a, const ZX& b) {
    ZX r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    normalize(r);
    return r;
}

ZX zx_sub(const ZX& a, const ZX& b) {
    ZX r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    normalize(r);
    return r;
}

ZX zx_mul(const ZX& a, const ZX& b) {
    if (a.empty() || b.empty()) return {};
    ZX r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

ZX zx_derivative(const ZX& f) {
    ZX r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<unsigned long>(i));
    normalize(r);
    return r;
}

bool zx_divides(const ZX& a, const ZX& b, ZX* quotient) {
    if (b.empty()) fail(Errc::Internal, "division by zero polynomial");
    ZX r = a;
    int db = degree(b);
    if (degree(r) < db) {
        if (quotient) quotient->clear();
        return r.empty();
    }
    ZX q(degree(r) - db + 1);
    for (int i = degree(r); i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return false;
        mpz_class c = r[i] / b.back();
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
    }
    normalize(r);
    if (!r.empty()) return false;
    normalize(q);
    if (quotient) *quotient = q;
    return true;
}

mpz_class zx_eval(const ZX& f, const mpz_class& x) {
    mpz_class v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
    return v;
}

namespace {

// Bareiss determinant.
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[s], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

mpz_class zx_resultant(const ZX& a, const ZX& b) {
    int m = degree(a), n = degree(b);
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    std::size_t sz = static_cast<std::size_t>(m + n);
    std::vector<std::vector<mpz_class>> s(sz, std::vector<mpz_class>(sz, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    return det_bareiss(std::move(s));
}

mpz_class zx_disc(const ZX& f) {
    int n = degree(f);
    if (n < 1) fail(Errc::Internal, "discriminant of a constant");
    mpz_class r = zx_resultant(f, zx_derivative(f));
    mpz_class d = r / f.back();
    if ((n * (n - 1) / 2) % 2) d = -d;
    return d;
}

ZX mod_reduce(const ZX& f, const mpz_class& m) {
    ZX r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpz_fdiv_r(r[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
    }
    normalize(r);
    return r;
}

ZX mod_mul(const ZX& a, const ZX& b, const mpz_class& m) { return mod_reduce(zx_mul(a, b), m); }
ZX mod_sub(const ZX& a, const ZX& b, const mpz_class& m) { return mod_reduce(zx_sub(a, b), m); }
ZX mod_add(const ZX& a, const ZX& b, const mpz_class& m) { return mod_reduce(zx_add(a, b), m); }

void mod_divmod(const ZX& a, const ZX& b, const mpz_class& m, ZX& q, ZX& r) {
    r = mod_reduce(a, m);
    int db = degree(b);
    if (db < 0) fail(Errc::Internal, "division by zero polynomial");
    mpz_class lead = b.back();
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), m.get_mpz_t()))
        fail(Errc::Internal, "leading coefficient not invertible");
    if (degree(r) < db) {
        q.clear();
        return;
    }
    q.assign(degree(r) - db + 1, 0);
    for (int i = degree(r); i >= db; --i) {
        if (i >= static_cast<int>(r.size()) || r[i] == 0) continue;
        mpz_class c = r[i] * inv;
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) {
            r[i - db + j] -= c * b[j];
            mpz_fdiv_r(r[i - db + j].get_mpz_t(), r[i - db + j].get_mpz_t(), m.get_mpz_t());
        }
    }
    normalize(r);
    normalize(q);
}

ZX fp_monic(const ZX& a, const mpz_class& p) {
    if (a.empty()) return a;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
    ZX r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * inv;
    return mod_reduce(r, p);
}

ZX fp_gcd(const ZX& a0, const ZX& b0, const mpz_class& p) {
    ZX a = mod_reduce(a0, p), b = mod_reduce(b0, p);
    while (!b.empty()) {
        ZX q, r;
        mod_divmod(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

ZX fp_powmod(const ZX& base, mpz_class e, const ZX& mod, const mpz_class& p) {
    ZX result{1}, b, q;
    mod_divmod(base, mod, p, q, b);
    if (degree(mod) == 0) return {};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            ZX t = mod_mul(result, b, p);
            mod_divmod(t, mod, p, q, result);
        }
        e >>= 1;
        if (e > 0) {
            ZX t = mod_mul(b, b, p);
            mod_divmod(t, mod, p, q, b);
        }
    }
    return result;
}

namespace {

ZX fp_div(const ZX& a, const ZX& b, const mpz_class& p) {
    ZX q, r;
    mod_divmod(a, b, p, q, r);
    return q;
}

ZX fp_deriv(const ZX& f, const mpz_class& p) { return mod_reduce(zx_derivative(f), p); }

// f(x) = g(x^p) over F_p; returns g, which is also the p-th root of f.
ZX fp_pth_root(const ZX& f, const mpz_class& p) {
    unsigned long pu = p.get_ui();
    ZX g;
    for (std::size_t i = 0; i < f.size(); i += pu) g.push_back(f[i]);
    normalize(g);
    return g;
}

void fp_squarefree(const ZX& f, const mpz_class& p, int mult, std::vector<std::pair<ZX, int>>& out) {
    if (degree(f) < 1) return;
    ZX d = fp_deriv(f, p);
    int pe = static_cast<int>(p.get_ui());
    if (d.empty()) {
        fp_squarefree(fp_pth_root(f, p), p, mult * pe, out);
        return;
    }
    ZX c = fp_gcd(f, d, p);
    ZX w = fp_div(f, c, p);
    int i = 1;
    while (degree(w) > 0) {
        ZX y = fp_gcd(w, c, p);
        ZX z = fp_div(w, y, p);
        if (degree(z) > 0) out.emplace_back(fp_monic(z, p), i * mult);
        ++i;
        w = y;
        c = fp_div(c, y, p);
    }
    if (degree(c) > 0) fp_squarefree(fp_pth_root(c, p), p, mult * pe, out);
}

void fp_equal_degree(const ZX& f, int d, const mpz_class& p, std::mt19937_64& rng, std::vector<ZX>& out) {
    int n = degree(f);
    if (n == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(static_cast<unsigned long>(rng()));
    for (;;) {
        ZX a(n);
        for (int i = 0; i < n; ++i) a[i] = gr.get_z_range(p);
        normalize(a);
        if (degree(a) < 1) continue;
        ZX b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            ZX t = a, q, r;
            mod_divmod(t, f, p, q, t);
            b = t;
            for (int i = 1; i < d; ++i) {
                ZX sq = mod_mul(t, t, p);
                mod_divmod(sq, f, p, q, t);
                b = mod_add(b, t, p);
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            b = mod_sub(fp_powmod(a, e, f, p), ZX{1}, p);
        }
        ZX g = fp_gcd(b, f, p);
        if (degree(g) > 0 && degree(g) < n) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_div(f, g, p), d, p, rng, out);
            return;
        }
    }
}

void fp_distinct_degree(const ZX& f0, const mpz_class& p, std::vector<ZX>& out) {
    std::mt19937_64 rng(0x5eed);
    ZX f = fp_monic(f0, p);
    ZX x{0, 1};
    ZX h = x;
    for (int i = 1; degree(f) >= 2 * i; ++i) {
        h = fp_powmod(h, p, f, p);
        ZX g = fp_gcd(f, mod_sub(h, x, p), p);
        if (degree(g) > 0) {
            fp_equal_degree(g, i, p, rng, out);
            f = fp_div(f, g, p);
            ZX q;
            mod_divmod(h, f, p, q, h);
        }
    }
    if (degree(f) > 0) out.push_back(fp_monic(f, p));
}

}  // namespace

std::vector<std::pair<ZX, int>> factor_mod_p(const ZX& f, const mpz_class& p) {
    ZX g = mod_reduce(f, p);
    if (g.empty()) fail(Errc::Internal, "polynomial vanishes mod p");
    std::vector<std::pair<ZX, int>> sqf, out;
    fp_squarefree(fp_monic(g, p), p, 1, sqf);
    for (auto& [h, e] : sqf) {
        std::vector<ZX> irr;
        fp_distinct_degree(h, p, irr);
        for (auto& r : irr) out.emplace_back(r, e);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return out;
}

namespace {

// Extended gcd over F_p: s*a + t*b = 1 for coprime a, b.
void fp_xgcd(const ZX& a, const ZX& b, const mpz_class& p, ZX& s, ZX& t) {
    ZX r0 = mod_reduce(a, p), r1 = mod_reduce(b, p);
    ZX s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        ZX q, r;
        mod_divmod(r0, r1, p, q, r);
        ZX s2 = mod_sub(s0, mod_mul(q, s1, p), p);
        ZX t2 = mod_sub(t0, mod_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant.
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
    s = mod_reduce(zx_mul(s0, ZX{inv}), p);
    t = mod_reduce(zx_mul(t0, ZX{inv}), p);
}

// Lift f = g*h (mod p, g and h monic, coprime) to modulus >= bound.
void hensel_two(const ZX& f, ZX& g, ZX& h, const mpz_class& p, const mpz_class& bound, mpz_class& m) {
    ZX s, t;
    fp_xgcd(g, h, p, s, t);
    m = p;
    while (m < bound) {
        mpz_class m2 = m * m;
        ZX e = mod_sub(f, zx_mul(g, h), m2);
        ZX q, r;
        mod_divmod(zx_mul(s, e), h, m2, q, r);
        ZX gs = mod_reduce(zx_add(zx_add(g, zx_mul(t, e)), zx_mul(q, g)), m2);
        ZX hs = mod_reduce(zx_add(h, r), m2);
        ZX b = mod_sub(zx_add(zx_mul(s, gs), zx_mul(t, hs)), ZX{1}, m2);
        ZX c, d;
        mod_divmod(zx_mul(s, b), hs, m2, c, d);
        s = mod_sub(s, d, m2);
        t = mod_reduce(zx_sub(zx_sub(t, zx_mul(t, b)), zx_mul(c, gs)), m2);
        g = std::move(gs);
        h = std::move(hs);
        m = m2;
    }
}

void hensel_multi(const ZX& f, const std::vector<ZX>& facs, const mpz_class& p, const mpz_class& bound,
                  std::vector<ZX>& out, mpz_class& m) {
    if (facs.size() == 1) {
        // The single factor is f itself modulo the final modulus.
        ZX g = f;
        m = p;
        while (m < bound) m *= m;
        out.push_back(mod_reduce(g, m));
        return;
    }
    std::size_t half = facs.size() / 2;
    ZX g{1}, h{1};
    for (std::size_t i = 0; i < half; ++i) g = mod_mul(g, facs[i], p);
    for (std::size_t i = half; i < facs.size(); ++i) h = mod_mul(h, facs[i], p);
    hensel_two(f, g, h, p, bound, m);
    std::vector<ZX> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    mpz_class m1, m2;
    hensel_multi(g, left, p, bound, out, m1);
    hensel_multi(h, right, p, bound, out, m2);
}

ZX symmetric(const ZX& f, const mpz_class& m) {
    ZX r = mod_reduce(f, m);
    mpz_class half = m / 2;
    for (auto& c : r)
        if (c > half) c -= m;
    normalize(r);
    return r;
}

}  // namespace

bool zx_irreducible(const ZX& f0) {
    int n = degree(f0);
    if (n < 1) return false;
    if (n == 1) return true;
    // Content must be 1.
    mpz_class cont = 0;
    for (auto& c : f0) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
    if (cont != 1) return false;
    // Make monic: F(x) = lc^(n-1) f(x/lc), so F_i = sgn * a_i * lc^(n-1-i).
    mpz_class lc = abs(f0.back());
    int sgn = f0.back() < 0 ? -1 : 1;
    ZX f(n + 1);
    for (int i = 0; i < n; ++i) {
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(n - 1 - i));
        f[i] = sgn * f0[i] * e;
    }
    f[n] = 1;
    mpz_class disc = zx_disc(f);
    if (disc == 0) return false;  // repeated factor

    // Pick the prime (among a few) giving the fewest modular factors.
    std::vector<ZX> best;
    mpz_class bestp = 0;
    int tried = 0;
    for (std::uint32_t q : primes_upto(2000)) {
        if (q < 3) continue;
        mpz_class p = q;
        if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
        auto fac = factor_mod_p(f, p);
        std::vector<ZX> irr;
        for (auto& [g, e] : fac) irr.push_back(g);
        if (irr.size() == 1) return true;
        if (bestp == 0 || irr.size() < best.size()) {
            best = irr;
            bestp = p;
        }
        if (++tried >= 6) break;
    }
    if (bestp == 0) fail(Errc::Internal, "no good prime for factoring");

    // Coefficient bound for factors of degree <= n.
    mpz_class norm2 = 0;
    for (auto& c : f) norm2 += c * c;
    mpz_class b = sqrt(norm2) + 1;
    mpz_class bound = b << (n + 1);
    std::vector<ZX> lifted;
    mpz_class m;
    hensel_multi(f, best, bestp, bound, lifted, m);

    std::size_t r = lifted.size();
    for (std::size_t s = 1; 2 * s <= r; ++s) {
        std::vector<int> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
        for (;;) {
            ZX g{1};
            for (int i : idx) g = mod_mul(g, lifted[i], m);
            g = symmetric(g, m);
            if (zx_divides(f, g)) return false;
            int k = static_cast<int>(s) - 1;
            while (k >= 0 && idx[k] == static_cast<int>(r - s) + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (std::size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return true;
}

}  // namespace tori
