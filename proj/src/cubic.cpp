#include "cubic.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace tori {

i128 BinaryCubicForm::disc() const {
    i128 A = a, B = b, C = c, D = d;
    return 18 * A * B * C * D + B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D - 27 * A * A * D * D;
}

BinaryCubicForm substitute(const BinaryCubicForm& f, i64 al, i64 be, i64 ga, i64 de) {
    // Expand (al x + be y)^i (ga x + de y)^(3-i) with the form's coefficients.
    auto lin_pow = [](i64 u, i64 v, int k) {
        std::vector<i128> p{1};
        for (int t = 0; t < k; ++t) {
            std::vector<i128> q(p.size() + 1, 0);
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i] += p[i] * u;      // x^(deg) coefficient order: index = power of y
                q[i + 1] += p[i] * v;
            }
            p = q;
        }
        return p;
    };
    i64 co[4] = {f.a, f.b, f.c, f.d};
    i128 out[4] = {0, 0, 0, 0};
    for (int i = 0; i <= 3; ++i) {
        // term co[i] * X^(3-i) * Y^i with X = al x + be y, Y = ga x + de y
        auto px = lin_pow(al, be, 3 - i);
        auto py = lin_pow(ga, de, i);
        for (std::size_t s = 0; s < px.size(); ++s)
            for (std::size_t t = 0; t < py.size(); ++t) out[s + t] += co[i] * px[s] * py[t];
    }
    BinaryCubicForm g;
    g.a = static_cast<i64>(out[0]);
    g.b = static_cast<i64>(out[1]);
    g.c = static_cast<i64>(out[2]);
    g.d = static_cast<i64>(out[3]);
    return g;
}

namespace {

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
i64 ceildiv(i64 a, i64 b) { return -floordiv(-a, b); }

i128 eval_form(const BinaryCubicForm& f, i128 x, i128 y) {
    return ((f.a * x + f.b * y) * x + f.c * y * y) * x + f.d * y * y * y;
}

// Real roots of x^3 + B x^2 + C x + D.
std::vector<long double> real_roots_monic(long double B, long double C, long double D) {
    long double p = C - B * B / 3, q = 2 * B * B * B / 27 - B * C / 3 + D;
    long double disc = q * q / 4 + p * p * p / 27;
    std::vector<long double> t;
    if (disc > 0) {
        long double s = std::sqrt(disc);
        t.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
    } else {
        long double m = 2 * std::sqrt(-p / 3);
        long double arg = p == 0 ? 0 : (3 * q) / (p * m);
        arg = std::clamp(arg, -1.0L, 1.0L);
        long double th = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k) t.push_back(m * std::cos(th - 2 * M_PIl * k / 3));
    }
    for (auto& r : t) {
        r -= B / 3;
        for (int it = 0; it < 3; ++it) {
            long double fv = ((r + B) * r + C) * r + D, dv = (3 * r + 2 * B) * r + C;
            if (dv != 0) r -= fv / dv;
        }
    }
    return t;
}

bool hessian_reduced(const BinaryCubicForm& f) {
    i128 P = static_cast<i128>(f.b) * f.b - 3 * static_cast<i128>(f.a) * f.c;
    i128 Q = static_cast<i128>(f.b) * f.c - 9 * static_cast<i128>(f.a) * f.d;
    i128 R = static_cast<i128>(f.c) * f.c - 3 * static_cast<i128>(f.b) * f.d;
    return 0 <= Q && Q <= P && P <= R;
}

// Reducedness for negative discriminant: |B| < a < C for the quadratic cofactor.
bool neg_reduced(const BinaryCubicForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    if (a <= 0) return false;
    if ((a + b) * (a + b + c) - a * d <= 0) return false;
    if (a * d + (a - b) * (a - b + c) <= 0) return false;
    return d * (d - b) + a * (c - a) > 0;
}

BinaryCubicForm positive_lead(BinaryCubicForm g) {
    if (g.a < 0) g = {-g.a, -g.b, -g.c, -g.d};
    return g;
}

// Smallest reduced form reachable through unimodular matrices with entries in {-1,0,1}.
BinaryCubicForm min_small_image(const BinaryCubicForm& f) {
    BinaryCubicForm best = f;
    for (i64 al = -1; al <= 1; ++al)
        for (i64 be = -1; be <= 1; ++be)
            for (i64 ga = -1; ga <= 1; ++ga)
                for (i64 de = -1; de <= 1; ++de) {
                    i64 det = al * de - be * ga;
                    if (det != 1 && det != -1) continue;
                    BinaryCubicForm g = positive_lead(substitute(f, al, be, ga, de));
                    if (g.a == 0 || !hessian_reduced(g)) continue;
                    if (g < best) best = g;
                }
    return best;
}

bool on_hessian_boundary(const BinaryCubicForm& f) {
    i128 P = static_cast<i128>(f.b) * f.b - 3 * static_cast<i128>(f.a) * f.c;
    i128 Q = static_cast<i128>(f.b) * f.c - 9 * static_cast<i128>(f.a) * f.d;
    i128 R = static_cast<i128>(f.c) * f.c - 3 * static_cast<i128>(f.b) * f.d;
    return Q == 0 || Q == P || P == R;
}

// Small polynomial gcd over F_p, coefficients low to high.
std::vector<i64> gcd_mod(std::vector<i64> a, std::vector<i64> b, i64 p) {
    auto trim = [&](std::vector<i64>& v) {
        for (auto& x : v) x = ((x % p) + p) % p;
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    auto inv = [&](i64 x) {
        i64 r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = static_cast<i64>(static_cast<i128>(r) * base % p);
            base = static_cast<i64>(static_cast<i128>(base) * base % p);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            i64 f = static_cast<i64>(static_cast<i128>(a.back()) * inv(b.back()) % p);
            std::size_t sh = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[sh + i] = static_cast<i64>(((a[sh + i] - static_cast<i128>(f) * b[i]) % p + p) % p);
            trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        i64 iv = inv(a.back());
        for (auto& x : a) x = static_cast<i64>(static_cast<i128>(x) * iv % p);
    }
    return a;
}

}  // namespace

bool form_irreducible(const BinaryCubicForm& f) {
    if (f.a == 0 || f.d == 0) return false;
    // Roots of F(x,1) scaled by a are roots of the monic x^3 + b x^2 + ac x + a^2 d.
    long double B = f.b, C = static_cast<long double>(f.a) * f.c,
                D = static_cast<long double>(f.a) * f.a * f.d;
    for (long double r : real_roots_monic(B, C, D)) {
        i64 base = static_cast<i64>(std::llround(r));
        for (i64 k = base - 1; k <= base + 1; ++k) {
            // Integer root k of the monic polynomial means F(k, a) = 0.
            if (eval_form(f, k, f.a) == 0) return false;
        }
    }
    return true;
}

bool form_p_maximal(const BinaryCubicForm& f, i64 p) {
    auto m = [&](i64 v) { return ((v % p) + p) % p; };
    if (m(f.a) == 0 && m(f.b) == 0 && m(f.c) == 0 && m(f.d) == 0) return false;
    i128 pp = static_cast<i128>(p) * p;
    // Multiple root at infinity.
    if (m(f.a) == 0 && m(f.b) == 0) return f.a % pp != 0;
    // Affine multiple root r: root of gcd(F(x,1), F'(x,1)) mod p.
    std::vector<i64> poly{f.d, f.c, f.b, f.a};
    std::vector<i64> der{f.c, 2 * f.b, 3 * f.a};
    auto g = gcd_mod(poly, der, p);
    if (g.size() < 2) return true;  // no multiple root: p does not divide the discriminant
    i64 r;
    if (g.size() == 2) {
        r = m(-g[0]);
    } else {
        // Triple root: the gcd is a power of (x - r); find r by search.
        r = -1;
        for (i64 x = 0; x < p && r < 0; ++x) {
            i128 v = 0;
            for (auto it = g.rbegin(); it != g.rend(); ++it) v = (v * x + *it) % p;
            if (v == 0) r = x;
        }
        if (r < 0) return true;
    }
    // Move the root to infinity: G(x, y) = F(r x + y, x), G(1,0) = F(r, 1).
    i128 v = eval_form(f, r, 1);
    return v % pp != 0;
}

bool form_maximal(const BinaryCubicForm& f) {
    i128 D = f.disc();
    u64 ad = static_cast<u64>(D < 0 ? -D : D);
    for (auto& [p, e] : factor_u64(ad))
        if (e >= 2 && !form_p_maximal(f, static_cast<i64>(p))) return false;
    return true;
}

bool is_reduced_form(const BinaryCubicForm& f) {
    i128 D = f.disc();
    if (D > 0) return f.a > 0 && hessian_reduced(f) && min_small_image(f) == f;
    if (D < 0) return neg_reduced(f) && (f.b > 0 || (f.b == 0 && f.d > 0));
    return false;
}

BinaryCubicForm reduce_form(const BinaryCubicForm& f0) {
    BinaryCubicForm f = positive_lead(f0);
    i128 D = f.disc();
    if (D == 0) fail(Errc::Degenerate, "form has zero discriminant");
    if (D > 0) {
        for (int guard = 0; guard < 10000; ++guard) {
            i128 P = static_cast<i128>(f.b) * f.b - 3 * static_cast<i128>(f.a) * f.c;
            i128 Q = static_cast<i128>(f.b) * f.c - 9 * static_cast<i128>(f.a) * f.d;
            i128 R = static_cast<i128>(f.c) * f.c - 3 * static_cast<i128>(f.b) * f.d;
            if (Q > P || Q < -P) {
                // x -> x + k y shifts Q by 2kP.
                i64 k = static_cast<i64>(floordiv(static_cast<i64>(P - Q), static_cast<i64>(2 * P)));
                f = substitute(f, 1, k, 0, 1);
                continue;
            }
            if (P > R) {
                f = substitute(f, 0, -1, 1, 0);
                continue;
            }
            if (Q < 0) f = substitute(f, 1, 0, 0, -1);
            f = positive_lead(f);
            if (f.a == 0) fail(Errc::Reducible, "form is reducible");
            return min_small_image(f);
        }
        fail(Errc::Internal, "cubic reduction did not terminate");
    }
    for (int guard = 0; guard < 10000; ++guard) {
        f = positive_lead(f);
        if (f.a == 0) fail(Errc::Reducible, "form is reducible");
        if (neg_reduced(f)) {
            if (f.b < 0 || (f.b == 0 && f.d < 0)) f = substitute(f, 1, 0, 0, -1);
            return f;
        }
        long double A = f.a;
        auto roots = real_roots_monic(static_cast<long double>(f.b) / A, f.c / A, f.d / A);
        long double th = roots[0];
        long double Bq = f.b + A * th, Cq = f.c + f.b * th + A * th * th;
        if (std::fabs(Bq) >= A) {
            i64 k = static_cast<i64>(std::llround(-Bq / (2 * A)));
            if (k == 0) k = Bq > 0 ? -1 : 1;
            f = substitute(f, 1, k, 0, 1);
        } else if (A >= Cq) {
            f = substitute(f, 0, -1, 1, 0);
        } else {
            // Floating point says reduced but the exact test disagrees; nudge by one step.
            f = substitute(f, 1, Bq > 0 ? -1 : 1, 0, 1);
        }
    }
    fail(Errc::Internal, "cubic reduction did not terminate");
}

std::vector<i64> monic_cubic(const BinaryCubicForm& f) { return {f.a * f.a * f.d, f.a * f.c, f.b, 1}; }

i64 cubic_a_limit(i64 X, int sign) {
    // sign > 0: 729 a^4 <= 16 X ; sign < 0: 27 a^4 <= 16 X.
    long double num = sign > 0 ? 16.0L * X / 729 : 16.0L * X / 27;
    i64 a = static_cast<i64>(std::pow(num, 0.25L)) + 2;
    auto ok = [&](i64 t) {
        i128 t4 = static_cast<i128>(t) * t * t * t;
        return sign > 0 ? 729 * t4 <= static_cast<i128>(16) * X : 27 * t4 <= static_cast<i128>(16) * X;
    };
    while (a > 0 && !ok(a)) --a;
    return a;
}

namespace {

void emit_if_field(const BinaryCubicForm& f, i128 D, std::vector<CubicField>& out) {
    if (!form_irreducible(f)) return;
    if (!form_maximal(f)) return;
    out.push_back({static_cast<i64>(D), f});
}

void enum_positive(i64 X, i64 a, std::vector<CubicField>& out) {
    i64 sq = static_cast<i64>(isqrt_u64(static_cast<u64>(X)));
    i64 bmax = static_cast<i64>(2.0L / std::sqrt(3.0L) * std::pow(static_cast<long double>(X), 0.25L)) + 2;
    for (i64 b = -bmax; b <= bmax; ++b) {
        i64 cmin = ceildiv(b * b - sq, 3 * a), cmax = floordiv(b * b - 1, 3 * a);
        for (i64 c = cmin; c <= cmax; ++c) {
            i64 P = b * b - 3 * a * c;
            i64 dmin = ceildiv(b * c - P, 9 * a), dmax = floordiv(b * c, 9 * a);
            for (i64 d = dmin; d <= dmax; ++d) {
                BinaryCubicForm f{a, b, c, d};
                i128 Q = static_cast<i128>(b) * c - 9 * static_cast<i128>(a) * d;
                i128 R = static_cast<i128>(c) * c - 3 * static_cast<i128>(b) * d;
                if (Q < 0 || Q > P || P > R) continue;
                i128 D = (4 * static_cast<i128>(P) * R - Q * Q) / 3;
                if (D <= 0 || D > X) continue;
                if (is_square_mpz(mpz_class(static_cast<unsigned long>(D)))) continue;
                if (on_hessian_boundary(f) && !(min_small_image(f) == f)) continue;
                emit_if_field(f, D, out);
            }
        }
    }
}

void enum_negative(i64 X, i64 a, std::vector<CubicField>& out) {
    long double th = 0.5L + std::pow(X / 3.0L, 0.25L) / std::sqrt(static_cast<long double>(a));
    i64 bmax = static_cast<i64>(a * (1 + th)) + 1;
    long double Cmax = std::cbrt(16.0L * a * X / 27);
    i64 cmax = static_cast<i64>(Cmax + a * th) + 2;
    for (i64 b = 0; b <= bmax; ++b)
        for (i64 c = -cmax; c <= cmax; ++c) {
            // Linear reducedness constraints on d (strict).
            i128 lo_num = -static_cast<i128>(a - b) * (a - b + c);  // d > lo_num / a
            i128 hi_num = static_cast<i128>(a + b) * (a + b + c);   // d < hi_num / a
            i64 dlo = static_cast<i64>(lo_num / a);
            i64 dhi = static_cast<i64>(hi_num / a);
            while (static_cast<i128>(dlo) * a <= lo_num) ++dlo;
            while (static_cast<i128>(dhi) * a >= hi_num) --dhi;
            if (dlo > dhi) continue;
            // D(d) >= -X: 27 a^2 d^2 - beta d - (gamma + X) <= 0.
            long double beta = 18.0L * a * b * c - 4.0L * b * b * b;
            long double gamma = static_cast<long double>(b) * b * c * c - 4.0L * a * c * c * c;
            long double qa = 27.0L * a * a;
            long double delta = beta * beta + 4 * qa * (gamma + X);
            if (delta < 0) continue;
            long double sd = std::sqrt(delta);
            i64 r1 = static_cast<i64>(std::floor((beta - sd) / (2 * qa))) - 1;
            i64 r2 = static_cast<i64>(std::ceil((beta + sd) / (2 * qa))) + 1;
            dlo = std::max(dlo, r1);
            dhi = std::min(dhi, r2);
            // Skip the stretch where D(d) >= 0, between the real roots of D(d) = 0.
            i64 gap_lo = dhi + 1, gap_hi = dhi;
            long double delta0 = beta * beta + 4 * qa * gamma;
            if (delta0 > 0) {
                long double s0 = std::sqrt(delta0);
                gap_lo = static_cast<i64>(std::floor((beta - s0) / (2 * qa))) + 2;
                gap_hi = static_cast<i64>(std::ceil((beta + s0) / (2 * qa))) - 2;
            }
            for (i64 d = dlo; d <= dhi; ++d) {
                if (d >= gap_lo && d <= gap_hi) {
                    d = gap_hi;
                    continue;
                }
                if (b == 0 && d <= 0) continue;
                BinaryCubicForm f{a, b, c, d};
                i128 D = f.disc();
                if (D >= 0 || D < -X) continue;
                if (d * (d - b) + a * (c - a) <= 0) continue;
                emit_if_field(f, D, out);
            }
        }
}

}  // namespace

std::vector<CubicField> enum_cubic_s3_slice(i64 X, int sign, int slices, int slice) {
    std::vector<CubicField> out;
    if (X < 1) return out;
    i64 amax = cubic_a_limit(X, sign);
    for (i64 a = 1 + slice; a <= amax; a += slices) {
        if (sign > 0)
            enum_positive(X, a, out);
        else
            enum_negative(X, a, out);
    }
    std::sort(out.begin(), out.end(), [](const CubicField& x, const CubicField& y) {
        i64 ax = x.disc < 0 ? -x.disc : x.disc, ay = y.disc < 0 ? -y.disc : y.disc;
        if (ax != ay) return ax < ay;
        return x.form < y.form;
    });
    return out;
}

std::vector<CubicField> merge_cubic_slices(std::vector<std::vector<CubicField>> parts) {
    std::vector<CubicField> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), [](const CubicField& x, const CubicField& y) {
        i64 ax = x.disc < 0 ? -x.disc : x.disc, ay = y.disc < 0 ? -y.disc : y.disc;
        if (ax != ay) return ax < ay;
        return x.form < y.form;
    });
    return out;
}

}  // namespace tori
