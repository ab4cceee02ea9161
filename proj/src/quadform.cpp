#include "quadform.hpp"

#include <cmath>
#include <set>

#include "arith.hpp"
#include "error.hpp"

namespace tori {

namespace {

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 posmod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// u*a + v*b = g = gcd(a, b) >= 0.
i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
    i64 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = floordiv(r0, r1);
        i64 t;
        t = r0 - q * r1; r0 = r1; r1 = t;
        t = s0 - q * s1; s0 = s1; s1 = t;
        t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

i64 c_from(i64 a, i64 b, i64 D) {
    i128 num = static_cast<i128>(b) * b - D;
    i128 den = static_cast<i128>(4) * a;
    if (num % den != 0) fail(Errc::Internal, "form coefficients are not integral");
    return static_cast<i64>(num / den);
}

QuadForm reduce_definite(QuadForm f) {
    i64 D = f.disc();
    for (;;) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            i64 r = floordiv(f.a - f.b, 2 * f.a);
            f.b += 2 * f.a * r;
            f.c = c_from(f.a, f.b, D);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

}  // namespace

QuadForm principal_form(i64 d) {
    QuadForm f;
    f.a = 1;
    f.b = posmod(d, 2);
    f.c = (f.b * f.b - d) / 4;
    return f;
}

bool is_reduced(const QuadForm& f) {
    i64 D = f.disc();
    if (D < 0) {
        if (f.a <= 0) return false;
        if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
        return !(f.a == f.c && f.b < 0);
    }
    // |sqrt(D) - 2|a|| < b < sqrt(D)
    i128 b = f.b, A = f.a < 0 ? -f.a : f.a;
    if (b <= 0 || b * b >= D) return false;
    if ((b + 2 * A) * (b + 2 * A) <= D) return false;
    i128 t = 2 * A - b;
    return t <= 0 || t * t < D;
}

QuadForm rho(const QuadForm& f) {
    i64 D = f.disc();
    i64 c = f.c, ac = c < 0 ? -c : c;
    i64 s = static_cast<i64>(isqrt_u64(static_cast<u64>(D)));
    i64 nb;
    if (static_cast<i128>(ac) * ac > D) {
        nb = posmod(-f.b, 2 * ac);
        if (nb > ac) nb -= 2 * ac;
    } else {
        nb = s - posmod(s + f.b, 2 * ac);
    }
    QuadForm g;
    g.a = c;
    g.b = nb;
    g.c = c_from(c, nb, D);
    return g;
}

QuadForm reduce(const QuadForm& f) {
    if (f.disc() < 0) return reduce_definite(f);
    QuadForm g = f;
    for (int guard = 0; !is_reduced(g); ++guard) {
        if (guard > 100000) fail(Errc::Internal, "indefinite reduction did not terminate");
        g = rho(g);
    }
    return g;
}

QuadForm inverse(const QuadForm& f) { return QuadForm{f.a, -f.b, f.c}; }

QuadForm compose(const QuadForm& f1_, const QuadForm& f2_) {
    QuadForm f1 = f1_, f2 = f2_;
    i64 D = f1.disc();
    if (f1.a <= 0 || f2.a <= 0) fail(Errc::Internal, "composition needs positive leading coefficients");
    if (f1.a > f2.a) std::swap(f1, f2);
    i64 s = (f1.b + f2.b) / 2;
    i64 n = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        d = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        d1 = xgcd(s, d, x2, y2);
        y2 = -y2;
    }
    i64 v1 = f1.a / d1, v2 = f2.a / d1;
    i128 rr = static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c;
    i64 r = static_cast<i64>(((rr % v1) + v1) % v1);
    QuadForm g;
    g.b = f2.b + 2 * v2 * r;
    g.a = v1 * v2;
    g.c = c_from(g.a, g.b, D);
    return reduce(g);
}

namespace {

std::vector<QuadForm> reduced_forms(i64 D) {
    std::vector<QuadForm> out;
    if (D < 0) {
        i64 amax = static_cast<i64>(isqrt_u64(static_cast<u64>(-D) / 3)) + 1;
        for (i64 a = 1; a <= amax; ++a)
            for (i64 b = -a + 1; b <= a; ++b) {
                if (posmod(b, 2) != posmod(D, 2)) continue;
                i128 num = static_cast<i128>(b) * b - D;
                if (num % (4 * a)) continue;
                i64 c = static_cast<i64>(num / (4 * a));
                QuadForm f{a, b, c};
                if (is_reduced(f)) out.push_back(f);
            }
        return out;
    }
    i64 s = static_cast<i64>(isqrt_u64(static_cast<u64>(D)));
    for (i64 b = 1; b <= s; ++b) {
        if (posmod(b, 2) != posmod(D, 2)) continue;
        i64 N = (D - b * b) / 4;  // -a*c
        for (i64 a = 1; a * a <= N; ++a) {
            if (N % a) continue;
            for (i64 aa : {a, N / a}) {
                for (int sg : {1, -1}) {
                    QuadForm f{sg * aa, b, -sg * (N / aa)};
                    if (is_reduced(f)) out.push_back(f);
                }
                if (a * a == N) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ClassStructure {
    std::vector<QuadForm> reps;       // positive leading coefficient, principal first
    std::map<QuadForm, int> cycle_of;  // reduced form -> class index
};

ClassStructure class_structure(i64 D) {
    ClassStructure cs;
    auto forms = reduced_forms(D);
    QuadForm principal = reduce(principal_form(D));
    if (D < 0) {
        cs.reps.push_back(principal);
        cs.cycle_of[principal] = 0;
        for (auto& f : forms)
            if (!(f == principal)) {
                cs.cycle_of[f] = static_cast<int>(cs.reps.size());
                cs.reps.push_back(f);
            }
        return cs;
    }
    auto add_cycle = [&](const QuadForm& start) {
        int id = static_cast<int>(cs.reps.size());
        QuadForm rep{0, 0, 0};
        QuadForm g = start;
        do {
            cs.cycle_of[g] = id;
            if (g.a > 0 && (rep.a == 0 || g < rep)) rep = g;
            g = rho(g);
        } while (!(g == start));
        cs.reps.push_back(rep);
    };
    add_cycle(principal);
    for (auto& f : forms)
        if (!cs.cycle_of.count(f)) add_cycle(f);
    return cs;
}

}  // namespace

std::vector<QuadForm> class_representatives(i64 d) { return class_structure(d).reps; }

ClassGroupData quad_class_group(i64 d, i64 bound) {
    if (!is_fundamental(d)) fail(Errc::InvalidDiscriminant, std::to_string(d) + " is not a fundamental discriminant");
    if ((d < 0 ? -d : d) > bound) fail(Errc::BoundExceeded, "|d| exceeds the class group bound");
    ClassStructure cs = class_structure(d);
    ClassGroupData out;
    out.d = d;
    out.h = static_cast<i64>(cs.reps.size());
    for (int p : {2, 3}) {
        i64 cnt = 0;
        for (auto& x : cs.reps) {
            QuadForm y = x;
            for (int k = 1; k < p; ++k) {
                QuadForm r = cs.reps[cs.cycle_of.at(y)];
                y = compose(r, x);
            }
            if (cs.cycle_of.at(y) == 0) ++cnt;
        }
        out.p_torsion[p] = cnt;
    }
    return out;
}

}  // namespace tori
