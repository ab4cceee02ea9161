#include "order.hpp"

#include "error.hpp"

namespace tori {

namespace {

using Vec = std::vector<mpz_class>;
using Mat = std::vector<Vec>;
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

mpz_class fmod(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

// Vectors x with x * A = 0 mod p (A is r x c).
Mat left_kernel_mod_p(const Mat& A, const mpz_class& p) {
    std::size_t r = A.size(), c = r ? A[0].size() : 0;
    Mat M(r, Vec(c + r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) M[i][j] = fmod(A[i][j], p);
        M[i][c + i] = 1;
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && M[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(M[piv], M[row]);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), M[row][col].get_mpz_t(), p.get_mpz_t());
        for (auto& v : M[row]) v = fmod(v * inv, p);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || M[i][col] == 0) continue;
            mpz_class f = M[i][col];
            for (std::size_t j = 0; j < c + r; ++j) M[i][j] = fmod(M[i][j] - f * M[row][j], p);
        }
        ++row;
    }
    Mat out;
    for (std::size_t i = row; i < r; ++i) out.emplace_back(M[i].begin() + c, M[i].end());
    return out;
}

// Hermite normal form (upper triangular, positive pivots) of a full-rank lattice.
Mat hnf(Mat rows, std::size_t n) {
    Mat out;
    std::size_t top = 0;
    for (std::size_t col = 0; col < n; ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            if (best == rows.size()) fail(Errc::Internal, "lattice is not of full rank");
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
                for (std::size_t j = col; j < n; ++j) rows[i][j] -= q * rows[top][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[top][col] < 0)
            for (auto& v : rows[top]) v = -v;
        for (std::size_t i = 0; i < top; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= q * rows[top][j];
        }
        ++top;
    }
    rows.resize(n);
    return rows;
}

QMat inverse_q(const QMat& A) {
    std::size_t n = A.size();
    QMat M(n, QVec(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) fail(Errc::Internal, "singular basis matrix");
        std::swap(M[piv], M[col]);
        mpq_class inv = 1 / M[col][col];
        for (auto& v : M[col]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == 0) continue;
            mpq_class f = M[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) M[i][j] -= f * M[col][j];
        }
    }
    QMat out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(M[i].begin() + n, M[i].end());
    return out;
}

QVec row_times(const QVec& v, const QMat& M) {
    QVec r(M[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * M[i][j];
    return r;
}

// An order given by a rational basis in power-basis coordinates, with its
// integral multiplication table.
struct Order {
    const ZX* f;
    int n;
    QMat basis, inv;
    std::vector<std::vector<Vec>> table;  // table[i][j] = coords of w_i * w_j

    QVec power_mul(const QVec& a, const QVec& b) const {
        QVec prod(2 * n - 1, 0);
        for (int i = 0; i < n; ++i)
            if (a[i] != 0)
                for (int j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
        for (int k = 2 * n - 2; k >= n; --k) {
            if (prod[k] == 0) continue;
            mpq_class c = prod[k];
            for (int j = 0; j <= n; ++j) prod[k - n + j] -= c * mpq_class((*f)[j]);
        }
        prod.resize(n);
        return prod;
    }

    void rebuild() {
        inv = inverse_q(basis);
        table.assign(n, std::vector<Vec>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                QVec c = row_times(power_mul(basis[i], basis[j]), inv);
                Vec v(n);
                for (int k = 0; k < n; ++k) {
                    if (c[k].get_den() != 1) fail(Errc::Internal, "order is not closed under multiplication");
                    v[k] = c[k].get_num();
                }
                table[i][j] = v;
                table[j][i] = v;
            }
    }

    Vec mul(const Vec& a, const Vec& b, const mpz_class* mod) const {
        Vec r(n, 0);
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                mpz_class ab = a[i] * b[j];
                for (int k = 0; k < n; ++k) r[k] += ab * table[i][j][k];
            }
        }
        if (mod)
            for (auto& v : r) v = fmod(v, *mod);
        return r;
    }

    Vec pow_mod(Vec x, mpz_class e, const mpz_class& p) const {
        Vec r(n, 0);
        // The unit element in order coordinates.
        QVec one(n, 0);
        one[0] = 1;
        QVec oc = row_times(one, inv);
        for (int k = 0; k < n; ++k) r[k] = fmod(oc[k].get_num(), p);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x, &p);
            e >>= 1;
            if (e > 0) x = mul(x, x, &p);
        }
        return r;
    }
};

// One enlargement step at p. Returns log_p of the index gain (0 if p-maximal).
int enlarge(Order& O, const mpz_class& p) {
    int n = O.n;
    mpz_class q = p;
    while (q < n) q *= p;
    Mat frob(n);
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        frob[i] = O.pow_mod(e, q, p);
    }
    Mat rad_gens = left_kernel_mod_p(frob, p);
    if (rad_gens.empty()) return 0;
    Mat gens;
    for (int i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = p;
        gens.push_back(v);
    }
    for (auto& g : rad_gens) gens.push_back(g);
    Mat I = hnf(gens, n);
    QMat Iq(n, QVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Iq[i][j] = I[i][j];
    QMat Iinv = inverse_q(Iq);

    // Multipliers of the radical: y with y * I contained in p * I.
    Mat A(n, Vec(static_cast<std::size_t>(n) * n));
    for (int k = 0; k < n; ++k) {
        Vec e(n, 0);
        e[k] = 1;
        for (int j = 0; j < n; ++j) {
            Vec prod = O.mul(e, I[j], nullptr);
            QVec pq(n);
            for (int t = 0; t < n; ++t) pq[t] = prod[t];
            QVec c = row_times(pq, Iinv);
            for (int t = 0; t < n; ++t) {
                if (c[t].get_den() != 1) fail(Errc::Internal, "radical is not an ideal");
                A[k][j * n + t] = c[t].get_num();
            }
        }
    }
    Mat mult = left_kernel_mod_p(A, p);
    Mat lat;
    for (int i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = p;
        lat.push_back(v);
    }
    for (auto& z : mult) lat.push_back(z);
    Mat L = hnf(lat, n);
    int gain = n;
    for (int i = 0; i < n; ++i) {
        mpz_class d = L[i][i];
        while (d % p == 0 && d != 0) {
            d /= p;
            --gain;
        }
    }
    if (gain == 0) return 0;
    QMat nb(n, QVec(n, 0));
    for (int i = 0; i < n; ++i) {
        QVec row(n, 0);
        for (int j = 0; j < n; ++j) row[j] = mpq_class(L[i][j], p);
        nb[i] = row_times(row, O.basis);
        for (auto& v : nb[i]) v.canonicalize();
    }
    O.basis = nb;
    O.rebuild();
    return gain;
}

}  // namespace

bool dedekind_p_maximal(const ZX& f, const mpz_class& p) {
    auto fac = factor_mod_p(f, p);
    ZX g{1}, h{1};
    for (auto& [gi, e] : fac) {
        g = mod_mul(g, gi, p);
        for (int k = 1; k < e; ++k) h = mod_mul(h, gi, p);
    }
    ZX gh = zx_mul(g, h);
    ZX diff = zx_sub(f, gh);
    for (auto& c : diff) {
        if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) fail(Errc::Internal, "mod p factorization mismatch");
        c /= p;
    }
    ZX F = mod_reduce(diff, p);
    if (F.empty()) return degree(fp_gcd(g, h, p)) == 0;
    ZX d = fp_gcd(fp_gcd(F, g, p), h, p);
    return degree(d) == 0;
}

int p_index_exponent(const ZX& f, const mpz_class& p) {
    if (dedekind_p_maximal(f, p)) return 0;
    Order O;
    O.f = &f;
    O.n = degree(f);
    O.basis.assign(O.n, QVec(O.n, 0));
    for (int i = 0; i < O.n; ++i) O.basis[i][i] = 1;
    O.rebuild();
    int total = 0;
    for (;;) {
        int g = enlarge(O, p);
        if (g == 0) break;
        total += g;
    }
    return total;
}

FactoredInt maximal_order_disc(const ZX& f, const mpz_class& height_bound) {
    int n = degree(f);
    if (n < 1) fail(Errc::Reducible, "constant polynomial");
    if (n > kMaxOrderDegree) fail(Errc::HeightExceeded, "degree " + std::to_string(n) + " exceeds 8");
    if (f.back() != 1) fail(Errc::Internal, "polynomial must be monic");
    for (auto& c : f)
        if (abs(c) > height_bound) fail(Errc::HeightExceeded, "coefficient " + c.get_str() + " exceeds the height bound");
    if (!zx_irreducible(f)) fail(Errc::Reducible, "polynomial is reducible over Q");
    mpz_class disc = zx_disc(f);
    FactoredInt out(disc);
    for (auto& [p, e] : factor_mpz(abs(disc))) {
        if (e < 2) continue;
        int k = p_index_exponent(f, p);
        if (k) out = out / FactoredInt(p).pow(2 * k);
    }
    return out;
}

}  // namespace tori
