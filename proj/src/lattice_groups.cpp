#include "lattice_groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "error.hpp"

namespace tori {

IntMatrix IntMatrix::identity() {
    IntMatrix m;
    m.e = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    IntMatrix m;
    int i = 0;
    for (auto& r : rows)
        for (auto v : r) m.e[i++] = v;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            __int128 s = 0;
            for (int k = 0; k < 3; ++k) s += static_cast<__int128>(e[3 * i + k]) * o.e[3 * k + j];
            if (s > INT64_MAX || s < INT64_MIN) fail(Errc::NotFinite, "matrix entries overflow during closure");
            r.e[3 * i + j] = static_cast<std::int64_t>(s);
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    IntMatrix r;
    for (int i = 0; i < 9; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

std::int64_t IntMatrix::det() const {
    const auto& a = e;
    __int128 d = static_cast<__int128>(a[0]) * (static_cast<__int128>(a[4]) * a[8] - static_cast<__int128>(a[5]) * a[7]) -
                 static_cast<__int128>(a[1]) * (static_cast<__int128>(a[3]) * a[8] - static_cast<__int128>(a[5]) * a[6]) +
                 static_cast<__int128>(a[2]) * (static_cast<__int128>(a[3]) * a[7] - static_cast<__int128>(a[4]) * a[6]);
    if (d > INT64_MAX || d < INT64_MIN) return 0;
    return static_cast<std::int64_t>(d);
}

std::int64_t IntMatrix::max_abs() const {
    std::int64_t m = 0;
    for (auto v : e) m = std::max(m, v < 0 ? -v : v);
    return m;
}

IntMatrix IntMatrix::inverse() const {
    const auto& a = e;
    IntMatrix adj;
    adj.e = {a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
             a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
             a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]};
    std::int64_t d = det();
    if (d != 1 && d != -1) fail(Errc::NonUnimodular, "inverse of non-unimodular matrix");
    for (auto& v : adj.e) v *= d;
    return adj;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < 3; ++i) {
        os << (i ? ";" : "");
        for (int j = 0; j < 3; ++j) os << (j ? "," : "") << e[3 * i + j];
    }
    os << ']';
    return os.str();
}

int rank_q(const std::vector<std::vector<std::int64_t>>& m0) {
    auto m = m0;
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    std::int64_t prev = 1;
    // Bareiss elimination keeps entries integral and small for these sizes.
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

namespace {

std::int64_t det_small(const std::vector<std::vector<std::int64_t>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    std::int64_t d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<std::int64_t>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        std::int64_t s = det_small(sub);
        d += ((j % 2) ? -1 : 1) * m[0][j] * s;
    }
    return d;
}

void combos(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combos(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::int64_t> smith_invariants(const std::vector<std::vector<std::int64_t>>& m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<int>> rs, cs;
        std::vector<int> cur;
        combos(rows, k, 0, cur, rs);
        combos(cols, k, 0, cur, cs);
        std::int64_t g = 0;
        for (auto& r : rs)
            for (auto& c : cs) {
                std::vector<std::vector<std::int64_t>> sub(k, std::vector<std::int64_t>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                g = std::gcd(g, det_small(sub));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

int MatrixGroup::index_of(const IntMatrix& m) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), m);
    if (it == elements_.end() || !(*it == m)) return -1;
    return static_cast<int>(it - elements_.begin());
}

int MatrixGroup::element_order(const IntMatrix& m) const {
    IntMatrix x = m;
    int k = 1;
    const IntMatrix id = IntMatrix::identity();
    while (!(x == id)) {
        x = x * m;
        if (++k > static_cast<int>(kMaxFiniteOrder)) fail(Errc::NotFinite, "element of infinite order");
    }
    return k;
}

int MatrixGroup::exponent() const {
    int e = 1;
    for (auto& h : elements_) e = std::lcm(e, element_order(h));
    return e;
}

bool MatrixGroup::abelian() const {
    for (auto& a : elements_)
        for (auto& b : elements_)
            if (!(a * b == b * a)) return false;
    return true;
}

std::size_t MatrixGroup::center_size() const {
    std::size_t n = 0;
    for (auto& a : elements_) {
        bool central = true;
        for (auto& b : elements_)
            if (!(a * b == b * a)) {
                central = false;
                break;
            }
        n += central;
    }
    return n;
}

MatrixGroup generate_group(const std::vector<IntMatrix>& gens) {
    for (auto& g : gens) {
        auto d = g.det();
        if (d != 1 && d != -1) fail(Errc::NonUnimodular, "generator " + g.str() + " has determinant " + std::to_string(d));
    }
    MatrixGroup G;
    G.gens_ = gens;
    std::set<IntMatrix> seen{IntMatrix::identity()};
    std::vector<IntMatrix> frontier{IntMatrix::identity()};
    while (!frontier.empty()) {
        std::vector<IntMatrix> next;
        for (auto& a : frontier)
            for (auto& g : gens) {
                IntMatrix c = a * g;
                if (seen.insert(c).second) {
                    next.push_back(c);
                    if (seen.size() > kMaxFiniteOrder)
                        fail(Errc::NotFinite, "closure exceeds " + std::to_string(kMaxFiniteOrder) + " elements");
                }
            }
        frontier = std::move(next);
    }
    // Right multiplication by generators reaches every product; in a finite
    // group inverses are positive powers, so the set is already a group.
    G.elements_.assign(seen.begin(), seen.end());
    return G;
}

std::vector<ConjugacyClass> conjugacy_classes(const MatrixGroup& G) {
    const auto& el = G.elements();
    std::vector<IntMatrix> inv(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) inv[i] = el[i].inverse();
    std::vector<bool> done(el.size(), false);
    std::vector<ConjugacyClass> out;
    const IntMatrix id = IntMatrix::identity();
    for (std::size_t i = 0; i < el.size(); ++i) {
        if (done[i]) continue;
        std::set<IntMatrix> cls;
        for (std::size_t j = 0; j < el.size(); ++j) cls.insert(el[j] * el[i] * inv[j]);
        ConjugacyClass c;
        c.representative = el[i];
        c.members.assign(cls.begin(), cls.end());
        for (auto& m : c.members) done[G.index_of(m)] = true;
        IntMatrix d = el[i] - id;
        c.rank_defect = rank_q({{d.e[0], d.e[1], d.e[2]}, {d.e[3], d.e[4], d.e[5]}, {d.e[6], d.e[7], d.e[8]}});
        c.element_order = G.element_order(el[i]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::vector<int>> power_map_orbits(const MatrixGroup& G, const std::vector<ConjugacyClass>& classes,
                                               bool reverse_residues) {
    std::map<IntMatrix, int> class_of;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (auto& m : classes[i].members) class_of[m] = static_cast<int>(i);
    int e = G.exponent();
    std::vector<int> ks;
    for (int k = 1; k < std::max(e, 2); ++k)
        if (std::gcd(k, e) == 1) ks.push_back(k);
    if (reverse_residues) std::reverse(ks.begin(), ks.end());

    std::vector<int> parent(classes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const IntMatrix& h = classes[i].representative;
        for (int k : ks) {
            IntMatrix p = IntMatrix::identity();
            for (int t = 0; t < k; ++t) p = p * h;
            int a = find(static_cast<int>(i)), b = find(class_of.at(p));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < classes.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    return out;
}

int a_invariant(const MatrixGroup& G) {
    if (G.order() < 2) fail(Errc::TrivialGroup, "a(H) is undefined for the trivial group");
    int a = 4;
    for (auto& c : conjugacy_classes(G))
        if (c.element_order > 1) a = std::min(a, c.rank_defect);
    return a;
}

int b_invariant(const MatrixGroup& G) {
    if (G.order() < 2) fail(Errc::TrivialGroup, "b(H) is undefined for the trivial group");
    auto classes = conjugacy_classes(G);
    int a = 4;
    for (auto& c : classes)
        if (c.element_order > 1) a = std::min(a, c.rank_defect);
    int b = 0;
    for (auto& orbit : power_map_orbits(G, classes))
        if (classes[orbit[0]].element_order > 1 && classes[orbit[0]].rank_defect == a) ++b;
    return b;
}

namespace {

struct IsoKey {
    std::size_t order;
    bool abelian;
    std::size_t center;
    std::vector<std::pair<int, int>> order_counts;
    auto tie() const { return std::tie(order, abelian, center, order_counts); }
    bool operator<(const IsoKey& o) const { return tie() < o.tie(); }
};

const std::map<IsoKey, std::string>& iso_table() {
    static const std::map<IsoKey, std::string> t = {
        {{1, true, 1, {{1, 1}}}, "1"},
        {{2, true, 2, {{1, 1}, {2, 1}}}, "C2"},
        {{3, true, 3, {{1, 1}, {3, 2}}}, "C3"},
        {{4, true, 4, {{1, 1}, {2, 1}, {4, 2}}}, "C4"},
        {{4, true, 4, {{1, 1}, {2, 3}}}, "C2xC2"},
        {{6, true, 6, {{1, 1}, {2, 1}, {3, 2}, {6, 2}}}, "C6"},
        {{6, false, 1, {{1, 1}, {2, 3}, {3, 2}}}, "S3"},
        {{8, true, 8, {{1, 1}, {2, 3}, {4, 4}}}, "C4xC2"},
        {{8, true, 8, {{1, 1}, {2, 7}}}, "C2^3"},
        {{8, false, 2, {{1, 1}, {2, 5}, {4, 2}}}, "D4"},
        {{12, true, 12, {{1, 1}, {2, 3}, {3, 2}, {6, 6}}}, "C6xC2"},
        {{12, false, 2, {{1, 1}, {2, 7}, {3, 2}, {6, 2}}}, "D6"},
        {{12, false, 1, {{1, 1}, {2, 3}, {3, 8}}}, "A4"},
        {{16, false, 4, {{1, 1}, {2, 11}, {4, 4}}}, "D4xC2"},
        {{24, false, 2, {{1, 1}, {2, 7}, {3, 8}, {6, 8}}}, "A4xC2"},
        {{24, false, 4, {{1, 1}, {2, 15}, {3, 2}, {6, 6}}}, "D6xC2"},
        {{24, false, 1, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}}, "S4"},
        {{48, false, 2, {{1, 1}, {2, 19}, {3, 8}, {4, 12}, {6, 8}}}, "S4xC2"},
    };
    return t;
}

}  // namespace

std::string iso_type(const MatrixGroup& G) {
    if (G.order() > kMaxFiniteOrder) fail(Errc::Unrecognized, "order exceeds 48");
    std::map<int, int> oc;
    for (auto& h : G.elements()) ++oc[G.element_order(h)];
    IsoKey key{G.order(), G.abelian(), G.center_size(), {oc.begin(), oc.end()}};
    auto it = iso_table().find(key);
    if (it == iso_table().end()) fail(Errc::Unrecognized, "no known abstract type of order " + std::to_string(G.order()));
    return it->second;
}

bool GroupFingerprint::operator==(const GroupFingerprint& o) const {
    return std::tie(order, iso, a, b, trace_det, fixed_dim, coinvariant_torsion, element_snf, pair_snf) ==
           std::tie(o.order, o.iso, o.a, o.b, o.trace_det, o.fixed_dim, o.coinvariant_torsion, o.element_snf,
                    o.pair_snf);
}

bool GroupFingerprint::operator<(const GroupFingerprint& o) const {
    return std::tie(order, iso, a, b, trace_det, fixed_dim, coinvariant_torsion, element_snf, pair_snf) <
           std::tie(o.order, o.iso, o.a, o.b, o.trace_det, o.fixed_dim, o.coinvariant_torsion, o.element_snf,
                    o.pair_snf);
}

GroupFingerprint fingerprint(const MatrixGroup& G) {
    GroupFingerprint f;
    f.order = G.order();
    f.iso = iso_type(G);
    if (G.order() > 1) {
        f.a = a_invariant(G);
        f.b = b_invariant(G);
    }
    const IntMatrix id = IntMatrix::identity();
    auto rows_of = [](const IntMatrix& d) {
        return std::vector<std::vector<std::int64_t>>{
            {d.e[0], d.e[1], d.e[2]}, {d.e[3], d.e[4], d.e[5]}, {d.e[6], d.e[7], d.e[8]}};
    };
    for (auto& h : G.elements()) {
        f.trace_det.emplace_back(h.trace(), h.det());
        f.element_snf.push_back(smith_invariants(rows_of(h - id)));
    }
    {
        // Fixed vectors are the common kernel of all h - I; grow a row basis greedily.
        std::vector<std::vector<std::int64_t>> basis;
        for (auto& h : G.elements()) {
            IntMatrix d = h - id;
            for (int r = 0; r < 3 && basis.size() < 3; ++r) {
                auto trial = basis;
                trial.push_back({d(r, 0), d(r, 1), d(r, 2)});
                if (rank_q(trial) > static_cast<int>(basis.size())) basis = std::move(trial);
            }
        }
        f.fixed_dim = 3 - static_cast<int>(basis.size());
    }
    {
        // Coinvariants Z^3 / span{(g - I)x}: torsion from the elementary divisors of the generators' columns.
        std::vector<std::vector<std::int64_t>> m(3);
        for (auto& g : G.generators().empty() ? std::vector<IntMatrix>{id} : G.generators()) {
            IntMatrix d = g - id;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m[r].push_back(d(r, c));
        }
        for (auto v : smith_invariants(m))
            if (v != 1) f.coinvariant_torsion.push_back(v);
    }
    for (auto& h1 : G.elements())
        for (auto& h2 : G.elements()) {
            IntMatrix d1 = h1 - id, d2 = h2 - id;
            std::vector<std::vector<std::int64_t>> m(3);
            for (int r = 0; r < 3; ++r) m[r] = {d1(r, 0), d1(r, 1), d1(r, 2), d2(r, 0), d2(r, 1), d2(r, 2)};
            f.pair_snf.push_back(smith_invariants(m));
        }
    std::sort(f.trace_det.begin(), f.trace_det.end());
    std::sort(f.element_snf.begin(), f.element_snf.end());
    std::sort(f.pair_snf.begin(), f.pair_snf.end());
    return f;
}

std::string label_to_cli(const std::string& label) {
    // H_{12,b} -> H_12_b
    std::string out;
    for (char c : label) {
        if (c == '{' || c == '}') continue;
        out.push_back(c == ',' ? '_' : c);
    }
    return out;
}

std::string label_from_cli(const std::string& s) {
    if (s.find('{') != std::string::npos) return s;
    auto first = s.find('_');
    auto last = s.rfind('_');
    if (first == std::string::npos || first == last) fail(Errc::Usage, "bad family label '" + s + "'");
    return s.substr(0, first) + "_{" + s.substr(first + 1, last - first - 1) + "," + s.substr(last + 1) + "}";
}

const CatalogEntry& catalog_entry(const std::string& label) {
    std::string l = label_from_cli(label);
    for (auto& e : catalog())
        if (e.label == l) return e;
    fail(Errc::Unrecognized, "unknown catalog label '" + label + "'");
}

}  // namespace tori
