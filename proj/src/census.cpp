#include "census.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirichlet.hpp"
#include "disc_calculus.hpp"
#include "error.hpp"
#include "lattice_groups.hpp"

namespace tori {

namespace {

const std::vector<TorusFamilySpec>& family_specs() {
    static const std::vector<TorusFamilySpec> specs = [] {
        std::vector<TorusFamilySpec> s;
        auto add = [&](const std::string& suffixes, int order, const char* cons, const char* cond, const char* mult,
                       bool imp = false) {
            for (char c : suffixes)
                if (c != ' ')
                    s.push_back({"H_{" + std::to_string(order) + "," + std::string(1, c) + "}", cons, cond, mult, imp});
        };
        add("a c", 2, "L quadratic", "DL^2", "1 per field");
        add("b d", 2, "L quadratic", "DL", "1 per field");
        add("e", 2, "L quadratic", "DL^3", "1 per field");
        add("a b", 3, "L cyclic cubic", "DL", "1 per field");
        add("a c", 4, "L cyclic quartic with quadratic subfield L2", "D4/D2", "1 per field");
        add("b d", 4, "L cyclic quartic", "D4", "1 per field");
        add("e k", 4, "L1, L3 quadratic; L1 != L3", "D1*D3^2", "1 per ordered pair");
        add("f l n", 4, "L biquadratic", "DL", "1 per field");
        add("h", 4, "L biquadratic", "DL", "3 per field");
        add("g i m o", 4, "L2, L3 quadratic; L2 != L3", "D2*D3", "1 per unordered pair");
        add("j", 4, "L1, L2 quadratic; L1 != L2", "D1*D2", "1 per ordered pair");
        add("a", 6, "L2 quadratic, L3 cyclic cubic", "D6/(D2*D3)", "1 per pair");
        add("b", 6, "L2 quadratic, L3 cyclic cubic", "D2*D3", "1 per pair");
        add("c d", 6, "L2 quadratic, L3 cyclic cubic", "lcm(D2^3, D2*D3)", "1 per pair");
        add("e g i", 6, "L3 S3 cubic with quadratic resolvent L2", "D2*D3", "1 per cubic field");
        add("f h j", 6, "L3 S3 cubic", "D3", "1 per cubic field");
        add("a b", 8, "L2 quadratic, L4' cyclic quartic with quadratic subfield L2'; L2 != L2'", "D2*D4p/D2p",
            "1 per pair");
        add("c", 12, "L1 sextic 6T3 with cubic subfield L4 and quadratic subfield L6 (imported)", "D1/(D4*D6)",
            "1 per sextic", true);
        return s;
    }();
    return specs;
}

const TorusFamilySpec* find_spec(const std::string& label) {
    for (auto& s : family_specs())
        if (s.label == label) return &s;
    return nullptr;
}

char family_code(const std::string& label, int& order) {
    // "H_{12,c}" -> order 12, 'c'
    auto comma = label.find(',');
    order = std::stoi(label.substr(3, comma - 3));
    return label[comma + 1];
}

u64 Q(u64 y) { return count_fundamental(y); }

std::vector<i64> fundamentals_upto(u64 y) {
    std::vector<i64> out;
    for_each_quadratic(static_cast<i64>(y), [&](i64 d) { out.push_back(d); });
    return out;
}

u64 uabs(i64 v) { return static_cast<u64>(v < 0 ? -v : v); }

// Weighted values dropped into grid bins; cumulative() turns them into counts.
struct Bins {
    const std::vector<u64>& grid;
    std::vector<i64> w;
    explicit Bins(const std::vector<u64>& g) : grid(g), w(g.size(), 0) {}
    void add(u128 v, i64 weight = 1) {
        if (v > grid.back()) return;
        auto it = std::lower_bound(grid.begin(), grid.end(), static_cast<u64>(v));
        w[it - grid.begin()] += weight;
    }
    std::vector<i64> cumulative() const {
        std::vector<i64> c(w.size());
        i64 s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) c[i] = s += w[i];
        return c;
    }
};

// #{(d1, d2) : |d1 d2| <= X}, diagonal included.
u64 ordered_pairs(u64 X) {
    u64 s = isqrt_u64(X);
    u64 S = 0;
    for (i64 d : fundamentals_upto(s)) S += Q(X / uabs(d));
    u64 qs = Q(s);
    return 2 * S - qs * qs;
}

i64 squarefree_core(i64 d) { return d % 4 == 0 ? d / 4 : d; }

}  // namespace

const TorusFamilySpec& family_spec(const std::string& label) {
    auto* s = find_spec(label);
    if (!s) fail(Errc::Unimplemented, label + " has no in-house counting rule");
    return *s;
}

bool family_implemented(const std::string& label) { return find_spec(label) != nullptr; }

std::vector<std::string> implemented_families() {
    std::vector<std::string> out;
    for (auto& e : catalog())
        if (family_implemented(e.label)) out.push_back(e.label);
    return out;
}

struct Census::Cache {
    bool have_s3 = false;
    std::vector<std::pair<u64, u64>> s3;  // (|D3|, |D2|)
    std::vector<u64> sextic_conductors;   // imported H_{12,c} values, sorted
    bool have_import = false;
};

Census::Census(int workers, CensusBounds bounds) : cache_(std::make_unique<Cache>()), workers_(workers), bounds_(bounds) {}
Census::~Census() = default;

void Census::add_import(const std::vector<FieldRecord>& records) {
    for (auto& r : records) {
        auto* prov = std::get_if<ImportedProvenance>(&r.provenance);
        if (!prov || r.degree != 6 || prov->galois_label != "6T3") continue;
        if (prov->subfield_discs.size() != 2)
            fail(Errc::SchemaMismatch, prov->label + ": 6T3 rows need subfield_discs = cubic;quadratic");
        RoleBindings b{{"D1", FactoredInt(r.disc)},
                       {"D4", FactoredInt(prov->subfield_discs[0])},
                       {"D6", FactoredInt(prov->subfield_discs[1])}};
        FactoredInt c = conductor_eval("H_{12,c}", b);
        cache_->sextic_conductors.push_back(to_i64(c.value()));
        cache_->have_import = true;
    }
    std::sort(cache_->sextic_conductors.begin(), cache_->sextic_conductors.end());
}

u64 Census::max_x(const std::string& label) const {
    int order;
    char c = family_code(label, order);
    family_spec(label);
    if (order == 6 && std::string("efghij").find(c) != std::string::npos)
        return static_cast<u64>(bounds_.s3_cubic) * (std::string("egi").find(c) != std::string::npos ? 3 : 1);
    if (order == 4 && std::string("fhln").find(c) != std::string::npos) return static_cast<u64>(bounds_.pair_search);
    if (order == 6 && c == 'a') return static_cast<u64>(bounds_.pair_search);
    if (order == 12) {
        if (!cache_->have_import) fail(Errc::Unimplemented, label + " needs imported 6T3 sextic data");
        return cache_->sextic_conductors.back();
    }
    return u64{1} << 62;
}

std::vector<i64> c6_counts(const std::vector<u64>& grid) {
    Bins bins(grid);
    u64 Xmax = grid.back();
    auto conductors = cyclic_cubic_conductors(static_cast<i64>(isqrt_u64(Xmax / 3)));
    for (i64 d : fundamentals_upto(icbrt_u64(Xmax))) {
        u64 ad = uabs(d);
        for (auto& c : conductors) {
            u64 f = static_cast<u64>(c.f);
            if (static_cast<u128>(ad) * f * f > Xmax) break;
            u64 l = ad / gcd_u64(ad, f) * f;
            bins.add(static_cast<u128>(ad) * l * l, c.fields);
        }
    }
    return bins.cumulative();
}

std::vector<i64> Census::count_family_grid(const std::string& label, const std::vector<u64>& grid) {
    const TorusFamilySpec& spec = family_spec(label);
    (void)spec;
    if (grid.empty()) return {};
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) fail(Errc::Usage, "grid must be strictly increasing");
    if (grid.back() > max_x(label))
        fail(Errc::BoundExceeded, label + ": X = " + std::to_string(grid.back()) + " exceeds the covered range " +
                                      std::to_string(max_x(label)));
    int order;
    char c = family_code(label, order);
    u64 Xmax = grid.back();
    std::vector<i64> out;
    auto each = [&](auto fn) {
        for (u64 X : grid) out.push_back(static_cast<i64>(fn(X)));
        return out;
    };
    auto in = [&](const char* set) { return std::string(set).find(c) != std::string::npos; };

    if (order == 2) {
        if (in("ac")) return each([](u64 X) { return Q(isqrt_u64(X)); });
        if (in("bd")) return each([](u64 X) { return Q(X); });
        return each([](u64 X) { return Q(icbrt_u64(X)); });
    }
    if (order == 3) {
        Bins bins(grid);
        for (auto& cc : cyclic_cubic_conductors(static_cast<i64>(isqrt_u64(Xmax))))
            bins.add(static_cast<u128>(cc.f) * cc.f, cc.fields);
        return bins.cumulative();
    }
    if (order == 4 && in("abcd")) {
        Bins bins(grid);
        if (in("ac")) {
            for (auto& q : cyclic_quartic_fields_by_conductor(static_cast<i64>(isqrt_u64(Xmax))))
                bins.add(static_cast<u128>(q.conductor) * q.conductor);
        } else {
            for (auto& q : cyclic_quartic_fields(static_cast<i64>(Xmax))) bins.add(static_cast<u64>(q.disc));
        }
        return bins.cumulative();
    }
    if (order == 4 && in("ek")) {
        return each([](u64 X) {
            u64 s = 0;
            for (i64 d : fundamentals_upto(isqrt_u64(X))) s += Q(X / (uabs(d) * uabs(d)));
            return s - Q(icbrt_u64(X));
        });
    }
    if (order == 4 && in("j")) return each([](u64 X) { return ordered_pairs(X) - Q(isqrt_u64(X)); });
    if (order == 4 && in("gimo")) return each([](u64 X) { return (ordered_pairs(X) - Q(isqrt_u64(X))) / 2; });
    if (order == 4) {
        // biquadratic fields: D_L = d3^2 m^2 >= |d3|^2, so every |d_i| <= sqrt(X); each field is
        // met once through its two smallest quadratic subfields in (|d|, d) order
        Bins bins(grid);
        auto ds = fundamentals_upto(isqrt_u64(Xmax));
        auto before = [](i64 x, i64 y) { return uabs(x) != uabs(y) ? uabs(x) < uabs(y) : x < y; };
        for (std::size_t i = 0; i < ds.size(); ++i) {
            i64 c1 = squarefree_core(ds[i]);
            for (std::size_t j = i + 1; j < ds.size(); ++j) {
                if (static_cast<u128>(uabs(ds[i])) * uabs(ds[j]) * uabs(ds[j]) > Xmax) break;
                i64 c2 = squarefree_core(ds[j]);
                i64 g = static_cast<i64>(gcd_u64(uabs(c1), uabs(c2)));
                i64 s3 = (c1 / g) * (c2 / g);
                i64 d3 = ((s3 % 4) + 4) % 4 == 1 ? s3 : 4 * s3;
                if (!before(ds[j], d3)) continue;
                bins.add(static_cast<u128>(uabs(ds[i])) * uabs(ds[j]) * uabs(d3), c == 'h' ? 3 : 1);
            }
        }
        return bins.cumulative();
    }
    if (order == 6 && in("abcd")) {
        if (in("cd")) return c6_counts(grid);
        Bins bins(grid);
        if (c == 'b') {
            auto conductors = cyclic_cubic_conductors(static_cast<i64>(isqrt_u64(Xmax / 3)));
            for (u64 X : grid) {
                i64 s = 0;
                for (auto& cc : conductors) {
                    u64 f2 = static_cast<u64>(cc.f) * cc.f;
                    if (f2 * 3 > X) break;
                    s += cc.fields * static_cast<i64>(Q(X / f2));
                }
                out.push_back(s);
            }
            return out;
        }
        u64 r = isqrt_u64(Xmax);
        auto conductors = cyclic_cubic_conductors(static_cast<i64>(r));
        for (i64 d : fundamentals_upto(r)) {
            u64 ad = uabs(d);
            for (auto& cc : conductors) {
                u64 f = static_cast<u64>(cc.f);
                u64 l = ad / gcd_u64(ad, f) * f;
                if (l <= r) bins.add(static_cast<u128>(l) * l, cc.fields);
            }
        }
        return bins.cumulative();
    }
    if (order == 6) {
        if (!cache_->have_s3) {
            for (int sign : {1, -1})
                for (auto& rec : enum_cubic_s3(bounds_.s3_cubic, sign, workers_))
                    cache_->s3.push_back({uabs(rec.disc), uabs(quad_disc_of(rec.disc))});
            cache_->have_s3 = true;
        }
        Bins bins(grid);
        bool with_d2 = in("egi");
        for (auto& [d3, d2] : cache_->s3) bins.add(with_d2 ? static_cast<u128>(d3) * d2 : d3);
        return bins.cumulative();
    }
    if (order == 8) {
        auto quartics = cyclic_quartic_fields_by_conductor(static_cast<i64>(isqrt_u64(Xmax / 3)));
        auto small = cyclic_quartic_fields(static_cast<i64>(Xmax));
        for (u64 X : grid) {
            i64 s = 0;
            for (auto& q : quartics) {
                u64 f2 = static_cast<u64>(q.conductor) * q.conductor;
                if (f2 * 3 <= X) s += static_cast<i64>(Q(X / f2));
            }
            for (auto& q : small)
                if (static_cast<u64>(q.disc) <= X) --s;
            out.push_back(s);
        }
        return out;
    }
    if (order == 12) {
        auto& v = cache_->sextic_conductors;
        return each([&](u64 X) { return static_cast<u64>(std::upper_bound(v.begin(), v.end(), X) - v.begin()); });
    }
    fail(Errc::Internal, "no counting branch for " + label);
}

i64 Census::count_family(const std::string& label, u64 X) { return count_family_grid(label, {X}).at(0); }

CountReport fit_family(Census& census, const std::string& label, const std::vector<u64>& grid) {
    const TorusFamilySpec& spec = family_spec(label);
    const CatalogEntry& e = catalog_entry(label);
    CountReport rep;
    rep.label = label;
    rep.a_conj = 1.0 / a_invariant(e.group);
    rep.b_conj = b_invariant(e.group);
    rep.coverage_limited = spec.needs_import;
    u64 cap = census.max_x(label);
    for (u64 X : grid)
        if (X <= cap) rep.grid.push_back(X);
    rep.counts = census.count_family_grid(label, rep.grid);
    std::vector<double> gx(rep.grid.begin(), rep.grid.end()), sy(rep.counts.begin(), rep.counts.end());
    try {
        PartialSumFit f = tauberian_fit(gx, sy);
        rep.a_hat = f.a_hat;
        rep.w_hat = f.w_hat;
        rep.r2 = f.r2;
        rep.a_hat_fixed_w = tauberian_fit_fixed_w(gx, sy, rep.b_conj).a_hat;
        rep.fitted = true;
    } catch (const Error& err) {
        if (err.code() != Errc::DegenerateGrid) throw;
    }
    if (rep.coverage_limited) rep.verdict = "coverage-limited";
    else if (!rep.fitted) rep.verdict = "insufficient-grid";
    else if (std::fabs(rep.a_hat - rep.a_conj) <= 0.05 && std::fabs(rep.w_hat - rep.b_conj) <= 1.0)
        rep.verdict = "consistent";
    else if (std::fabs(rep.a_hat_fixed_w - rep.a_conj) <= 0.05)
        rep.verdict = "consistent-fixed-w";
    else rep.verdict = "deviates";
    return rep;
}

std::vector<SummaryRow> summary_table(Census* census, const std::vector<u64>& grid) {
    std::vector<SummaryRow> rows;
    for (auto& e : catalog()) {
        if (e.group.order() == 1) continue;
        SummaryRow r;
        r.label = e.label;
        r.iso = e.iso;
        r.a = a_invariant(e.group);
        r.b = b_invariant(e.group);
        r.implemented = family_implemented(e.label);
        if (census && r.implemented && !grid.empty()) {
            try {
                r.fit = fit_family(*census, e.label, grid);
            } catch (const Error& err) {
                if (err.code() != Errc::Unimplemented) throw;
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace tori
