#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "census.hpp"
#include "dirichlet.hpp"
#include "disc_calculus.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "lattice_groups.hpp"
#include "order.hpp"
#include "quadform.hpp"

namespace tori {

namespace {

// Tolerances and budgets.
constexpr double kInvariantTableSeconds = 5;
constexpr double kC6IdentitySeconds = 120;
constexpr double kC6FitSeconds = 300;
constexpr double kReflectionSeconds = 120;
constexpr double kClosureSeconds = 300;
constexpr double kC6ExponentLo = 0.47, kC6ExponentHi = 0.53;
// "w close to 1" uses the same one-unit window as the family fits below
constexpr double kLogPowerTol = 1.0;
constexpr double kSyntheticTol = 0.01;
constexpr double kUnitExponentLo = 0.95, kUnitExponentHi = 1.05;
constexpr double kHalfExponentLo = 0.45, kHalfExponentHi = 0.55;
constexpr double kDivisorRatioSpread = 3;
constexpr double kLowerBoundDrop = 3;

// (a, b) per nontrivial class, transcribed row by row from the published table.
const std::map<std::string, std::pair<int, int>>& published_table() {
    static const std::map<std::string, std::pair<int, int>> t = [] {
        const char* rows[] = {
            "2 a 2 1", "2 b 1 1", "2 c 2 1", "2 d 1 1", "2 e 3 1", "3 a 1 1", "3 b 1 1",
            "4 a 2 2", "4 b 2 1", "4 c 2 2", "4 d 2 1", "4 e 1 1", "4 f 2 3", "4 g 1 2", "4 h 2 3",
            "4 i 1 2", "4 j 1 2", "4 k 1 1", "4 l 2 3", "4 m 1 2", "4 n 2 3", "4 o 1 2",
            "6 a 2 3", "6 b 1 1", "6 c 2 1", "6 d 2 1", "6 e 2 2", "6 f 1 1", "6 g 2 2", "6 h 1 1",
            "6 i 2 2", "6 j 1 1",
            "8 a 1 1", "8 b 1 1", "8 c 1 3", "8 d 1 3", "8 e 1 3", "8 f 1 3", "8 g 2 4", "8 h 1 2",
            "8 i 1 1", "8 j 1 1", "8 k 2 4", "8 l 1 2", "8 m 1 1", "8 n 1 1",
            "12 a 1 1", "12 b 2 5", "12 c 1 2", "12 d 1 2", "12 e 1 2", "12 f 1 1", "12 g 1 1",
            "12 h 1 1", "12 i 2 2", "12 j 2 2", "12 k 2 2",
            "16 a 1 3", "16 b 1 3",
            "24 a 1 1", "24 b 1 1", "24 c 1 1", "24 d 1 3", "24 e 2 4", "24 f 1 1", "24 g 2 4",
            "24 h 1 1", "24 i 2 4", "24 j 1 1",
            "48 a 1 2", "48 b 1 2", "48 c 1 2",
        };
        std::map<std::string, std::pair<int, int>> m;
        for (const char* r : rows) {
            std::istringstream in(r);
            std::string order, letter;
            int a, b;
            in >> order >> letter >> a >> b;
            m["H_{" + order + "," + letter + "}"] = {a, b};
        }
        return m;
    }();
    return t;
}

// Order-3 elements of GL3(Z) have eigenvalues 1, w, w^2, so rank(h - I) = 2 for
// both cyclic classes; the printed a = 1 for them cannot hold. Their counts
// (cyclic cubics by f^2) also fit X^{1/2}.
const std::set<std::string> kKnownTableMisprints = {"H_{3,a}", "H_{3,b}"};

std::string fmt(double v, int prec = 4) {
    std::ostringstream o;
    o.precision(prec);
    o << std::fixed << v;
    return o.str();
}

CriterionResult start(int id, const char* name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    return r;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::vector<double> as_double(const std::vector<u64>& v) { return {v.begin(), v.end()}; }
std::vector<double> as_double(const std::vector<i64>& v) { return {v.begin(), v.end()}; }

CriterionResult invariant_table() {
    auto r = start(1, "a,b invariant table");
    int match = 0, total = 0;
    std::set<std::string> bad;
    std::string notes;
    for (auto& e : catalog()) {
        if (e.group.order() == 1) continue;
        ++total;
        int a = a_invariant(e.group), b = b_invariant(e.group);
        auto want = published_table().at(e.label);
        if (want == std::make_pair(a, b)) {
            ++match;
        } else {
            bad.insert(e.label);
            notes += " " + e.label + " computed (" + std::to_string(a) + "," + std::to_string(b) + ") printed (" +
                     std::to_string(want.first) + "," + std::to_string(want.second) + ");";
        }
    }
    r.pass = match == 72 && total == 72;
    r.known_deviation = !r.pass && total == 72 && bad == kKnownTableMisprints;
    r.detail = std::to_string(match) + "/" + std::to_string(total) + " match." + notes;
    if (r.known_deviation)
        r.detail += " Order-3 matrices always have rank(h - I) = 2; the printed a = 1 is a misprint.";
    return r;
}

CriterionResult c6_identity() {
    auto r = start(2, "C6 census equals the Euler-product identity");
    const u64 N = 100000;
    auto census = census_c6(N);
    auto rhs = lemma42_rhs(N);
    u64 mismatches = 0, first = 0;
    i64 total = 0;
    for (u64 n = 1; n <= N; ++n) {
        total += census.a[n];
        if (rhs.a[n] != 2 * census.a[n]) {
            if (!mismatches) first = n;
            ++mismatches;
        }
    }
    r.pass = mismatches == 0;
    r.detail = "N=" + std::to_string(N) + ", " + std::to_string(total) + " fields, " + std::to_string(mismatches) +
               " coefficient mismatches" + (mismatches ? " (first at n=" + std::to_string(first) + ")" : "");
    return r;
}

CriterionResult c6_exponent() {
    auto r = start(3, "C6 count exponent");
    auto grid = half_decade_grid(8, 18);  // fit window 1e5..1e9 after the first decade is dropped
    auto counts = c6_counts(grid);
    auto fit = tauberian_fit(as_double(grid), as_double(counts));
    r.pass = within(fit.a_hat, kC6ExponentLo, kC6ExponentHi) && std::fabs(fit.w_hat - 1) <= kLogPowerTol;
    r.detail = "a_hat=" + fmt(fit.a_hat) + " in [" + fmt(kC6ExponentLo, 2) + "," + fmt(kC6ExponentHi, 2) +
               "], w_hat=" + fmt(fit.w_hat) + " (|w_hat-1| <= " + fmt(kLogPowerTol, 1) + "), count(1e9)=" +
               std::to_string(counts.back());
    return r;
}

// The fitter recovers exact synthetic power-log laws on the grid it will be used on.
bool synthetic_calibration(const std::vector<u64>& grid, std::string& worst) {
    double err = 0;
    for (double a : {0.5, 1.0})
        for (double w : {1.0, 2.0, 3.0}) {
            std::vector<double> s;
            for (u64 X : grid) s.push_back(std::pow(double(X), a) * std::pow(std::log(double(X)), w - 1));
            auto f = tauberian_fit(as_double(grid), s);
            err = std::max({err, std::fabs(f.a_hat - a), std::fabs(f.w_hat - w)});
        }
    worst = fmt(err, 6);
    return err <= kSyntheticTol;
}

CriterionResult family_fits(const AcceptanceOptions& opt) {
    auto r = start(4, "Family fits H_{4,e}, H_{6,a}, H_{8,a}");
    auto grid = half_decade_grid(8, 18);
    std::string worst;
    bool calibrated = synthetic_calibration(grid, worst);
    Census census(opt.workers);
    struct Want {
        const char* label;
        double lo, hi;
        int b;  // 0: exponent only
    };
    bool ok = calibrated;
    r.detail = "synthetic max error " + worst + ";";
    for (Want w : {Want{"H_{4,e}", kUnitExponentLo, kUnitExponentHi, 0},
                   Want{"H_{6,a}", kHalfExponentLo, kHalfExponentHi, 3},
                   Want{"H_{8,a}", kUnitExponentLo, kUnitExponentHi, 0}}) {
        auto counts = census.count_family_grid(w.label, grid);
        auto fit = tauberian_fit(as_double(grid), as_double(counts));
        bool good = within(fit.a_hat, w.lo, w.hi) && (w.b == 0 || std::fabs(fit.w_hat - w.b) <= kLogPowerTol);
        ok = ok && good;
        r.detail += std::string(" ") + w.label + " a_hat=" + fmt(fit.a_hat) + (w.b ? " w_hat=" + fmt(fit.w_hat) : "") +
                    (good ? "" : " OUT");
    }
    r.pass = ok;
    return r;
}

CriterionResult reflection() {
    auto r = start(5, "3-torsion reflection cross-check");
    const i64 X = 5000;
    std::map<i64, int> cubic_count;
    for (int sign : {1, -1})
        for (auto& f : enum_cubic_s3(X, sign)) ++cubic_count[f.disc];
    for (auto& f : enum_cyclic_cubic(X)) ++cubic_count[f.disc];
    int checked = 0, bad = 0;
    i64 first_bad = 0;
    for (i64 d = -X; d <= X; ++d) {
        if (!is_fundamental(d)) continue;
        ++checked;
        auto cg = quad_class_group(d);
        i64 h3 = cg.p_torsion.count(3) ? cg.p_torsion.at(3) : 1;
        auto it = cubic_count.find(d);
        i64 n = it == cubic_count.end() ? 0 : it->second;
        if ((h3 - 1) / 2 != n) {
            if (!bad) first_bad = d;
            ++bad;
        }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(checked) + " fundamental discriminants, " + std::to_string(bad) + " mismatches" +
               (bad ? " (first d=" + std::to_string(first_bad) + ")" : "");
    return r;
}

// Roots are the differences 3(r_i - r_j) of the roots of the cubic, so the
// polynomial defines the Galois closure.
ZX closure_generator(const std::vector<i64>& monic) {
    mpz_class d = to_mpz(monic[0]), c = to_mpz(monic[1]), b = to_mpz(monic[2]);
    mpz_class P = 9 * c - 3 * b * b;
    mpz_class Q = 27 * d - 9 * b * c + 2 * b * b * b;
    return {4 * P * P * P + 27 * Q * Q, 0, 9 * P * P, 0, 6 * P, 0, 1};
}

CriterionResult closure_oracle() {
    auto r = start(6, "S3 closure discriminant oracle");
    int checked = 0, bad = 0;
    std::string first;
    for (int sign : {1, -1}) {
        auto cubics = enum_cubic_s3(3000, sign);
        if (cubics.size() < 20) fail(Errc::Internal, "fewer than 20 S3 cubics below 3000");
        for (int k = 0; k < 20; ++k) {
            auto& form = std::get<CubicFormProvenance>(cubics[k].provenance).form;
            FactoredInt got = maximal_order_disc(closure_generator(monic_cubic(form)));
            S3Closure want = s3_closure_disc(cubics[k]);
            ++checked;
            if (got != want.disc6) {
                if (!bad) first = std::to_string(cubics[k].disc);
                ++bad;
            }
        }
    }
    r.pass = bad == 0 && checked == 40;
    r.detail = std::to_string(checked) + " cubics, " + std::to_string(bad) + " mismatches" +
               (bad ? " (first disc " + first + ")" : "");
    return r;
}

CriterionResult euler_vs_enumeration() {
    auto r = start(7, "Euler products match field enumeration");
    const u64 N = 1000000;
    std::vector<i64> quad(N + 1, 0), cyc(N + 1, 0);
    for_each_quadratic(static_cast<i64>(N), [&](i64 d) { ++quad[d < 0 ? -d : d]; });
    for (auto& f : enum_cyclic_cubic(static_cast<i64>(N))) ++cyc[f.disc];
    auto g2 = expand_euler(series_spec("g2"), N);
    auto g3 = expand_euler(series_spec("g3"), N);
    u64 bad2 = 0, bad3 = 0;
    for (u64 n = 1; n <= N; ++n) {
        i64 want2 = g2.a[n] - (n == 1), want3 = g3.a[n] - (n == 1);
        if (quad[n] != want2) ++bad2;
        if (2 * cyc[n] != want3) ++bad3;
    }
    r.pass = bad2 == 0 && bad3 == 0;
    r.detail = "n<=" + std::to_string(N) + ": quadratic mismatches " + std::to_string(bad2) +
               ", cyclic cubic mismatches " + std::to_string(bad3);
    return r;
}

CriterionResult compositum_property() {
    auto r = start(8, "Tame compositum valuations");
    std::mt19937_64 rng(20240518);
    auto partition = [&](int m) {
        std::vector<int> parts;
        while (m > 0) {
            int k = std::uniform_int_distribution<int>(1, m)(rng);
            parts.push_back(k);
            m -= k;
        }
        return parts;
    };
    auto lcm_of = [](const std::vector<int>& v) {
        u64 l = 1;
        for (int x : v) l = l / gcd_u64(l, x) * x;
        return l;
    };
    const u64 p = 101;  // above every degree used, so tame
    int coprime_cases = 0, bad = 0;
    for (int t = 0; t < 1000; ++t) {
        RamificationProfile a, b;
        a.degree = std::uniform_int_distribution<int>(2, 6)(rng);
        b.degree = std::uniform_int_distribution<int>(2, 6)(rng);
        a.cycles[p] = partition(a.degree);
        b.cycles[p] = partition(b.degree);
        if (gcd_u64(lcm_of(a.cycles[p]), lcm_of(b.cycles[p])) != 1) continue;
        ++coprime_cases;
        if (compositum_valuation(a, b, p) != compositum_valuation_coprime(a, b, p)) ++bad;
    }
    // biquadratic fields against the product of the three quadratic discriminants
    std::vector<i64> ds;
    for (i64 d = -500; d <= 500; ++d)
        if (is_fundamental(d)) ds.push_back(d);
    std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
    int biquad = 0, bad_biquad = 0;
    auto core = [](i64 d) { return d % 4 == 0 ? d / 4 : d; };
    auto profile = [](i64 d, u64 q) {
        RamificationProfile pr;
        pr.degree = 2;
        pr.cycles[q] = (static_cast<u64>(d < 0 ? -d : d) % q == 0) ? std::vector<int>{2} : std::vector<int>{1, 1};
        return pr;
    };
    while (biquad < 300) {
        i64 d1 = ds[pick(rng)], d2 = ds[pick(rng)];
        if (d1 == d2) continue;
        ++biquad;
        V4Completion v = v4_complete(d1, d2);
        bool ok = v.disc == FactoredInt(d1) * FactoredInt(d2) * FactoredInt(v.d3);
        for (auto& [q, e] : v.disc.factors()) {
            if (q == 2) continue;
            u64 qq = q.get_ui();
            ok = ok && compositum_valuation(profile(d1, qq), profile(d2, qq), qq) == e;
        }
        if (biquad <= 60) {
            mpz_class a = to_mpz(core(d1)), b = to_mpz(core(d2));
            ZX f{(a - b) * (a - b), 0, -2 * (a + b), 0, 1};
            ok = ok && maximal_order_disc(f) == v.disc;
        }
        if (!ok) ++bad_biquad;
    }
    r.pass = bad == 0 && bad_biquad == 0 && coprime_cases >= 100;
    r.detail = std::to_string(coprime_cases) + " of 1000 random pairs meet the coprime hypothesis, " +
               std::to_string(bad) + " disagree; " + std::to_string(biquad) + " biquadratic cases, " +
               std::to_string(bad_biquad) + " disagree";
    return r;
}

CriterionResult lemma25() {
    auto r = start(9, "Simple-pole product exponent");
    const u64 N = 10000000;
    auto grid = half_decade_grid(4, 14);
    std::string worst;
    bool calibrated = synthetic_calibration(grid, worst);
    auto coeffs = expand_euler(series_spec("lemma25"), N);
    auto sums = coeffs.partial_sums(grid);
    auto fit = tauberian_fit(as_double(grid), as_double(sums));
    r.pass = calibrated && within(fit.a_hat, kUnitExponentLo, kUnitExponentHi);
    r.detail = "N=1e7 a_hat=" + fmt(fit.a_hat) + " w_hat=" + fmt(fit.w_hat) + ", synthetic max error " + worst;
    return r;
}

CriterionResult divisor_sums() {
    auto r = start(10, "Divisor power sum ratios");
    auto grid = half_decade_grid(8, 16);
    bool ok = true;
    for (double t : {1.0, 2.0, std::log(3.0) / std::log(2.0)}) {
        auto rows = divisor_power_sums(t, grid);
        double lo = rows[0].ratio, hi = rows[0].ratio;
        for (auto& row : rows) {
            lo = std::min(lo, row.ratio);
            hi = std::max(hi, row.ratio);
        }
        bool good = lo > 0 && hi / lo < kDivisorRatioSpread;
        ok = ok && good;
        r.detail += "t=" + fmt(t, 3) + " ratio " + fmt(rows.front().ratio) + ".." + fmt(rows.back().ratio) +
                    " spread " + fmt(hi / lo, 3) + "; ";
    }
    r.pass = ok;
    return r;
}

// count * X^{-1/a} must not sink over the top two decades of each family's grid.
CriterionResult lower_bounds(const AcceptanceOptions& opt) {
    auto r = start(11, "Lower-bound sanity on implemented families");
    CensusBounds bounds;
    bounds.s3_cubic = opt.s3_bound;
    Census census(opt.workers, bounds);
    int families = 0;
    std::string bad;
    for (auto& label : implemented_families()) {
        if (family_spec(label).needs_import) continue;
        std::vector<u64> grid;
        u64 cap = census.max_x(label);
        for (u64 X : half_decade_grid(8, 18))
            if (X <= cap) grid.push_back(X);
        auto counts = census.count_family_grid(label, grid);
        double inv_a = 1.0 / a_invariant(catalog_entry(label).group);
        std::size_t from = 0;
        while (grid[from] * 100 < grid.back()) ++from;
        double start = counts[from] / std::pow(double(grid[from]), inv_a), low = start;
        bool monotone = true;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (i && counts[i] < counts[i - 1]) monotone = false;
            if (i >= from) low = std::min(low, counts[i] / std::pow(double(grid[i]), inv_a));
        }
        ++families;
        if (!(start > 0) || low < start / kLowerBoundDrop || !monotone) bad += " " + label;
    }
    r.pass = bad.empty();
    r.detail = std::to_string(families) + " families swept (S3 cubics to " + std::to_string(opt.s3_bound) + ")" +
               (bad.empty() ? "" : "; failing:" + bad);
    return r;
}

}  // namespace

const std::vector<int>& acceptance_ids() {
    static const std::vector<int> ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return ids;
}

const std::vector<int>& quick_acceptance_ids() {
    static const std::vector<int> ids = {1, 2, 5, 8};
    return ids;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    double budget = 0;
    switch (id) {
        case 1: r = invariant_table(); budget = kInvariantTableSeconds; break;
        case 2: r = c6_identity(); budget = kC6IdentitySeconds; break;
        case 3: r = c6_exponent(); budget = kC6FitSeconds; break;
        case 4: r = family_fits(opt); break;
        case 5: r = reflection(); budget = kReflectionSeconds; break;
        case 6: r = closure_oracle(); budget = kClosureSeconds; break;
        case 7: r = euler_vs_enumeration(); break;
        case 8: r = compositum_property(); break;
        case 9: r = lemma25(); break;
        case 10: r = divisor_sums(); break;
        case 11: r = lower_bounds(opt); break;
        default: fail(Errc::Usage, "no acceptance criterion " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && r.seconds > budget) {
        r.pass = false;
        r.known_deviation = false;
        r.detail += "; over the " + fmt(budget, 0) + " s budget";
    }
    return r;
}

}  // namespace tori
