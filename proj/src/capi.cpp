#include "tori/tori.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <new>
#include <sstream>
#include <string>

#include "acceptance.hpp"
#include "census.hpp"
#include "dirichlet.hpp"
#include "disc_calculus.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "json.hpp"
#include "lattice_groups.hpp"
#include "quadform.hpp"

struct tori_series {
    std::string name;
    tori::CoefficientVector v;
};

struct tori_census {
    tori::Census census;
    tori_census(int workers, tori::CensusBounds b) : census(workers, b) {}
};

namespace {

using json = nlohmann::ordered_json;
using tori::Errc;
using tori::fail;

thread_local std::string g_last_error;

template <class F>
tori_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return TORI_OK;
    } catch (const tori::Error& e) {
        g_last_error = e.what();
        return static_cast<tori_status>(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    }
    return TORI_E_INTERNAL;
}

void need(const void* p, const char* what) {
    if (!p) fail(Errc::Usage, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.data(), s.size() + 1);
    return p;
}

std::string family(const char* label) {
    need(label, "label");
    return tori::label_from_cli(label);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

mpz_class parse_mpz(const std::string& s, int line) {
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0)
        fail(Errc::SchemaMismatch, "line " + std::to_string(line) + ": bad integer '" + s + "'");
    return v;
}

std::string field_rows_quad(tori::i64 bound) {
    std::string out;
    tori::for_each_quadratic(bound, [&](tori::i64 d) {
        tori::i64 ad = d < 0 ? -d : d;
        out += "2." + std::string(d > 0 ? "2" : "0") + "." + std::to_string(ad) + ".1,2,C2," + std::to_string(d) + ",\n";
    });
    return out;
}

std::string field_rows_cubic(const std::vector<tori::FieldRecord>& recs, const char* glabel) {
    std::string out;
    std::map<std::pair<int, tori::i64>, int> seen;
    for (auto& r : recs) {
        tori::i64 ad = r.disc < 0 ? -r.disc : r.disc;
        int real = r.disc > 0 ? 3 : 1;
        int i = ++seen[{real, ad}];
        out += "3." + std::to_string(real) + "." + std::to_string(ad) + "." + std::to_string(i) + ",3," + glabel + "," +
               std::to_string(r.disc) + ",\n";
    }
    return out;
}

std::string fields_csv(const std::string& kind, tori::i64 bound, int workers) {
    if (bound < 1) fail(Errc::Usage, "bound must be positive");
    std::string body;
    if (kind == "quad") {
        body = field_rows_quad(bound);
    } else if (kind == "c3") {
        body = field_rows_cubic(tori::enum_cyclic_cubic(bound), "C3");
    } else if (kind == "s3") {
        auto neg = tori::enum_cubic_s3(bound, -1, workers);
        auto pos = tori::enum_cubic_s3(bound, 1, workers);
        std::vector<tori::FieldRecord> all;
        all.reserve(neg.size() + pos.size());
        std::merge(neg.begin(), neg.end(), pos.begin(), pos.end(), std::back_inserter(all),
                   [](const tori::FieldRecord& a, const tori::FieldRecord& b) {
                       tori::i64 x = a.disc < 0 ? -a.disc : a.disc, y = b.disc < 0 ? -b.disc : b.disc;
                       return x != y ? x < y : a.disc < b.disc;
                   });
        body = field_rows_cubic(all, "S3-cubic");
    } else if (kind == "c4") {
        for (auto& q : tori::cyclic_quartic_fields(bound))
            body += "C4-f" + std::to_string(q.conductor) + "-" + std::to_string(q.index) + ",4,C4," +
                    std::to_string(q.disc) + "," + std::to_string(q.quadratic_disc) + "\n";
    } else {
        fail(Errc::Usage, "unknown field kind '" + kind + "' (quad, c3, s3, c4)");
    }
    return "label,degree,galois_label,disc,subfield_discs\n" + body;
}

json identities_report(const std::string& lemma, const std::string& path) {
    auto roles = tori::lemma_all_roles(lemma);
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open " + path);
    std::string line;
    std::vector<std::string> header;
    int lineno = 0, rows = 0, passed = 0;
    json failures = json::array();
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, ',');
        if (header.empty()) {
            for (auto& c : cols)
                if (!roles.count(c)) fail(Errc::SchemaMismatch, "column '" + c + "' is not a role of lemma " + lemma);
            header = cols;
            continue;
        }
        if (cols.size() != header.size())
            fail(Errc::SchemaMismatch, "line " + std::to_string(lineno) + ": expected " +
                                           std::to_string(header.size()) + " columns");
        tori::RoleBindings b;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            mpz_class v = parse_mpz(cols[i], lineno);
            if (v == 0) fail(Errc::InvalidDiscriminant, "line " + std::to_string(lineno) + ": zero discriminant");
            b[header[i]] = tori::FactoredInt(v);
        }
        ++rows;
        auto rep = tori::verify_lemma_bundle(b, lemma);
        if (rep.ok) {
            ++passed;
            continue;
        }
        json res = json::array();
        for (auto& r : rep.residual)
            res.push_back({{"equation", r.equation}, {"prime", r.prime.get_str()}, {"lhs_valuation", r.lhs},
                           {"rhs_valuation", r.rhs}});
        failures.push_back({{"line", lineno}, {"residual", res}});
    }
    if (header.empty()) fail(Errc::SchemaMismatch, path + ": missing header");
    return {{"lemma", lemma}, {"rows", rows}, {"passed", passed}, {"failed", rows - passed}, {"failures", failures}};
}

std::string series_csv(const tori_series& s) {
    std::string out = "# series=" + s.name + " N=" + std::to_string(s.v.N) + "\nn,a\n";
    for (tori::u64 n = 1; n <= s.v.N; ++n) {
        tori::i64 a = s.v.a[n];
        if (!a) continue;
        out += std::to_string(n) + ",";
        if (s.v.denom == 1 || a % s.v.denom == 0) out += std::to_string(a / s.v.denom);
        else out += std::to_string(a) + "/" + std::to_string(s.v.denom);
        out += "\n";
    }
    return out;
}

json series_fit(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open " + path);
    std::string line;
    tori::u64 N = 0;
    bool header = false;
    std::vector<std::pair<tori::u64, long double>> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find(" N=");
            if (pos != std::string::npos) N = std::stoull(line.substr(pos + 3));
            continue;
        }
        if (!header) {
            if (line != "n,a") fail(Errc::SchemaMismatch, "expected header 'n,a', got '" + line + "'");
            header = true;
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != 2) fail(Errc::SchemaMismatch, "line " + std::to_string(lineno) + ": expected 2 columns");
        mpz_class n = parse_mpz(cols[0], lineno);
        auto slash = cols[1].find('/');
        long double v = parse_mpz(cols[1].substr(0, slash), lineno).get_d();
        if (slash != std::string::npos) v /= parse_mpz(cols[1].substr(slash + 1), lineno).get_d();
        if (n < 1 || (!rows.empty() && n.get_ui() <= rows.back().first))
            fail(Errc::SchemaMismatch, "line " + std::to_string(lineno) + ": n must increase");
        rows.push_back({n.get_ui(), v});
    }
    if (!header) fail(Errc::SchemaMismatch, path + ": missing header");
    if (!N && !rows.empty()) N = rows.back().first;
    std::vector<double> grid, sums;
    std::size_t i = 0;
    long double s = 0;
    for (tori::u64 X : tori::half_decade_grid(2, 40)) {
        if (X > N) break;
        for (; i < rows.size() && rows[i].first <= X; ++i) s += rows[i].second;
        if (s > 0) {  // leading empty stretch of a sparse series carries no information
            grid.push_back(static_cast<double>(X));
            sums.push_back(static_cast<double>(s));
        }
    }
    auto fit = tori::tauberian_fit(grid, sums);
    return {{"N", N},           {"grid", grid},       {"sums", sums},      {"fit_from", fit.used_from},
            {"a_hat", fit.a_hat}, {"w_hat", fit.w_hat}, {"c_hat", fit.c_hat}, {"r2", fit.r2}};
}

json count_report(const tori::CountReport& r, bool fitted_requested) {
    json j;
    j["label"] = r.label;
    j["grid"] = r.grid;
    j["counts"] = r.counts;
    if (fitted_requested && r.fitted) {
        j["a_hat"] = r.a_hat;
        j["w_hat"] = r.w_hat;
    } else {
        j["a_hat"] = nullptr;
        j["w_hat"] = nullptr;
    }
    j["a_conj"] = r.a_conj;
    j["b_conj"] = r.b_conj;
    if (fitted_requested) {
        j["a_hat_fixed_w"] = r.fitted ? json(r.a_hat_fixed_w) : json(nullptr);
        j["r2"] = r.fitted ? json(r.r2) : json(nullptr);
        j["verdict"] = r.verdict;
    }
    j["coverage_limited"] = r.coverage_limited;
    return j;
}

}  // namespace

extern "C" {

const char* tori_version(void) { return "0.1.0"; }

const char* tori_status_name(tori_status status) {
    if (status == TORI_OK) return "Ok";
    if (status < TORI_E_USAGE || status > TORI_E_INTERNAL) return "Unknown";
    return tori::errc_name(static_cast<Errc>(status));
}

const char* tori_last_error(void) { return g_last_error.c_str(); }

void tori_free(void* p) { std::free(p); }

tori_status tori_groups_table(char** csv) {
    return guard([&] {
        need(csv, "csv");
        std::string out = "label,order,iso,a,b\n";
        for (auto& e : tori::catalog()) {
            if (e.group.order() == 1) continue;
            out += e.label + "," + std::to_string(e.group.order()) + "," + e.iso + "," +
                   std::to_string(tori::a_invariant(e.group)) + "," + std::to_string(tori::b_invariant(e.group)) + "\n";
        }
        *csv = dup(out);
    });
}

tori_status tori_group_invariants(const char* label, int* order, int* a, int* b) {
    return guard([&] {
        need(order, "order");
        need(a, "a");
        need(b, "b");
        const auto& e = tori::catalog_entry(family(label));
        *order = static_cast<int>(e.group.order());
        *a = tori::a_invariant(e.group);
        *b = tori::b_invariant(e.group);
    });
}

tori_status tori_fields_enum(const char* kind, int64_t bound, int workers, char** csv) {
    return guard([&] {
        need(kind, "kind");
        need(csv, "csv");
        *csv = dup(fields_csv(kind, bound, std::max(1, workers)));
    });
}

tori_status tori_fields_import(const char* path, size_t* rows) {
    return guard([&] {
        need(path, "path");
        need(rows, "rows");
        *rows = tori::import_fields_csv(path).size();
    });
}

tori_status tori_class_group(int64_t d, int64_t* h, int64_t* h2, int64_t* h3) {
    return guard([&] {
        need(h, "h");
        auto cg = tori::quad_class_group(d);
        *h = cg.h;
        if (h2) *h2 = cg.p_torsion.count(2) ? cg.p_torsion.at(2) : 1;
        if (h3) *h3 = cg.p_torsion.count(3) ? cg.p_torsion.at(3) : 1;
    });
}

tori_status tori_verify_identities(const char* lemma, const char* bundles_path, char** report_json) {
    return guard([&] {
        need(lemma, "lemma");
        need(bundles_path, "bundles_path");
        need(report_json, "report_json");
        *report_json = dup(identities_report(lemma, bundles_path).dump(2) + "\n");
    });
}

tori_status tori_conductor(const char* label, const char* roles, char** value) {
    return guard([&] {
        need(roles, "roles");
        need(value, "value");
        tori::RoleBindings b;
        for (auto& kv : split(roles, ',')) {
            if (kv.empty()) continue;
            auto eq = kv.find('=');
            if (eq == std::string::npos) fail(Errc::Usage, "role binding '" + kv + "' is not name=value");
            b[kv.substr(0, eq)] = tori::FactoredInt(parse_mpz(kv.substr(eq + 1), 0));
        }
        *value = dup(tori::conductor_eval(family(label), b).value().get_str());
    });
}

tori_status tori_series_expand(const char* name, uint64_t n_max, tori_series** out) {
    return guard([&] {
        need(name, "name");
        need(out, "out");
        if (n_max < 1) fail(Errc::Usage, "N must be positive");
        auto s = std::make_unique<tori_series>();
        s->name = name;
        if (s->name == "lemma42") s->v = tori::lemma42_rhs(n_max);
        else s->v = tori::expand_euler(tori::series_spec(name), n_max);
        *out = s.release();
    });
}

void tori_series_free(tori_series* s) { delete s; }

uint64_t tori_series_length(const tori_series* s) { return s ? s->v.N : 0; }

int64_t tori_series_denominator(const tori_series* s) { return s ? s->v.denom : 0; }

tori_status tori_series_coefficient(const tori_series* s, uint64_t n, int64_t* numerator) {
    return guard([&] {
        need(s, "series");
        need(numerator, "numerator");
        if (n < 1 || n > s->v.N) fail(Errc::BoundExceeded, "coefficient index outside 1..N");
        *numerator = s->v.a[n];
    });
}

tori_status tori_series_csv(const tori_series* s, char** csv) {
    return guard([&] {
        need(s, "series");
        need(csv, "csv");
        *csv = dup(series_csv(*s));
    });
}

tori_status tori_series_fit(const char* coeffs_path, char** report_json) {
    return guard([&] {
        need(coeffs_path, "coeffs_path");
        need(report_json, "report_json");
        *report_json = dup(series_fit(coeffs_path).dump(2) + "\n");
    });
}

tori_status tori_census_new(int workers, int64_t s3_bound, tori_census** out) {
    return guard([&] {
        need(out, "out");
        tori::CensusBounds b;
        if (s3_bound > 0) b.s3_cubic = s3_bound;
        *out = new tori_census(std::max(1, workers), b);
    });
}

void tori_census_free(tori_census* c) { delete c; }

tori_status tori_census_import(tori_census* c, const char* path) {
    return guard([&] {
        need(c, "census");
        need(path, "path");
        c->census.add_import(tori::import_fields_csv(path));
    });
}

tori_status tori_census_count(tori_census* c, const char* label, uint64_t x, int64_t* count) {
    return guard([&] {
        need(c, "census");
        need(count, "count");
        *count = c->census.count_family(family(label), x);
    });
}

tori_status tori_census_max_x(tori_census* c, const char* label, uint64_t* x) {
    return guard([&] {
        need(c, "census");
        need(x, "x");
        *x = c->census.max_x(family(label));
    });
}

tori_status tori_census_report(tori_census* c, const char* label, const uint64_t* grid, size_t n, int fit,
                               char** report_json) {
    return guard([&] {
        need(c, "census");
        need(report_json, "report_json");
        if (n && !grid) fail(Errc::Usage, "grid must not be null");
        std::string l = family(label);
        std::vector<tori::u64> g(grid, grid + n);
        tori::CountReport r;
        if (fit) {
            r = tori::fit_family(c->census, l, g);
        } else {
            const auto& e = tori::catalog_entry(l);
            r.label = l;
            r.grid = g;
            r.counts = c->census.count_family_grid(l, g);
            r.a_conj = 1.0 / tori::a_invariant(e.group);
            r.b_conj = tori::b_invariant(e.group);
            r.coverage_limited = tori::family_spec(l).needs_import;
        }
        *report_json = dup(count_report(r, fit != 0).dump(2) + "\n");
    });
}

tori_status tori_census_families(char** labels) {
    return guard([&] {
        need(labels, "labels");
        std::string out;
        for (auto& l : tori::implemented_families()) out += l + "\n";
        *labels = dup(out);
    });
}

tori_status tori_half_decade_grid(int k_lo, int k_hi, uint64_t* grid, size_t* n) {
    return guard([&] {
        need(n, "n");
        if (k_lo > k_hi || k_lo < 0 || k_hi > 38) fail(Errc::Usage, "grid exponents must satisfy 0 <= k_lo <= k_hi <= 38");
        auto g = tori::half_decade_grid(k_lo, k_hi);
        if (grid) std::copy(g.begin(), g.end(), grid);
        *n = g.size();
    });
}

tori_status tori_accept(int quick, int workers, char** report_json, int* unexpected_failures) {
    return guard([&] {
        need(report_json, "report_json");
        tori::AcceptanceOptions opt;
        opt.workers = std::max(1, workers);
        json crit = json::array();
        int passed = 0, known = 0, unexpected = 0;
        for (int id : quick ? tori::quick_acceptance_ids() : tori::acceptance_ids()) {
            tori::CriterionResult r;
            try {
                r = tori::run_criterion(id, opt);
            } catch (const tori::Error& e) {
                r.id = id;
                r.detail = std::string(tori::errc_name(e.code())) + ": " + e.what();
            }
            if (r.pass) ++passed;
            else if (r.known_deviation) ++known;
            else ++unexpected;
            crit.push_back({{"id", r.id},
                            {"name", r.name},
                            {"status", r.pass ? "pass" : "fail"},
                            {"known_deviation", r.known_deviation},
                            {"detail", r.detail},
                            {"seconds", r.seconds}});
        }
        if (unexpected_failures) *unexpected_failures = unexpected;
        json j = {{"quick", quick != 0},
                  {"criteria", crit},
                  {"passed", passed},
                  {"known_deviations", known},
                  {"unexpected_failures", unexpected}};
        *report_json = dup(j.dump(2) + "\n");
    });
}

}  // extern "C"
