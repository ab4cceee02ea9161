// Command-line front end. Talks to the library only through tori.h.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tori/tori.h"

namespace {

using json = nlohmann::ordered_json;

struct Failure {
    tori_status status;
    std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{TORI_E_USAGE, msg}; }

void check(tori_status s) {
    if (s != TORI_OK) throw Failure{s, tori_last_error()};
}

using CStr = std::unique_ptr<char, void (*)(void*)>;
CStr owned(char* p) { return CStr(p, tori_free); }

// Takes ownership of *p once the call that filled it has returned.
std::string take(tori_status s, char** p) {
    CStr guard = owned(*p);
    check(s);
    return *p ? std::string(*p) : std::string();
}

// Accepts 1000000, 1e6, 2.5e6 and 10^6; the value must be a positive integer.
int64_t parse_count(const std::string& s, const char* what) {
    static const std::regex dec(R"((\d+)(?:\.(\d+))?(?:[eE](\d+))?)"), pw(R"((\d+)\^(\d+))");
    std::smatch m;
    __int128 v = 0;
    auto overflow = [&] { usage(std::string(what) + " too large: " + s); };
    if (std::regex_match(s, m, pw)) {
        __int128 b = std::stoll(m[1]);
        int e = std::stoi(m[2]);
        v = 1;
        for (int i = 0; i < e; ++i)
            if ((v *= b) > INT64_MAX) overflow();
    } else if (std::regex_match(s, m, dec)) {
        std::string digits = m[1].str() + m[2].str();
        int shift = (m[3].matched ? std::stoi(m[3]) : 0) - static_cast<int>(m[2].length());
        while (shift < 0 && !digits.empty() && digits.back() == '0') digits.pop_back(), ++shift;
        if (shift < 0) usage(std::string(what) + " must be an integer: " + s);
        for (char c : digits)
            if ((v = v * 10 + (c - '0')) > INT64_MAX) overflow();
        for (int i = 0; i < shift; ++i)
            if ((v *= 10) > INT64_MAX) overflow();
    } else {
        usage(std::string(what) + " is not a number: " + s);
    }
    if (v < 1) usage(std::string(what) + " must be positive");
    return static_cast<int64_t>(v);
}

// key=value file; flags given on the command line win.
struct Config {
    std::map<std::string, std::string> kv;

    static const std::vector<std::string>& keys() {
        static const std::vector<std::string> k = {"bound.quad", "bound.c3", "bound.s3", "bound.c4",
                                                   "workers",    "grid",     "import",   "out_dir"};
        return k;
    }

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Failure{TORI_E_IO, "cannot open config " + path};
        std::string line;
        int lineno = 0;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) usage(path + ":" + std::to_string(lineno) + ": expected key=value");
            std::string k = trim(line.substr(0, eq));
            if (std::find(keys().begin(), keys().end(), k) == keys().end())
                usage(path + ":" + std::to_string(lineno) + ": unknown key '" + k + "'");
            kv[k] = trim(line.substr(eq + 1));
        }
    }

    std::string get(const std::string& k, const std::string& dflt = "") const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
};

const std::map<std::string, int64_t> kDefaultBound = {
    {"quad", 100000000}, {"c3", 1000000000}, {"s3", 10000000}, {"c4", 10000000}};

struct Globals {
    std::string config_path;
    int workers = 0;  // 0: take from config, else 1
    std::string out_dir;
};

// Canonical description of what determines the output; worker count and
// output location are deliberately left out.
struct Invocation {
    std::string command;
    std::map<std::string, std::string> params;

    std::string hash() const {
        std::string canon = command;
        for (auto& [k, v] : params) canon += "\x1f" + k + "=" + v;
        uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : canon) h = (h ^ c) * 1099511628211ULL;
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
        return buf;
    }
    std::string csv_header() const {
        return std::string("# tori ") + tori_version() + " command=\"" + command + "\" invocation=" + hash() + "\n";
    }
    json json_header() const {
        json p(params);
        return {{"tool", "tori"}, {"version", tori_version()}, {"command", command}, {"invocation", hash()},
                {"params", p}};
    }
};

class Output {
public:
    Output(const Globals& g, const Config& cfg) {
        if (const char* env = std::getenv("TORI_OUT_DIR"); env && *env) dir_ = env;
        else dir_ = cfg.get("out_dir");
        if (!g.out_dir.empty()) dir_ = g.out_dir;
    }

    void write(const std::string& path, const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::filesystem::path p(path);
        if (p.is_relative() && !dir_.empty()) p = std::filesystem::path(dir_) / p;
        if (p.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(p.parent_path(), ec);
        }
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Failure{TORI_E_IO, "cannot write " + p.string()};
        out << text;
        if (!out) throw Failure{TORI_E_IO, "write failed for " + p.string()};
    }

private:
    std::string dir_;
};

std::string with_json_header(const Invocation& inv, const std::string& body) {
    json j = json::parse(body);
    json out;
    out["_header"] = inv.json_header();
    for (auto& [k, v] : j.items()) out[k] = v;
    return out.dump(2) + "\n";
}

std::vector<uint64_t> half_decades(int lo, int hi) {
    size_t n = 0;
    check(tori_half_decade_grid(lo, hi, nullptr, &n));
    std::vector<uint64_t> g(n);
    check(tori_half_decade_grid(lo, hi, g.data(), &n));
    return g;
}

// Largest k with 10^(k/2) <= x.
int top_half_decade(uint64_t x) {
    auto g = half_decades(0, 38);
    int k = 0;
    while (k + 1 < static_cast<int>(g.size()) && g[k + 1] <= x) ++k;
    return k;
}

// "" -> 10^4 .. x; "lo:hi" -> explicit half-decade exponents.
std::vector<uint64_t> build_grid(const std::string& spec, uint64_t x) {
    if (spec.empty()) {
        int hi = top_half_decade(x);
        if (hi < 8) usage("grid needs X >= 1e4");
        auto g = half_decades(8, hi);
        if (g.back() < x) g.push_back(x);
        return g;
    }
    std::smatch m;
    static const std::regex re(R"((\d+):(\d+))");
    if (!std::regex_match(spec, m, re)) usage("--grid expects klo:khi (half-decade exponents), got '" + spec + "'");
    auto g = half_decades(std::stoi(m[1]), std::stoi(m[2]));
    std::vector<uint64_t> out;
    for (auto v : g)
        if (v <= x) out.push_back(v);
    if (out.empty()) usage("grid lies entirely above X");
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t a = 0;
    while (a <= s.size()) {
        size_t b = s.find(',', a);
        if (b == std::string::npos) b = s.size();
        if (b > a) out.push_back(s.substr(a, b - a));
        a = b + 1;
    }
    return out;
}

void emit_error(const Failure& f) {
    json j = {{"error", f.status == TORI_E_USAGE ? "UsageError" : tori_status_name(f.status)},
              {"code", static_cast<int>(f.status)},
              {"message", f.message}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting tori over Q by discriminant-defined families"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tori_version()));

    Globals g;
    app.add_option("--config", g.config_path, "key=value config file");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", g.out_dir, "directory for relative output paths (also TORI_OUT_DIR)");

    // groups
    auto* groups = app.add_subcommand("groups", "finite subgroups of GL3(Z)");
    groups->require_subcommand(1);
    std::string out;
    auto* g_table = groups->add_subcommand("table", "CSV of the 72 classes with a(H), b(H)");
    g_table->add_option("--out", out);
    std::string family;
    auto* g_show = groups->add_subcommand("show", "invariants of one class as JSON");
    g_show->add_option("--family", family)->required();
    g_show->add_option("--out", out);

    // fields
    auto* fields = app.add_subcommand("fields", "constituent number fields");
    fields->require_subcommand(1);
    std::string kind, bound_s;
    auto* f_enum = fields->add_subcommand("enum", "enumerate fields by |disc|");
    f_enum->add_option("--kind", kind)->required()->check(CLI::IsMember({"quad", "c3", "s3", "c4"}));
    f_enum->add_option("--bound", bound_s);
    f_enum->add_option("--out", out);
    std::string in_path;
    auto* f_import = fields->add_subcommand("import", "validate an lmfdb-nf-v1 CSV");
    f_import->add_option("--in", in_path)->required();
    int64_t disc = 0;
    auto* f_cg = fields->add_subcommand("classgroup", "class number and 2-, 3-torsion of a quadratic field");
    f_cg->add_option("--d", disc)->required();
    f_cg->add_option("--out", out);

    // verify
    auto* verify = app.add_subcommand("verify", "discriminant identities");
    verify->require_subcommand(1);
    std::string lemma, report, roles;
    auto* v_id = verify->add_subcommand("identities", "check every bundle row against a lemma's chain");
    v_id->add_option("--lemma", lemma)->required();
    v_id->add_option("--in", in_path)->required();
    v_id->add_option("--report", report);
    auto* v_cond = verify->add_subcommand("conductor", "evaluate a family's conductor");
    v_cond->add_option("--family", family)->required();
    v_cond->add_option("--roles", roles, "e.g. DL=5 or D6=-10368,D2=8,D3=-3")->required();

    // dirichlet
    auto* dir = app.add_subcommand("dirichlet", "Dirichlet series coefficients and partial-sum fits");
    dir->require_subcommand(1);
    std::string series, n_s;
    auto* d_exp = dir->add_subcommand("expand", "coefficients a_n for n <= N");
    d_exp->add_option("--series", series)
        ->required()
        ->check(CLI::IsMember({"g1", "g2", "g3", "h", "lemma42", "lemma25"}));
    d_exp->add_option("--N", n_s)->required();
    d_exp->add_option("--out", out);
    auto* d_fit = dir->add_subcommand("fit", "log-log fit of the partial sums of a coefficient file");
    d_fit->add_option("--in", in_path)->required();
    d_fit->add_option("--report", report);

    // count
    auto* count = app.add_subcommand("count", "count tori of a family up to X");
    std::string x_s, grid_s;
    std::vector<std::string> imports;
    bool all = false;
    auto* fam_opt = count->add_option("--family", family);
    count->add_option("--X", x_s);
    auto* grid_opt = count->add_option("--grid", grid_s, "fit on a half-decade grid; optional klo:khi")->expected(0, 1);
    count->add_option("--import", imports, "lmfdb-nf-v1 CSV (repeatable)");
    count->add_flag("--all-implemented", all);
    count->add_option("--bound", bound_s, "S3 cubic enumeration bound");
    count->add_option("--out", out);

    // accept
    auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
    bool quick = false;
    accept->add_flag("--quick", quick, "criteria 1, 2, 5, 8 only");
    accept->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error({TORI_E_USAGE, e.what()});
        return 2;
    }

    try {
        Config cfg;
        if (!g.config_path.empty()) cfg.load(g.config_path);
        int workers = g.workers;
        if (workers == 0) workers = cfg.kv.count("workers") ? static_cast<int>(parse_count(cfg.get("workers"), "workers")) : 1;
        Output sink(g, cfg);
        auto bound_for = [&](const std::string& k) {
            if (!bound_s.empty()) return parse_count(bound_s, "--bound");
            if (cfg.kv.count("bound." + k)) return parse_count(cfg.get("bound." + k), ("bound." + k).c_str());
            return kDefaultBound.at(k);
        };

        Invocation inv;
        if (g_table->parsed()) {
            inv.command = "groups table";
            char* csv = nullptr;
            sink.write(out, inv.csv_header() + take(tori_groups_table(&csv), &csv));
        } else if (g_show->parsed()) {
            inv.command = "groups show";
            inv.params["family"] = family;
            int order = 0, a = 0, b = 0;
            check(tori_group_invariants(family.c_str(), &order, &a, &b));
            json j = {{"_header", inv.json_header()}, {"label", family}, {"order", order}, {"a", a}, {"b", b}};
            sink.write(out, j.dump(2) + "\n");
        } else if (f_enum->parsed()) {
            int64_t bound = bound_for(kind);
            inv.command = "fields enum";
            inv.params = {{"kind", kind}, {"bound", std::to_string(bound)}};
            char* csv = nullptr;
            sink.write(out, inv.csv_header() + take(tori_fields_enum(kind.c_str(), bound, workers, &csv), &csv));
        } else if (f_import->parsed()) {
            size_t rows = 0;
            check(tori_fields_import(in_path.c_str(), &rows));
            std::cout << json({{"path", in_path}, {"rows", rows}}).dump() << "\n";
        } else if (f_cg->parsed()) {
            inv.command = "fields classgroup";
            inv.params["d"] = std::to_string(disc);
            int64_t h = 0, h2 = 0, h3 = 0;
            check(tori_class_group(disc, &h, &h2, &h3));
            json j = {{"_header", inv.json_header()}, {"d", disc}, {"h", h}, {"h2", h2}, {"h3", h3}};
            sink.write(out, j.dump(2) + "\n");
        } else if (v_id->parsed()) {
            inv.command = "verify identities";
            inv.params = {{"lemma", lemma}, {"in", in_path}};
            char* js = nullptr;
            std::string body = take(tori_verify_identities(lemma.c_str(), in_path.c_str(), &js), &js);
            sink.write(report, with_json_header(inv, body));
            if (json::parse(body)["failed"].get<int>() > 0) return 1;
        } else if (v_cond->parsed()) {
            char* v = nullptr;
            std::cout << take(tori_conductor(family.c_str(), roles.c_str(), &v), &v) << "\n";
        } else if (d_exp->parsed()) {
            int64_t n = parse_count(n_s, "--N");
            inv.command = "dirichlet expand";
            inv.params = {{"series", series}, {"N", std::to_string(n)}};
            tori_series* s = nullptr;
            check(tori_series_expand(series.c_str(), static_cast<uint64_t>(n), &s));
            std::unique_ptr<tori_series, void (*)(tori_series*)> hold(s, tori_series_free);
            char* csv = nullptr;
            sink.write(out, inv.csv_header() + take(tori_series_csv(s, &csv), &csv));
        } else if (d_fit->parsed()) {
            inv.command = "dirichlet fit";
            inv.params = {{"in", in_path}};
            char* js = nullptr;
            sink.write(report, with_json_header(inv, take(tori_series_fit(in_path.c_str(), &js), &js)));
        } else if (count->parsed()) {
            if (all == static_cast<bool>(fam_opt->count())) usage("count needs exactly one of --family, --all-implemented");
            int64_t s3 = bound_for("s3");
            // --all-implemented always fits; a config "grid" key (auto or klo:khi) acts like --grid
            bool want_grid = all || grid_opt->count() > 0 || cfg.kv.count("grid") > 0;
            if (grid_opt->count() == 0) grid_s = cfg.get("grid");
            if (grid_s == "auto") grid_s.clear();
            if (imports.empty()) imports = split_list(cfg.get("import"));

            tori_census* c = nullptr;
            check(tori_census_new(workers, s3, &c));
            std::unique_ptr<tori_census, void (*)(tori_census*)> hold(c, tori_census_free);
            for (auto& p : imports) check(tori_census_import(c, p.c_str()));

            inv.command = all ? "count --all-implemented" : "count";
            inv.params = {{"bound.s3", std::to_string(s3)}, {"grid", want_grid ? (grid_s.empty() ? "auto" : grid_s) : "none"}};
            for (size_t i = 0; i < imports.size(); ++i) inv.params["import." + std::to_string(i)] = imports[i];

            auto one = [&](const std::string& label) {
                uint64_t x = 0;
                check(tori_census_max_x(c, label.c_str(), &x));
                if (!x_s.empty()) {
                    auto want = static_cast<uint64_t>(parse_count(x_s, "--X"));
                    if (!all && want > x)
                        throw Failure{TORI_E_BOUND_EXCEEDED, label + ": X = " + std::to_string(want) +
                                                                 " exceeds the covered range " + std::to_string(x)};
                    x = std::min(x, want);
                }
                std::vector<uint64_t> grid = want_grid ? build_grid(grid_s, x) : std::vector<uint64_t>{x};
                char* js = nullptr;
                return take(tori_census_report(c, label.c_str(), grid.data(), grid.size(), want_grid ? 1 : 0, &js), &js);
            };
            if (!all) {
                inv.params["family"] = family;
                if (!x_s.empty()) inv.params["X"] = std::to_string(parse_count(x_s, "--X"));
                sink.write(out, with_json_header(inv, one(family)));
            } else {
                if (!x_s.empty()) inv.params["X"] = std::to_string(parse_count(x_s, "--X"));
                char* ls = nullptr;
                std::string labels = take(tori_census_families(&ls), &ls);
                json reps = json::array();
                std::istringstream in(labels);
                for (std::string l; std::getline(in, l);) {
                    if (l.empty()) continue;
                    try {
                        reps.push_back(json::parse(one(l)));
                    } catch (const Failure& f) {
                        // families whose import is absent are listed with the reason
                        reps.push_back({{"label", l}, {"error", tori_status_name(f.status)}, {"message", f.message}});
                    }
                }
                json j = {{"_header", inv.json_header()}, {"reports", reps}};
                sink.write(out, j.dump(2) + "\n");
            }
        } else if (accept->parsed()) {
            inv.command = quick ? "accept --quick" : "accept";
            char* js = nullptr;
            int unexpected = 0;
            json j = json::parse(take(tori_accept(quick ? 1 : 0, workers, &js, &unexpected), &js));
            for (auto& c : j["criteria"]) {
                std::string tag = c["status"] == "pass" ? "PASS" : (c["known_deviation"].get<bool>() ? "FAIL (known deviation)" : "FAIL");
                std::fprintf(stderr, "criterion %2d  %-22s %7.2fs  %s: %s\n", c["id"].get<int>(), tag.c_str(),
                             c["seconds"].get<double>(), c["name"].get<std::string>().c_str(),
                             c["detail"].get<std::string>().c_str());
                c.erase("seconds");  // keeps the report byte-stable across runs
            }
            sink.write(out, with_json_header(inv, j.dump()));
            return unexpected ? 1 : 0;
        }
    } catch (const Failure& f) {
        emit_error(f);
        return f.status == TORI_E_USAGE ? 2 : 1;
    } catch (const std::exception& e) {
        emit_error({TORI_E_INTERNAL, e.what()});
        return 1;
    }
    return 0;
}
