#include "disc_calculus.hpp"

#include <cctype>
#include <numeric>

#include "error.hpp"

namespace tori {

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// factor := NAME ['^' INT] | '(' product ')' ; product := factor ('*' factor)*
void parse_product(const std::string& s, std::size_t& i, int sign, Monomial& m);

void parse_factor(const std::string& s, std::size_t& i, int sign, Monomial& m) {
    skip_ws(s, i);
    if (i < s.size() && s[i] == '(') {
        ++i;
        parse_product(s, i, sign, m);
        skip_ws(s, i);
        if (i >= s.size() || s[i] != ')') fail(Errc::Internal, "unbalanced parenthesis in " + s);
        ++i;
        return;
    }
    std::size_t start = i;
    while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
    std::string name = s.substr(start, i - start);
    if (name.empty()) fail(Errc::Internal, "bad expression " + s);
    int e = 1;
    if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        e = std::stoi(s.substr(st, i - st));
    }
    if (name == "1") return;
    m.exps[name] += sign * e;
    if (m.exps[name] == 0) m.exps.erase(name);
}

void parse_product(const std::string& s, std::size_t& i, int sign, Monomial& m) {
    parse_factor(s, i, sign, m);
    for (;;) {
        skip_ws(s, i);
        if (i < s.size() && s[i] == '*') {
            ++i;
            parse_factor(s, i, sign, m);
        } else {
            return;
        }
    }
}

}  // namespace

Monomial Monomial::parse(const std::string& text) {
    Monomial m;
    std::size_t i = 0;
    parse_product(text, i, 1, m);
    skip_ws(text, i);
    if (i < text.size() && text[i] == '/') {
        ++i;
        parse_factor(text, i, -1, m);
    }
    skip_ws(text, i);
    if (i != text.size()) fail(Errc::Internal, "trailing input in expression " + text);
    return m;
}

std::string Monomial::str() const {
    std::string num, den;
    int nden = 0;
    for (auto& [r, e] : exps) {
        std::string t = r + (std::abs(e) > 1 ? "^" + std::to_string(std::abs(e)) : "");
        std::string& side = e > 0 ? num : den;
        if (!side.empty()) side += "*";
        side += t;
        if (e < 0) ++nden;
    }
    if (num.empty()) num = "1";
    if (den.empty()) return num;
    return num + "/" + (nden > 1 ? "(" + den + ")" : den);
}

std::set<std::string> ConductorExpression::roles() const {
    std::set<std::string> r;
    for (auto& [k, e] : mono.exps) r.insert(k);
    if (lcm_args) {
        for (auto& [k, e] : lcm_args->first.exps) r.insert(k);
        for (auto& [k, e] : lcm_args->second.exps) r.insert(k);
    }
    return r;
}

std::string ConductorExpression::str() const {
    if (!lcm_args) return mono.str();
    std::string l = "lcm(" + lcm_args->first.str() + ", " + lcm_args->second.str() + ")";
    return mono.exps.empty() ? l : mono.str() + "*" + l;
}

namespace {

struct TableRow {
    const char* labels;  // space separated suffixes sharing one formula
    int order;
    const char* formula;
};

// Role names: DL whole field, Dn a degree-n subfield, p/pp primes, DK* and DM* the
// named subfields of the octic families.
const TableRow kConductors[] = {
    {"a", 1, "1"},
    {"a c", 2, "DL^2"},
    {"b d", 2, "DL"},
    {"e", 2, "DL^3"},
    {"a b", 3, "DL"},
    {"a c", 4, "D4/D2"},
    {"b d", 4, "D4"},
    {"e k", 4, "D1*D3^2"},
    {"f h l n", 4, "DL"},
    {"g i m o", 4, "D2*D3"},
    {"j", 4, "D1*D2"},
    {"a", 6, "D6/(D2*D3)"},
    {"b e g i", 6, "D2*D3"},
    {"c d", 6, "lcm(D2^3, D2*D3)"},
    {"f h j", 6, "D3"},
    {"a b", 8, "D2*D4p/D2p"},
    {"c d e f", 8, "DK*DK1*DK2"},
    {"g k", 8, "DK*DM2/DK2"},
    {"h l", 8, "DM2/DK2"},
    {"i m", 8, "DM2"},
    {"j n", 8, "DM1"},
    {"a", 12, "D2p*D6/(D3*D2)"},
    {"b", 12, "D1*D7/(D4*D6)"},
    {"c", 12, "D1/(D4*D6)"},
    {"d", 12, "D4*D6"},
    {"e", 12, "D4*D8"},
    {"f g h", 12, "D1/D4"},
    {"i j k", 12, "D4"},
    {"a b", 16, "D2pp*D4p/D2p"},
    {"a f", 24, "D6/D3"},
    {"b g", 24, "D8/(D4*D2)"},
    {"c", 24, "D12*D4*D2/(D8*D6p)"},
    {"d", 24, "D2p*D6/(D3*D2)"},
    {"e", 24, "D6pp/D3"},
    {"h", 24, "D4"},
    {"i", 24, "D12/(D6*D4)"},
    {"j", 24, "D12*D4*D2/(D8*D6)"},
    {"a", 48, "D6/D3"},
    {"b", 48, "D8/(D4*D2)"},
    {"c", 48, "D12*D4*D2p/(D8p*D6p)"},
};

ConductorExpression parse_expression(const std::string& label, const std::string& text) {
    ConductorExpression e;
    e.family_label = label;
    if (text.rfind("lcm(", 0) == 0) {
        std::size_t comma = text.find(',');
        e.lcm_args = std::make_pair(Monomial::parse(text.substr(4, comma - 4)),
                                    Monomial::parse(text.substr(comma + 1, text.size() - comma - 2)));
    } else {
        e.mono = Monomial::parse(text);
    }
    return e;
}

const std::map<std::string, ConductorExpression>& table() {
    static const std::map<std::string, ConductorExpression> t = [] {
        std::map<std::string, ConductorExpression> m;
        for (auto& row : kConductors) {
            std::string suffixes = row.labels;
            for (char c : suffixes) {
                if (c == ' ') continue;
                std::string label = "H_{" + std::to_string(row.order) + "," + std::string(1, c) + "}";
                m[label] = parse_expression(label, row.formula);
            }
        }
        return m;
    }();
    return t;
}

FactoredInt eval_monomial(const Monomial& m, const RoleBindings& b) {
    FactoredInt r;
    for (auto& [role, e] : m.exps) {
        auto it = b.find(role);
        if (it == b.end()) fail(Errc::MissingRole, "role " + role + " is not bound");
        FactoredInt v = it->second.abs().pow(e < 0 ? -e : e);
        r = e > 0 ? r * v : r / v;
    }
    return r;
}

}  // namespace

const ConductorExpression& conductor_expression(const std::string& label) {
    auto& t = table();
    auto it = t.find(label);
    if (it == t.end()) fail(Errc::Unrecognized, "no conductor formula for " + label);
    return it->second;
}

FactoredInt eval_expression(const ConductorExpression& e, const RoleBindings& bindings) {
    FactoredInt r = eval_monomial(e.mono, bindings);
    if (e.lcm_args) {
        FactoredInt a = eval_monomial(e.lcm_args->first, bindings), b = eval_monomial(e.lcm_args->second, bindings);
        if (!a.integral() || !b.integral()) fail(Errc::NonIntegralQuotient, e.family_label + ": lcm of non-integers");
        r = r * FactoredInt::lcm(a, b);
    }
    if (!r.integral())
        fail(Errc::NonIntegralQuotient, e.family_label + ": " + e.str() + " evaluates to " + r.str());
    return r;
}

FactoredInt conductor_eval(const std::string& label, const RoleBindings& bindings) {
    return eval_expression(conductor_expression(label), bindings);
}

V4Completion v4_complete(i64 d1, i64 d2) {
    if (!is_fundamental(d1) || !is_fundamental(d2))
        fail(Errc::InvalidDiscriminant, "v4_complete needs fundamental discriminants");
    if (d1 == d2) fail(Errc::Degenerate, "the two quadratic fields coincide");
    mpz_class prod = to_mpz(d1) * to_mpz(d2);
    i64 d3 = to_i64(quad_disc_of(prod));
    return {d3, FactoredInt(prod * to_mpz(d3))};
}

S3Closure s3_closure_disc(i64 disc3) {
    mpz_class D = to_mpz(disc3);
    if (disc3 > 0 && is_square_mpz(D)) fail(Errc::CyclicInput, std::to_string(disc3) + " is a square");
    i64 d2 = quad_disc_of(disc3);
    return {d2, FactoredInt(D * D * to_mpz(d2))};
}

S3Closure s3_closure_disc(const FieldRecord& cubic) {
    if (cubic.degree != 3) fail(Errc::Usage, "s3_closure_disc expects a cubic field");
    return s3_closure_disc(cubic.disc);
}

A4Relations a4_relations(const FactoredInt& disc4, const FactoredInt& disc3) {
    FactoredInt q = disc4 / disc3;
    bool square = q.sign() == 1 && q.integral();
    for (auto& [p, e] : q.factors()) square = square && e % 2 == 0;
    if (!square) fail(Errc::InconsistentPair, "D4/D3 = " + q.str() + " is not a square");
    FactoredInt d6 = disc4 * disc3;
    return {d6, disc4.pow(2) * d6};
}

FactoredInt s4_sextic_disc(const FactoredInt& disc4, const FactoredInt& disc3) { return disc4 * disc3; }

std::vector<int> RamificationProfile::cycle_type(u64 p) const {
    auto it = cycles.find(p);
    if (it != cycles.end()) return it->second;
    return std::vector<int>(static_cast<std::size_t>(degree), 1);
}

int RamificationProfile::disc_valuation(u64 p) const {
    return degree - static_cast<int>(cycle_type(p).size());
}

int compositum_valuation(const RamificationProfile& a, const RamificationProfile& b, u64 p) {
    if (a.wild.count(p) || b.wild.count(p)) fail(Errc::WildPrime, std::to_string(p) + " is wildly ramified");
    int s = 0;
    for (int c : a.cycle_type(p))
        for (int d : b.cycle_type(p)) s += std::gcd(c, d);
    return a.degree * b.degree - s;
}

int compositum_valuation_coprime(const RamificationProfile& a, const RamificationProfile& b, u64 p) {
    if (a.wild.count(p) || b.wild.count(p)) fail(Errc::WildPrime, std::to_string(p) + " is wildly ramified");
    int va = a.disc_valuation(p), vb = b.disc_valuation(p);
    return va * b.degree + vb * a.degree - va * vb;
}

namespace {

struct LemmaSpec {
    std::string name;
    // Each chain lists expressions that must all be equal; a side whose roles are
    // not all required is checked only when the bundle binds them.
    std::vector<std::vector<std::string>> chains;
    std::set<std::string> required;
    std::map<std::string, FactoredInt> defaults;  // base-field roles default to 1
};

const std::vector<LemmaSpec>& lemma_specs() {
    static const std::vector<LemmaSpec> specs = {
        {"22a", {{"DL*DK^2", "DK1*DK2*DK3"}}, {"DL", "DK1", "DK2", "DK3"}, {{"DK", FactoredInt()}}},
        {"22b", {{"DL*DK^2", "DL3^2*DL2"}}, {"DL", "DL3", "DL2"}, {{"DK", FactoredInt()}}},
        {"22c",
         {{"DL*DK^3", "DL4^3*DL3"}, {"DL6*DK", "DL4*DL3"}, {"DL*DK^2", "DL6*DL4^2"}},
         {"DL", "DL6", "DL4", "DL3"},
         {{"DK", FactoredInt()}}},
        {"22d", {{"DL6*DK", "DL4*DL3"}}, {"DL6", "DL4", "DL3"}, {{"DK", FactoredInt()}}},
        {"3.2", {{"D6/D3", "D8/(D4*D2)", "D12*D4*D2/(D8*D6p)"}}, {"D6", "D3", "D8", "D4", "D2"}, {}},
        {"3.3", {{"D6/D3", "D4", "D12*D4*D2/(D8*D6)"}}, {"D6", "D3", "D4"}, {}},
        {"3.4", {{"D6pp/D3", "D8/(D4*D2)", "D12/(D6*D4)"}}, {"D6pp", "D3", "D8", "D4", "D2"}, {}},
        {"3.5",
         {{"D6/D3", "D8/(D4*D2)", "D12*D4*D2p/(D8p*D6p)"}},
         {"D6", "D3", "D8", "D4", "D2", "D12", "D2p", "D8p", "D6p"},
         {}},
    };
    return specs;
}

const LemmaSpec& lemma_spec(const std::string& name) {
    for (auto& s : lemma_specs())
        if (s.name == name) return s;
    fail(Errc::Unrecognized, "unknown lemma " + name);
}

bool covered(const Monomial& m, const RoleBindings& b) {
    for (auto& [r, e] : m.exps)
        if (!b.count(r)) return false;
    return true;
}

}  // namespace

const std::vector<std::string>& lemma_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (auto& s : lemma_specs()) n.push_back(s.name);
        return n;
    }();
    return names;
}

std::set<std::string> lemma_required_roles(const std::string& lemma) { return lemma_spec(lemma).required; }

std::set<std::string> lemma_all_roles(const std::string& lemma) {
    std::set<std::string> r;
    for (auto& chain : lemma_spec(lemma).chains)
        for (auto& side : chain)
            for (auto& [k, e] : Monomial::parse(side).exps) r.insert(k);
    return r;
}

LemmaReport verify_lemma_bundle(const RoleBindings& bundle, const std::string& lemma) {
    const LemmaSpec& spec = lemma_spec(lemma);
    for (auto& r : spec.required)
        if (!bundle.count(r)) fail(Errc::MissingRole, "lemma " + lemma + " needs role " + r);
    RoleBindings b = bundle;
    for (auto& [k, v] : spec.defaults) b.emplace(k, v);
    LemmaReport rep;
    int eq = 0;
    for (auto& chain : spec.chains) {
        std::vector<FactoredInt> values;
        for (auto& side : chain) {
            Monomial m = Monomial::parse(side);
            if (covered(m, b)) values.push_back(eval_monomial(m, b));
        }
        for (std::size_t k = 1; k < values.size(); ++k, ++eq) {
            ++rep.checked;
            const FactoredInt& l = values[0];
            const FactoredInt& r = values[k];
            std::set<mpz_class> primes;
            for (auto& [p, e] : l.factors()) primes.insert(p);
            for (auto& [p, e] : r.factors()) primes.insert(p);
            for (auto& p : primes) {
                int vl = l.valuation(p), vr = r.valuation(p);
                if (vl != vr) {
                    rep.ok = false;
                    rep.residual.push_back({eq, p, vl, vr});
                }
            }
        }
    }
    return rep;
}

}  // namespace tori
