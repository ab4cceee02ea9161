#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "fields.hpp"

namespace tori {

// Product of named discriminant roles with integer exponents, e.g. D6/(D2*D3).
struct Monomial {
    std::map<std::string, int> exps;

    static Monomial parse(const std::string& text);
    std::string str() const;
};

// mono * lcm(lcm_args) when lcm_args is set.
struct ConductorExpression {
    std::string family_label;
    Monomial mono;
    std::optional<std::pair<Monomial, Monomial>> lcm_args;

    std::set<std::string> roles() const;
    std::string str() const;
};

using RoleBindings = std::map<std::string, FactoredInt>;

// Errors: Unrecognized for an unknown label.
const ConductorExpression& conductor_expression(const std::string& label);

// Absolute values of the bound discriminants are used.
// Errors: MissingRole, NonIntegralQuotient, Unrecognized.
FactoredInt conductor_eval(const std::string& label, const RoleBindings& bindings);
FactoredInt eval_expression(const ConductorExpression& e, const RoleBindings& bindings);

struct V4Completion {
    i64 d3;
    FactoredInt disc;
};
// Errors: InvalidDiscriminant, Degenerate.
V4Completion v4_complete(i64 d1, i64 d2);

struct S3Closure {
    i64 d2;
    FactoredInt disc6;
};
// Errors: CyclicInput.
S3Closure s3_closure_disc(i64 disc3);
S3Closure s3_closure_disc(const FieldRecord& cubic);

struct A4Relations {
    FactoredInt disc6;
    FactoredInt disc_closure;
};
// Errors: InconsistentPair.
A4Relations a4_relations(const FactoredInt& disc4, const FactoredInt& disc3);
FactoredInt s4_sextic_disc(const FactoredInt& disc4, const FactoredInt& disc3);

// Cycle type of a tame inertia generator at each prime; primes not listed are unramified.
struct RamificationProfile {
    int degree = 1;
    std::map<u64, std::vector<int>> cycles;
    std::set<u64> wild;

    std::vector<int> cycle_type(u64 p) const;
    // m - (number of cycles)
    int disc_valuation(u64 p) const;
};

// Errors: WildPrime.
int compositum_valuation(const RamificationProfile& a, const RamificationProfile& b, u64 p);
// The closed form valid when the cycle-length lcms are coprime.
int compositum_valuation_coprime(const RamificationProfile& a, const RamificationProfile& b, u64 p);

struct ResidualEntry {
    int equation = 0;  // index of the failing equality in the lemma's chain
    mpz_class prime;
    int lhs = 0, rhs = 0;
};

struct LemmaReport {
    bool ok = true;
    std::vector<ResidualEntry> residual;
    int checked = 0;  // equalities evaluated (optional ones only when their roles are bound)
};

const std::vector<std::string>& lemma_names();
// Roles a bundle must supply for the lemma. Errors: Unrecognized.
std::set<std::string> lemma_required_roles(const std::string& lemma);
std::set<std::string> lemma_all_roles(const std::string& lemma);

// Errors: MissingRole, Unrecognized.
LemmaReport verify_lemma_bundle(const RoleBindings& bundle, const std::string& lemma);

}  // namespace tori
