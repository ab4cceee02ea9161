#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "fields.hpp"

namespace tori {

struct TorusFamilySpec {
    std::string label;
    std::string constituents;  // e.g. "L1, L3 quadratic; L1 != L3"
    std::string conductor;     // role expression
    std::string multiplicity;  // tori per tuple of constituents
    bool needs_import = false;
};

// Specs for the families counted in-house or from imports. Errors: Unimplemented.
const TorusFamilySpec& family_spec(const std::string& label);
bool family_implemented(const std::string& label);
std::vector<std::string> implemented_families();

struct CensusBounds {
    i64 s3_cubic = 10000000;  // |D3| bound of the in-house S3 enumeration
    i64 pair_search = 1000000000;
};

struct CountReport {
    std::string label;
    std::vector<u64> grid;
    std::vector<i64> counts;
    double a_hat = 0, w_hat = 0, r2 = 0;
    double a_hat_fixed_w = 0;  // exponent refit with w held at b(H)
    double a_conj = 0;  // 1/a(H)
    int b_conj = 0;     // b(H); compared with w_hat
    bool fitted = false;
    bool coverage_limited = false;
    std::string verdict;
};

// Holds the enumerations shared between families.
class Census {
public:
    explicit Census(int workers = 1, CensusBounds bounds = {});
    ~Census();

    // 6T3 sextics: degree 6, subfield_discs = cubic;quadratic.
    void add_import(const std::vector<FieldRecord>& records);

    // Errors: Unimplemented, BoundExceeded.
    i64 count_family(const std::string& label, u64 X);
    std::vector<i64> count_family_grid(const std::string& label, const std::vector<u64>& grid);
    // Largest X the in-house data covers for the family.
    u64 max_x(const std::string& label) const;

private:
    struct Cache;
    std::unique_ptr<Cache> cache_;
    int workers_;
    CensusBounds bounds_;
};

// Grid points above the family's coverage are dropped before fitting.
CountReport fit_family(Census& census, const std::string& label, const std::vector<u64>& grid);

struct SummaryRow {
    std::string label;
    std::string iso;
    int a = 0, b = 0;
    bool implemented = false;
    std::optional<CountReport> fit;
};

// One row per nontrivial catalog entry. With fits, implemented families are fitted on grid.
std::vector<SummaryRow> summary_table(Census* census = nullptr, const std::vector<u64>& grid = {});

// Number of C6 fields with lcm(|D2|^3, |D2| D3) <= X at each grid point.
std::vector<i64> c6_counts(const std::vector<u64>& grid);

}  // namespace tori
