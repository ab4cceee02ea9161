#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace tori {

struct PrimePredicate {
    enum class Kind { All, Explicit, Congruence };
    Kind kind = Kind::All;
    u64 prime = 0;               // Explicit
    u64 modulus = 0;             // Congruence
    std::vector<u64> residues;   // Congruence

    static PrimePredicate all() { return {}; }
    static PrimePredicate explicit_prime(u64 p) { return {Kind::Explicit, p, 0, {}}; }
    static PrimePredicate congruence(u64 m, std::vector<u64> r) { return {Kind::Congruence, 0, m, std::move(r)}; }
    bool matches(u64 p) const;
    std::string str() const;
};

// 1 + sum c_k p^{-ks} over the primes the predicate selects.
struct EulerFactor {
    PrimePredicate primes;
    std::vector<std::pair<int, i64>> terms;  // (k >= 1, c_k)
};

struct EulerFactorSpec {
    std::string name;
    std::vector<EulerFactor> factors;
};

// value of a_n is a[n] / denom; a[0] is unused.
struct CoefficientVector {
    u64 N = 0;
    i64 denom = 1;
    std::vector<i64> a;

    i64 at(u64 n) const { return a.at(n); }
    // Partial sums of a[n] (numerators) at each X in grid (X <= N).
    std::vector<i64> partial_sums(const std::vector<u64>& grid) const;
};

// Errors: OverlappingPredicates (checked for all primes, not just those <= N).
void check_partition(const EulerFactorSpec& spec);
CoefficientVector expand_euler(const EulerFactorSpec& spec, u64 N);

// The series of the C6 counting identity plus the p = +-1 mod 7 product. Errors: Unrecognized.
EulerFactorSpec series_spec(const std::string& name);
const std::vector<std::string>& series_names();

CoefficientVector dirichlet_convolve(const CoefficientVector& x, const CoefficientVector& y);
// n-th coefficient moved to n^k.
CoefficientVector argument_scale(const CoefficientVector& x, int k, u64 N);

// 2 * ((h*g1) - g2(3s) - g3 + 1) with denom 2.
CoefficientVector lemma42_rhs(u64 N);
// Count of C6 fields by lcm(|D2|^3, |D2| D3) = n, from direct enumeration of
// quadratic and cyclic cubic fields.
CoefficientVector census_c6(u64 N);

struct PartialSumFit {
    std::vector<double> grid, sums;
    double a_hat = 0, w_hat = 0, c_hat = 0, r2 = 0;
    std::size_t used_from = 0;  // index of the first grid point entering the fit
};

// log S = a log X + (w - 1) log log X + c by least squares.
// Errors: DegenerateGrid (fewer than 4 usable points, non-increasing grid, S <= 0, X <= e).
PartialSumFit tauberian_fit(const std::vector<double>& grid, const std::vector<double>& sums,
                            bool drop_first_decade = true);
// Same model with w held fixed; only a and c are fitted.
PartialSumFit tauberian_fit_fixed_w(const std::vector<double>& grid, const std::vector<double>& sums, double w,
                                    bool drop_first_decade = true);

// X = 10^{k/2} for k in [k_lo, k_hi], rounded down.
std::vector<u64> half_decade_grid(int k_lo, int k_hi);

struct DivisorPowerSum {
    double t = 0;
    u64 X = 0;
    bool exact = false;   // integer t: `sum` is exact
    long double sum = 0;
    u128 exact_sum = 0;
    double ratio = 0;     // sum / (X (log X)^(2^t - 1))
};

// One segmented divisor-count sieve serving every X in grid (ascending).
std::vector<DivisorPowerSum> divisor_power_sums(double t, const std::vector<u64>& grid);
DivisorPowerSum divisor_power_sum(double t, u64 X);

}  // namespace tori
