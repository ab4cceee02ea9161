#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tori {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

std::vector<std::uint32_t> primes_upto(std::uint32_t n);
std::vector<std::int8_t> mobius_upto(std::uint32_t n);

bool is_prime_u64(u64 n);
u64 isqrt_u64(u64 n);
u64 icbrt_u64(u64 n);
u64 gcd_u64(u64 a, u64 b);

// Prime factorization, primes ascending.
std::vector<std::pair<u64, int>> factor_u64(u64 n);
std::vector<std::pair<mpz_class, int>> factor_mpz(const mpz_class& n);

bool is_squarefree_u64(u64 n);
bool is_square_mpz(const mpz_class& n);

// d is the discriminant of a quadratic field.
bool is_fundamental(i64 d);
// Fundamental discriminant of Q(sqrt(n)); n must not be a perfect square.
i64 quad_disc_of(i64 n);
mpz_class quad_disc_of(const mpz_class& n);

// Number of odd squarefree n <= y.
u64 count_odd_squarefree(u64 y);
// Number of fundamental discriminants d (both signs) with |d| <= y.
u64 count_fundamental(u64 y);

// Exact nonzero integer stored as sign and prime valuations. Exponents stay
// positive in a finished value; intermediate quotients may carry negatives.
class FactoredInt {
public:
    FactoredInt() = default;
    explicit FactoredInt(const mpz_class& n);
    explicit FactoredInt(i64 n) : FactoredInt(mpz_class(static_cast<long>(n))) {}
    static FactoredInt one() { return FactoredInt(); }

    int sign() const { return sign_; }
    const std::map<mpz_class, int>& factors() const { return f_; }
    int valuation(const mpz_class& p) const;
    mpz_class value() const;
    bool integral() const;
    bool is_one() const { return sign_ == 1 && f_.empty(); }
    FactoredInt abs() const;

    FactoredInt operator*(const FactoredInt& o) const;
    FactoredInt operator/(const FactoredInt& o) const;
    FactoredInt pow(int e) const;
    static FactoredInt lcm(const FactoredInt& a, const FactoredInt& b);
    bool operator==(const FactoredInt& o) const { return sign_ == o.sign_ && f_ == o.f_; }
    bool operator!=(const FactoredInt& o) const { return !(*this == o); }

    // "-2^3*3*7^2" style.
    std::string str() const;

private:
    int sign_ = 1;
    std::map<mpz_class, int> f_;
};

inline mpz_class to_mpz(i64 v) {
    mpz_class r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}
i64 to_i64(const mpz_class& v);  // throws if it does not fit

}  // namespace tori
