#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace tori {

// Integer polynomial, coefficients from the constant term up, no trailing zeros.
using ZX = std::vector<mpz_class>;

int degree(const ZX& f);  // -1 for the zero polynomial
void normalize(ZX& f);
ZX zx_add(const ZX& a, const ZX& b);
ZX zx_sub(const ZX& a, const ZX& b);
ZX zx_mul(const ZX& a, const ZX& b);
ZX zx_derivative(const ZX& f);
// Exact division over Z; returns false if b does not divide a.
bool zx_divides(const ZX& a, const ZX& b, ZX* quotient = nullptr);
mpz_class zx_eval(const ZX& f, const mpz_class& x);

mpz_class zx_resultant(const ZX& a, const ZX& b);
mpz_class zx_disc(const ZX& f);

// Polynomial arithmetic with coefficients reduced into [0, m).
ZX mod_reduce(const ZX& f, const mpz_class& m);
ZX mod_mul(const ZX& a, const ZX& b, const mpz_class& m);
ZX mod_sub(const ZX& a, const ZX& b, const mpz_class& m);
ZX mod_add(const ZX& a, const ZX& b, const mpz_class& m);
// b monic mod m.
void mod_divmod(const ZX& a, const ZX& b, const mpz_class& m, ZX& q, ZX& r);
// Over F_p.
ZX fp_gcd(const ZX& a, const ZX& b, const mpz_class& p);
ZX fp_monic(const ZX& a, const mpz_class& p);
ZX fp_powmod(const ZX& base, mpz_class e, const ZX& mod, const mpz_class& p);

// Factorization over F_p into monic irreducibles with multiplicity; f nonzero mod p.
std::vector<std::pair<ZX, int>> factor_mod_p(const ZX& f, const mpz_class& p);

// True if f (primitive, positive leading coefficient) has no factorization
// into two nonconstant polynomials over Z.
bool zx_irreducible(const ZX& f);

}  // namespace tori
