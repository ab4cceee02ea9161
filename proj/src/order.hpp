#pragma once

#include "arith.hpp"
#include "poly.hpp"

namespace tori {

constexpr int kMaxOrderDegree = 8;

// Dedekind criterion: is Z[x]/(f) maximal at p? f monic.
bool dedekind_p_maximal(const ZX& f, const mpz_class& p);

// Exponent of p in the index [O_K : Z[x]/(f)], by repeated order enlargement.
int p_index_exponent(const ZX& f, const mpz_class& p);

// Discriminant of the maximal order of Q[x]/(f). f monic and irreducible.
// Errors: Reducible; HeightExceeded (degree above 8 or coefficients above the bound).
FactoredInt maximal_order_disc(const ZX& f, const mpz_class& height_bound = mpz_class("1000000000000"));

}  // namespace tori
