#pragma once

#include <utility>
#include <vector>

#include "rtr/poly.hpp"

namespace rtr {

// Interned irreducible polynomials, normalised to canonical leading coefficient 1.
int intern_atom(const Poly& monic);
const Poly& atom_poly(int id);
uint32_t atom_mask(int id);

using Den = std::vector<std::pair<int, int>>;  // (atom, exponent > 0), sorted by atom

struct Factored {
    Rational c = 1;
    Den f;
};

// Splits p into scalar times monic part; p must be nonzero.
std::pair<Rational, Poly> make_monic(const Poly& p);

// Best-effort factorisation over Q: content, monomial factors, rational roots
// of univariate parts, polynomials linear in some variable, and quadratics with
// square discriminant.  Remaining pieces are treated as atoms.
Factored factor(const Poly& p);

// Quick modular certificate that atom does not divide p.  Returns true when
// divisibility is still possible.
bool maybe_divides(int atom, const Poly& p);

Den den_mul(const Den& a, const Den& b);
Den den_max(const Den& a, const Den& b);
Poly den_poly(const Den& d);
Poly atom_pow(int atom, int e);

std::optional<Poly> poly_sqrt(const Poly& p);

}  // namespace rtr
