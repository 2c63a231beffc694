#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rtr/frac.hpp"

namespace rtr {

struct UnsupportedPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFactorization : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoRationalPrimitive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point of P^1 in one variable: a polynomial in the other symbols, or infinity.
struct Point {
    bool inf = false;
    Poly at;
    static Point infinity() { return {true, Poly()}; }
    static Point finite(const Poly& p) { return {false, p}; }
    static Point finite(long c) { return {false, Poly(c)}; }
    friend bool operator==(const Point& a, const Point& b) { return a.inf == b.inf && (a.inf || a.at == b.at); }
};

std::string to_string(const Point& p);

// Expansion in the local coordinate s = v - a (or w = 1/v at infinity).
struct Laurent {
    int var = -1;
    Point center;
    int low = 0;
    std::vector<Frac> c;  // c[i] multiplies s^(low+i)
    int trunc = 0;        // last exponent included

    Frac coeff(int k) const {
        if (k < low || k > trunc || k - low >= (int)c.size()) return Frac();
        return c[k - low];
    }
    bool is_zero() const;
    // sum of the window as a rational function of var
    Frac resum() const;
};

// f is a function of v (not a differential).
Laurent laurent_expand(const Frac& f, int v, const Point& c, int order);

// Coefficients of the differential f*dv in the local coordinate; at infinity
// the Jacobian -1/w^2 is included.
Laurent laurent_expand_diff(const Frac& f, int v, const Point& c, int order);

// Res_{v=c} f dv.
Frac residue_at(const Frac& f, int v, const Point& c);

// Valuation of the function f at c (lower bound max_order if identically zero
// up to that order).
int valuation(const Frac& f, int v, const Point& c, int max_order = 64);

struct PoleTerm {
    Poly pole;
    int order;
    Frac coeff;  // coefficient of (v-pole)^(-order)
};
struct PartialFractions {
    Frac poly_part;
    std::vector<PoleTerm> terms;
};

PartialFractions partial_fractions(const Frac& f, int v);
Frac reconstruct(const PartialFractions& pf, int v);

// Finite poles of f in v (with multiplicity as order).
std::vector<std::pair<Poly, int>> finite_poles(const Frac& f, int v);

// Germ F with dF = f dv on the window [.., order]; throws NoRationalPrimitive
// when the residue is nonzero.  The germ lives in the local coordinate.
Laurent local_antiderivative(const Frac& f, int v, const Point& c, int order);

}  // namespace rtr
