#pragma once

#include <string>
#include <vector>

#include "rtr/atoms.hpp"
#include "rtr/poly.hpp"

namespace rtr {

// Unnormalised numerator over a product of atoms.
struct RawFrac {
    Poly num;
    Den den;
};

// Exact rational function num / prod(atom^e).  Canonical: no atom of den
// divides num, and zero has an empty den.  The denominator is monic by
// construction, so equal functions have identical representations.
class Frac {
public:
    Frac() = default;
    Frac(long c) : num_(c) {}
    explicit Frac(const Rational& c) : num_(c) {}
    explicit Frac(const Poly& p) : num_(p) {}
    static Frac var(int id) { return Frac(Poly::var(id)); }
    static Frac ratio(const Poly& n, const Poly& d);
    static Frac canonical(Poly num, Den den);
    static Frac canonical(RawFrac r) { return canonical(std::move(r.num), std::move(r.den)); }

    const Poly& num() const { return num_; }
    const Den& den() const { return den_; }
    Poly den_poly() const { return rtr::den_poly(den_); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.empty(); }
    bool is_const() const { return den_.empty() && num_.is_const(); }
    Rational const_value() const { return num_.const_value(); }
    uint32_t var_mask() const;
    bool has_var(int v) const { return (var_mask() >> v) & 1u; }

    Frac operator-() const;
    friend Frac operator+(const Frac& a, const Frac& b);
    friend Frac operator-(const Frac& a, const Frac& b);
    friend Frac operator*(const Frac& a, const Frac& b);
    friend Frac operator/(const Frac& a, const Frac& b);
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }
    Frac& operator/=(const Frac& o) { return *this = *this / o; }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

    Frac scale(const Rational& c) const;
    Frac inv() const;
    Frac pow(int e) const;
    Frac subst(int v, const Frac& r) const;
    Frac subst(int v, const Poly& r) const;
    Frac deriv(int v) const;
    // injective renaming; out[old] = new or -1
    Frac rename(const std::vector<int>& map) const;
    // v -> -v
    Frac reflect(int v) const;

    RawFrac raw() const { return {num_, den_}; }

private:
    Poly num_;
    Den den_;
};

Frac sum_raw(const std::vector<RawFrac>& parts);
Frac sum_fracs(const std::vector<Frac>& parts);

// Canonical text "N/D" with atoms sorted by their text.
std::string to_string(const Frac& f);
std::string atom_string(int atom);

// Exponent of atom in f's denominator (0 if absent).
int den_exponent(const Frac& f, int atom);

}  // namespace rtr
