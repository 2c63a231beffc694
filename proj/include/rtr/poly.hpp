#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtr/vars.hpp"

namespace rtr {

using Rational = mpq_class;

// Packed exponent vector: byte 0 is the total degree, byte v+1 the exponent of
// variable v.  Comparing the words lexicographically gives graded-lex order.
struct Mono {
    uint64_t w[3] = {0, 0, 0};

    int deg() const { return int(w[0] >> 56); }
    int exp(int v) const {
        int b = v + 1;
        return int((w[b >> 3] >> (56 - 8 * (b & 7))) & 0xff);
    }
    void set_exp(int v, int e);
    bool is_one() const { return (w[0] | w[1] | w[2]) == 0; }
    bool divides(const Mono& o) const;
    uint32_t mask() const;

    friend bool operator==(const Mono& a, const Mono& b) {
        return a.w[0] == b.w[0] && a.w[1] == b.w[1] && a.w[2] == b.w[2];
    }
    friend bool operator!=(const Mono& a, const Mono& b) { return !(a == b); }
    // "greater" means earlier in a sorted polynomial
    friend bool operator>(const Mono& a, const Mono& b) {
        if (a.w[0] != b.w[0]) return a.w[0] > b.w[0];
        if (a.w[1] != b.w[1]) return a.w[1] > b.w[1];
        return a.w[2] > b.w[2];
    }
    friend bool operator<(const Mono& a, const Mono& b) { return b > a; }
};

Mono operator*(const Mono& a, const Mono& b);
Mono operator/(const Mono& a, const Mono& b);  // requires b | a

struct MonoHash {
    size_t operator()(const Mono& m) const {
        uint64_t h = m.w[0] * 0x9E3779B97F4A7C15ull;
        h ^= m.w[1] + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        h ^= m.w[2] + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
        return size_t(h);
    }
};

class Poly {
public:
    struct Term {
        Mono m;
        Rational c;
    };

    Poly() = default;
    Poly(long c);
    explicit Poly(const Rational& c);
    static Poly var(int id, int e = 1);
    static Poly monomial(const Mono& m, const Rational& c);
    static Poly from_sorted(std::vector<Term> t) {
        Poly p;
        p.t_ = std::move(t);
        return p;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_const() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Rational const_value() const;  // constant term
    size_t size() const { return t_.size(); }
    int degree(int v) const;
    int total_degree() const { return t_.empty() ? -1 : t_[0].m.deg(); }
    uint32_t var_mask() const;
    bool has_var(int v) const { return (var_mask() >> v) & 1u; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scale(const Rational& c) const;
    Poly mul_term(const Mono& m, const Rational& c) const;
    Poly pow(int e) const;

    // coefficients of v^k with v removed, index k
    std::vector<Poly> coeffs_in(int v) const;
    Poly subst(int v, const Poly& r) const;
    Poly deriv(int v) const;
    // out[old] = new id (or -1 to keep)
    Poly rename(const std::vector<int>& map) const;
    // v -> -v
    Poly reflect(int v) const;
    std::optional<Poly> divexact(const Poly& d) const;

    Rational content() const;  // positive; this/content has coprime integer coefficients
    // leading term in the canonical variable order
    const Term& canonical_lead() const;

    size_t hash() const;

private:
    std::vector<Term> t_;
};

Poly sum_polys(std::vector<Poly> ps);

std::string to_string(const Poly& p);
std::string to_string(const Rational& q);

// Evaluation mod the Mersenne prime 2^61-1. Returns false if a coefficient
// denominator vanishes mod p.
constexpr uint64_t kModP = (1ull << 61) - 1;
uint64_t mulmod(uint64_t a, uint64_t b);
uint64_t powmod(uint64_t a, uint64_t e);
uint64_t invmod(uint64_t a);
bool rat_mod(const Rational& q, uint64_t& out);
bool eval_mod(const Poly& p, const uint64_t* vals, uint64_t& out);

}  // namespace rtr
