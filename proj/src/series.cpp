#include "rtr/series.hpp"

#include <algorithm>

namespace rtr {

std::string to_string(const Point& p) { return p.inf ? std::string("oo") : to_string(p.at); }

namespace {

// Taylor coefficients of p(a + s) in s, indices 0..n-1.
std::vector<Poly> taylor(const Poly& p, int v, const Poly& a, int n) {
    std::vector<Poly> cs = p.coeffs_in(v);
    std::vector<Poly> out(std::max(n, 0));
    if (n <= 0) return out;
    if (a.is_zero()) {
        for (int k = 0; k < n && k < (int)cs.size(); ++k) out[k] = cs[k];
        return out;
    }
    int used = 0;  // number of live entries in out
    for (int k = (int)cs.size() - 1; k >= 0; --k) {
        // out <- out*(a+s) + cs[k]
        int top = std::min(used, n - 1);
        for (int j = top; j >= 0; --j) {
            Poly nj = out[j] * a;
            if (j > 0) nj += out[j - 1];
            out[j] = std::move(nj);
        }
        if (used < n) ++used;
        out[0] += cs[k];
    }
    return out;
}

Poly rev(const Poly& p, int v) {
    auto cs = p.coeffs_in(v);
    int d = (int)cs.size() - 1;
    Poly r;
    for (int k = 0; k <= d; ++k)
        if (!cs[k].is_zero()) r += cs[k] * Poly::var(v, d - k);
    return r;
}

// f(1/w) with w reusing the variable v
Frac invert_var(const Frac& f, int v) {
    if (!f.has_var(v)) return f;
    int p = -f.num().degree(v);
    Poly n = rev(f.num(), v);
    Rational sc = 1;
    Den d;
    for (auto& [a, e] : f.den()) {
        const Poly& A = atom_poly(a);
        if (!A.has_var(v)) {
            d = den_mul(d, Den{{a, e}});
            continue;
        }
        p += e * A.degree(v);
        Poly r = rev(A, v);
        if (r.is_const()) {
            for (int i = 0; i < e; ++i) sc *= r.const_value();
            continue;
        }
        auto [c, m] = make_monic(r);
        for (int i = 0; i < e; ++i) sc *= c;
        d = den_mul(d, Den{{intern_atom(m), e}});
    }
    if (p > 0) n = n * Poly::var(v, p);
    if (p < 0) d = den_mul(d, Den{{intern_atom(Poly::var(v)), -p}});
    return Frac::canonical(n.scale(1 / sc), d);
}

struct RawExp {
    int low = 0;
    std::vector<RawFrac> co;  // co[k] multiplies s^(low+k)
};

std::vector<Poly> convolve(const std::vector<Poly>& x, const std::vector<Poly>& y, int n) {
    std::vector<Poly> out(n);
    for (int k = 0; k < n; ++k) {
        std::vector<Poly> parts;
        for (int j = 0; j <= k; ++j) {
            if (j >= (int)x.size() || k - j >= (int)y.size()) continue;
            if (x[j].is_zero() || y[k - j].is_zero()) continue;
            parts.push_back(x[j] * y[k - j]);
        }
        out[k] = sum_polys(std::move(parts));
    }
    return out;
}

Poly den_cofactor(const Den& full, const Den& part) {
    Poly r(1);
    for (auto& [a, e] : full) {
        int have = 0;
        for (auto& [b, k] : part)
            if (b == a) have = k;
        if (e > have) r = r * atom_pow(a, e - have);
    }
    return r;
}

int vanishing_order(const Frac& f, int v, const Poly& a, Rational& scale) {
    int M = 0;
    for (auto& [at, e] : f.den()) {
        const Poly& A = atom_poly(at);
        if (!A.has_var(v)) continue;
        Poly u0 = A.subst(v, a);
        if (!u0.is_zero()) continue;
        if (A.degree(v) != 1) throw UnsupportedPoint("vanishing atom of degree > 1");
        Poly c1 = A.coeffs_in(v)[1];
        if (!c1.is_const()) throw UnsupportedPoint("vanishing atom with non-constant slope");
        M += e;
        for (int i = 0; i < e; ++i) scale /= c1.const_value();
    }
    return M;
}

// First n coefficients (from s^-M upward) of f(a+s).
RawExp raw_expand(const Frac& f, int v, const Poly& a, int n) {
    RawExp out;
    Rational C = 1;
    int M = vanishing_order(f, v, a, C);
    out.low = -M;
    if (n <= 0) return out;

    Den base;
    std::vector<std::vector<Poly>> series;
    series.push_back(taylor(f.num(), v, a, n));
    struct AtomSer {
        std::vector<Poly> q;
        Factored fu;
        int e;
    };
    std::vector<AtomSer> atoms;
    for (auto& [at, e] : f.den()) {
        const Poly& A = atom_poly(at);
        if (!A.has_var(v)) {
            base = den_mul(base, Den{{at, e}});
            continue;
        }
        std::vector<Poly> u = taylor(A, v, a, n + 1);
        if (u[0].is_zero()) continue;  // handled by vanishing_order
        AtomSer s;
        s.e = e;
        s.fu = factor(u[0]);
        const Poly& u0 = u[0];
        bool linear = A.degree(v) == 1;
        // coefficient k of A^-e is q[k] / u0^(e+k)
        s.q.assign(n, Poly());
        if (linear) {
            Poly u1p(1);
            mpz_class binom = 1;  // C(e+k-1, k)
            for (int k = 0; k < n; ++k) {
                if (k > 0) {
                    binom = binom * (e + k - 1) / k;
                    u1p = u1p * u[1];
                }
                Poly t = u1p.scale(Rational(binom));
                s.q[k] = (k % 2) ? -t : t;
            }
        } else {
            std::vector<Poly> p(n);
            std::vector<Poly> u0pow(n + 1);
            u0pow[0] = Poly(1);
            for (int j = 1; j <= n; ++j) u0pow[j] = u0pow[j - 1] * u0;
            p[0] = Poly(1);
            for (int k = 1; k < n; ++k) {
                std::vector<Poly> parts;
                for (int j = 1; j <= k; ++j)
                    if (!u[j].is_zero() && !p[k - j].is_zero()) parts.push_back(u[j] * u0pow[j - 1] * p[k - j]);
                p[k] = -sum_polys(std::move(parts));
            }
            std::vector<Poly> acc = p;
            for (int i = 1; i < e; ++i) acc = convolve(acc, p, n);
            s.q = std::move(acc);
        }
        atoms.push_back(std::move(s));
    }

    Den L;
    for (auto& s : atoms) L = den_max(L, s.fu.f);
    Poly Lp = den_poly(L);
    Den fixed = base;
    Rational K = C;
    for (auto& s : atoms) {
        Poly cof = den_cofactor(L, s.fu.f).scale(1 / s.fu.c);
        Poly cp(1);
        for (int k = 0; k < n; ++k) {
            if (k > 0) cp = cp * cof;
            if (k > 0) s.q[k] = s.q[k] * cp;
        }
        for (int i = 0; i < s.e; ++i) K /= s.fu.c;
        Den fe = s.fu.f;
        for (auto& pr : fe) pr.second *= s.e;
        fixed = den_mul(fixed, fe);
        series.push_back(std::move(s.q));
    }
    if (!L.empty()) {
        Poly lp(1);
        for (int k = 1; k < n; ++k) {
            lp = lp * Lp;
            series[0][k] = series[0][k] * lp;
        }
    }
    std::vector<Poly> prod = series[0];
    for (size_t i = 1; i < series.size(); ++i) prod = convolve(prod, series[i], n);
    out.co.resize(n);
    for (int k = 0; k < n; ++k) {
        Den d = fixed;
        if (k > 0 && !L.empty()) {
            Den lk = L;
            for (auto& pr : lk) pr.second *= k;
            d = den_mul(d, lk);
        }
        out.co[k] = RawFrac{prod[k].scale(K), d};
    }
    return out;
}

Laurent expand_impl(const Frac& f, int v, const Point& c, int order, bool diff) {
    Laurent L;
    L.var = v;
    L.center = c;
    L.trunc = order;
    Frac g = f;
    Poly a = c.at;
    if (c.inf) {
        g = invert_var(f, v);
        if (diff) g = -g * Frac::ratio(Poly(1), Poly::var(v, 2));
        a = Poly();
    } else if (c.at.has_var(v)) {
        throw UnsupportedPoint("center depends on the expansion variable");
    }
    if (g.is_zero()) {
        L.low = order + 1;
        return L;
    }
    Rational dummy = 1;
    int M = vanishing_order(g, v, a, dummy);
    int n = order + M + 1;
    RawExp r = raw_expand(g, v, a, n);
    L.low = r.low;
    for (auto& rf : r.co) L.c.push_back(Frac::canonical(rf));
    // drop leading zeros
    size_t z = 0;
    while (z < L.c.size() && L.c[z].is_zero()) ++z;
    if (z == L.c.size()) {
        L.c.clear();
        L.low = order + 1;
    } else if (z > 0) {
        L.c.erase(L.c.begin(), L.c.begin() + z);
        L.low += (int)z;
    }
    return L;
}

}  // namespace

bool Laurent::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Frac& x) { return x.is_zero(); });
}

Frac Laurent::resum() const {
    Frac s = center.inf ? Frac::ratio(Poly(1), Poly::var(var)) : Frac(Poly::var(var) - center.at);
    std::vector<Frac> parts;
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) parts.push_back(c[i] * s.pow(low + (int)i));
    return sum_fracs(parts);
}

Laurent laurent_expand(const Frac& f, int v, const Point& c, int order) { return expand_impl(f, v, c, order, false); }

Laurent laurent_expand_diff(const Frac& f, int v, const Point& c, int order) {
    return expand_impl(f, v, c, order, true);
}

Frac residue_at(const Frac& f, int v, const Point& c) {
    if (!f.has_var(v)) {
        if (!c.inf || f.is_zero()) return Frac();
        // constant times dv has a double pole at infinity, no residue
        return Frac();
    }
    Frac g = f;
    Poly a = c.at;
    if (c.inf) {
        g = -invert_var(f, v) * Frac::ratio(Poly(1), Poly::var(v, 2));
        a = Poly();
    } else if (c.at.has_var(v)) {
        throw UnsupportedPoint("center depends on the residue variable");
    }
    Rational dummy = 1;
    int M = vanishing_order(g, v, a, dummy);
    if (M == 0) return Frac();
    RawExp r = raw_expand(g, v, a, M);
    return Frac::canonical(r.co[M - 1]);
}

int valuation(const Frac& f, int v, const Point& c, int max_order) {
    if (f.is_zero()) return max_order;
    Frac g = c.inf ? invert_var(f, v) : f;
    Poly a = c.inf ? Poly() : c.at;
    Rational dummy = 1;
    int M = vanishing_order(g, v, a, dummy);
    if (M > 0) return -M;
    auto t = taylor(g.num(), v, a, g.num().degree(v) + 1);
    for (int k = 0; k < (int)t.size(); ++k)
        if (!t[k].is_zero()) return std::min(k, max_order);
    return max_order;
}

std::vector<std::pair<Poly, int>> finite_poles(const Frac& f, int v) {
    std::vector<std::pair<Poly, int>> out;
    for (auto& [a, e] : f.den()) {
        const Poly& A = atom_poly(a);
        if (!A.has_var(v)) continue;
        if (A.degree(v) != 1)
            throw UnsupportedFactorization("irreducible factor " + to_string(A) + " of degree > 1 in " + var_name(v));
        auto cs = A.coeffs_in(v);
        if (!cs[1].is_const())
            throw UnsupportedPoint("pole of " + to_string(A) + " is not polynomial in the other symbols");
        out.emplace_back((-cs[0]).scale(1 / cs[1].const_value()), e);
    }
    return out;
}

PartialFractions partial_fractions(const Frac& f, int v) {
    PartialFractions pf;
    std::vector<Frac> parts{f};
    for (auto& [p, e] : finite_poles(f, v)) {
        Laurent L = laurent_expand(f, v, Point::finite(p), -1);
        Frac s(Poly::var(v) - p);
        for (int k = -e; k <= -1; ++k) {
            Frac ck = L.coeff(k);
            if (ck.is_zero()) continue;
            pf.terms.push_back({p, -k, ck});
            parts.push_back(-(ck * s.pow(k)));
        }
    }
    pf.poly_part = sum_fracs(parts);
    return pf;
}

Frac reconstruct(const PartialFractions& pf, int v) {
    std::vector<Frac> parts{pf.poly_part};
    for (auto& t : pf.terms) parts.push_back(t.coeff * Frac(Poly::var(v) - t.pole).pow(-t.order));
    return sum_fracs(parts);
}

Laurent local_antiderivative(const Frac& f, int v, const Point& c, int order) {
    Laurent d = laurent_expand_diff(f, v, c, order - 1);
    if (!d.coeff(-1).is_zero()) throw NoRationalPrimitive("nonzero residue " + to_string(d.coeff(-1)) + " at " + to_string(c));
    Laurent F;
    F.var = v;
    F.center = c;
    F.trunc = order;
    F.low = d.low + 1;
    for (size_t i = 0; i < d.c.size(); ++i) {
        int k = d.low + (int)i;  // s^k ds -> s^(k+1)/(k+1)
        F.c.push_back(k == -1 ? Frac() : d.c[i].scale(Rational(1) / (k + 1)));
    }
    size_t z = 0;
    while (z < F.c.size() && F.c[z].is_zero()) ++z;
    F.c.erase(F.c.begin(), F.c.begin() + z);
    F.low += (int)z;
    return F;
}

}  // namespace rtr
