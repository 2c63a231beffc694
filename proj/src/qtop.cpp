#include "rtr/qtop.hpp"

#include <functional>

namespace rtr {

bool check_qtop_consistency(RecursionEngine& e, int two_g, int arity) {
    return e.omega(two_g, arity, Flavor::QTop) == q_coeff(e.omega(two_g, arity, Flavor::Full), two_g);
}

Frac qtop_invariant_part(RecursionEngine& e, int two_g, int arity) {
    return invariant_part(e.omega(two_g, arity, Flavor::QTop), zvar(0));
}

Frac qtop_linear_loop_rhs(RecursionEngine& e, int two_g, int arity) {
    const SpectralCurve& c = e.curve();
    const int z0 = zvar(0);
    const int n = arity - 1;
    const unsigned full = (1u << n) - 1;
    Frac w2 = c.omega01(z0).scale(2);
    // factor (-Delta_0 varpi_{h, |S|+1}(z0, S) / (2 omega_{0,1})) for a slot set S
    std::map<std::pair<int, unsigned>, Frac> fac;
    auto factor = [&](int h, unsigned mask) -> const Frac& {
        auto it = fac.find({h, mask});
        if (it != fac.end()) return it->second;
        std::vector<int> slots{z0};
        for (int j = 0; j < n; ++j)
            if ((mask >> j) & 1u) slots.push_back(zvar(j + 1));
        Frac w = e.instantiate(h, (int)slots.size(), Flavor::QTop, slots);
        return fac[{h, mask}] = -anti_part(w, z0) / w2;
    };
    // ordered k-tuples (h_i, S_i) with sum h_i = two_g - 1 and disjoint union S = J
    std::vector<Frac> acc;
    std::function<void(int, unsigned, int, Frac)> rec = [&](int left, unsigned avail, int k, Frac prod) {
        if (left == 0 && avail == 0 && k > 0) {
            acc.push_back(prod.scale(Rational(1) / k));
        }
        for (int h = 0; h <= left; ++h) {
            // subsets of avail
            for (unsigned s = avail;; s = (s - 1) & avail) {
                bool ok = !(h == 0 && s == 0);
                if (ok) rec(left - h, avail & ~s, k + 1, prod * factor(h, s));
                if (s == 0) break;
            }
        }
    };
    if (two_g >= 1) rec(two_g - 1, full, 0, Frac(1));
    Frac inner = sum_fracs(acc);
    return inner.deriv(z0);
}

namespace {

// sigma-invariant Frac in t as N(u)/D(u) with u = t^2
Poly even_to_u(const Poly& p, int t, int u) {
    auto cs = p.coeffs_in(t);
    std::vector<Poly> parts;
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        if (k % 2) throw DescentFailure("odd power of the chart variable");
        parts.push_back(cs[k] * Poly::var(u, (int)k / 2));
    }
    return sum_polys(parts);
}

}  // namespace

Frac descend(const SpectralCurve& c, const Frac& f) {
    const int t = tvar(), u = uvar(), x = xvar();
    if (f.reflect(t) != f) throw DescentFailure("function is not sigma-invariant");
    auto split = [&](const Frac& g) {
        Poly n = g.num(), d = g.den_poly();
        if (d.reflect(t) != d) {  // odd denominator: multiply through by t
            n = n * Poly::var(t);
            d = d * Poly::var(t);
        }
        return std::make_pair(even_to_u(n, t, u), even_to_u(d, t, u));
    };
    auto [xn, xd] = split(c.x());
    if (xn.degree(u) > 1 || xd.degree(u) > 1) throw DescentFailure("x is not a degree-two cover in the chart");
    auto a = xn.coeffs_in(u), b = xd.coeffs_in(u);
    a.resize(2);
    b.resize(2);
    // x = (a1 u + a0)/(b1 u + b0)  =>  u = (b0 x - a0)/(a1 - b1 x)
    Frac X = Frac::var(x);
    Frac uinv = (Frac(b[0]) * X - Frac(a[0])) / (Frac(a[1]) - Frac(b[1]) * X);
    auto [fn, fd] = split(f);
    return Frac(fn).subst(u, uinv) / Frac(fd).subst(u, uinv);
}

WKBData wkb_coefficients(RecursionEngine& e, int kmax) {
    const SpectralCurve& c = e.curve();
    const int z0 = zvar(0), t = tvar();
    WKBData w;
    w.kmax = kmax;
    Frac xp = c.dx_in(z0);
    for (int k = -1; k <= kmax; ++k) w.S.push_back(e.omega(k + 1, 1, Flavor::QTop) / xp);
    auto S = [&](int k) -> const Frac& { return w.S[k + 1]; };
    for (int k = 0; k <= kmax; ++k) {
        std::vector<Frac> parts;
        for (int i = -1; i <= k - 1; ++i) {
            int j = k - 2 - i;
            if (j < -1) continue;
            parts.push_back(S(i) * S(j));
        }
        if (k >= 1) parts.push_back(S(k - 2).deriv(z0) / xp);
        Frac Qk = sum_fracs(parts);
        w.Q.push_back(Qk);
        w.invariant.push_back(Qk.reflect(z0) == Qk);

        Frac direct;
        Frac W = c.omega01(z0);
        if (k == 0) {
            if (c.has_relation()) {
                Frac A = c.rel_a().subst(xvar(), c.x_in(z0)), B = c.rel_b().subst(xvar(), c.x_in(z0)),
                     C = c.rel_c().subst(xvar(), c.x_in(z0));
                direct = (B * B - (A * C).scale(4)) / (A * A).scale(4);
            } else {
                direct = (W / xp) * (W / xp);
            }
        } else if (k == 1) {
            direct = W * c.mu_eta(z0) / (xp * xp);
        } else {
            std::vector<Frac> res;
            Frac ker = c.eta_var(z0, t) / c.omega01(t).scale(2);
            for (auto& T : e.rec_terms(k, 1, Flavor::QTop, t))
                for (auto& p : c.ptilde_plus()) res.push_back(residue_at(ker * T, t, Point::finite(p.at)));
            direct = W.scale(2) * sum_fracs(res) / (xp * xp);
        }
        w.Qdirect.push_back(direct);
        w.residual_zero.push_back(direct == Qk);
    }
    return w;
}

QuantumCurve emit_quantum_curve(const SpectralCurve& c, const WKBData& w) {
    QuantumCurve q;
    const int t = tvar(), z0 = zvar(0);
    std::vector<int> map(kMaxVars, -1);
    map[z0] = t;
    for (auto& Qk : w.Q) {
        Frac ft = Qk.rename(map);
        Frac qb = descend(c, ft);
        q.qbar.push_back(qb);
        q.lift_ok.push_back(qb.subst(xvar(), c.x()) == ft);
    }
    return q;
}

std::string QuantumCurve::operator_line() const {
    std::string s = "Δŷ²";
    for (size_t l = 0; l < qbar.size(); ++l) {
        if (qbar[l].is_zero()) continue;
        std::string q = to_string(qbar[l]);
        bool simple = qbar[l].is_poly() && qbar[l].num().size() == 1 && q[0] != '-';
        if (!simple) q = "(" + q + ")";
        s += " − ";
        if (l == 1) s += "ε₁·";
        else if (l > 1) s += "ε₁^" + std::to_string(l) + "·";
        s += q;
    }
    return s;
}

}  // namespace rtr
