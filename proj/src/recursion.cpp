#include "rtr/recursion.hpp"

#include <bit>
#include <random>

namespace rtr {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Full: return "full";
        case Flavor::QTop: return "qtop";
        case Flavor::Unrefined: return "unrefined";
    }
    return "?";
}

Frac q_coeff(const Frac& f, int k) {
    const int q = qvar();
    for (auto& [a, e] : f.den())
        if ((atom_mask(a) >> q) & 1u) throw std::runtime_error("Q in a denominator");
    auto cs = f.num().coeffs_in(q);
    if (k < 0 || k >= (int)cs.size()) return Frac();
    return Frac::canonical(cs[k], f.den());
}

int q_degree(const Frac& f) {
    if (f.is_zero()) return -1;
    return f.num().degree(qvar());
}

RecursionEngine::RecursionEngine(const SpectralCurve& c) : curve_(c) {
    for (Flavor fl : {Flavor::Full, Flavor::QTop}) {
        store_[{0, 1, fl}] = curve_.omega01(zvar(0));
        store_[{0, 2, fl}] = curve_.omega02(zvar(0), zvar(1));
    }
    Frac wh = curve_.omega_half1(zvar(0));
    store_[{1, 1, Flavor::Full}] = wh;
    store_[{1, 1, Flavor::QTop}] = q_coeff(wh, 1);
}

bool RecursionEngine::has(int two_g, int arity, Flavor fl) const { return store_.count({two_g, arity, fl}) > 0; }

void RecursionEngine::put(int two_g, int arity, Flavor fl, const Frac& f) {
    store_[{two_g, arity, fl}] = f;
    for (auto it = inst_.begin(); it != inst_.end();) {
        if (it->first.first.two_g == two_g && it->first.first.arity == arity && it->first.first.flavor == fl)
            it = inst_.erase(it);
        else
            ++it;
    }
}

const Frac& RecursionEngine::omega(int two_g, int arity, Flavor fl) {
    if (fl == Flavor::Unrefined) throw MissingDependency("unrefined entries live in the oracle");
    if (two_g < 0 || arity < 1) throw MissingDependency("invalid (2g, n+1)");
    auto it = store_.find({two_g, arity, fl});
    if (it != store_.end()) return it->second;
    if (level(two_g, arity) < 0) throw MissingDependency("unstable entry not preloaded");
    Frac f = compute(two_g, arity, fl);
    return store_[{two_g, arity, fl}] = std::move(f);
}

Frac RecursionEngine::instantiate(int two_g, int arity, Flavor fl, const std::vector<int>& slots) {
    std::pair<StoreKey, std::vector<int>> key{{two_g, arity, fl}, slots};
    auto it = inst_.find(key);
    if (it != inst_.end()) return it->second;
    Frac e = omega(two_g, arity, fl);
    std::vector<int> map(kMaxVars, -1);
    for (int i = 0; i < arity; ++i) {
        int first = i;
        for (int k = 0; k < i; ++k)
            if (slots[k] == slots[i]) {
                first = k;
                break;
            }
        if (first != i) e = e.subst(zvar(i), Poly::var(zvar(first)));
        else map[zvar(i)] = slots[i];
    }
    e = e.rename(map);
    inst_[key] = e;
    return e;
}

const Frac& RecursionEngine::cross_factor(int pvar, int zj) {
    auto it = cross_.find({pvar, zj});
    if (it != cross_.end()) return it->second;
    Frac d = curve_.x_in(pvar) - curve_.x_in(zj);
    Frac c = curve_.dx_in(pvar) * curve_.dx_in(zj) / (d * d);
    return cross_[{pvar, zj}] = c;
}

std::vector<Frac> RecursionEngine::rec_terms(int two_g, int arity, Flavor fl, int p) {
    const int n = arity - 1;
    const unsigned full = (1u << n) - 1;
    std::vector<Frac> terms;
    auto slots_of = [&](unsigned mask) {
        std::vector<int> s{p};
        for (int j = 0; j < n; ++j)
            if ((mask >> j) & 1u) s.push_back(zvar(j + 1));
        return s;
    };
    for (unsigned mask = 0; mask <= full; ++mask) {
        unsigned rest = full & ~mask;
        int a1 = 1 + std::popcount(mask), a2 = 1 + std::popcount(rest);
        for (int g1 = 0; g1 <= two_g; ++g1) {
            int g2 = two_g - g1;
            if ((g1 == 0 && a1 == 1) || (g2 == 0 && a2 == 1)) continue;
            auto l = std::make_pair(g1, mask), r = std::make_pair(g2, rest);
            if (r < l) continue;
            Frac f = instantiate(g1, a1, fl, slots_of(mask)) * instantiate(g2, a2, fl, slots_of(rest));
            if (l != r) f = f.scale(2);
            if (!f.is_zero()) terms.push_back(std::move(f));
        }
    }
    for (int j = 1; j <= n; ++j) {
        if (two_g == 0 && n == 1) break;  // would need omega_{0,1}
        Frac f = cross_factor(p, zvar(j)) * instantiate(two_g, n, fl, slots_of(full & ~(1u << (j - 1))));
        if (!f.is_zero()) terms.push_back(std::move(f));
    }
    if (fl == Flavor::Full && two_g >= 2) {
        std::vector<int> s{p, p};
        for (int j = 1; j <= n; ++j) s.push_back(zvar(j));
        Frac f = instantiate(two_g - 2, arity + 1, fl, s);
        if (!f.is_zero()) terms.push_back(std::move(f));
    }
    if (two_g >= 1 && !(two_g == 1 && n == 0)) {
        Frac w = instantiate(two_g - 1, arity, fl, slots_of(full));
        Frac xp = curve_.dx_in(p);
        Frac f = (w / xp).deriv(p) * xp;
        if (fl == Flavor::Full) f *= Frac::var(qvar());
        if (!f.is_zero()) terms.push_back(std::move(f));
    }
    return terms;
}

Frac RecursionEngine::rec(int two_g, int arity, Flavor fl, int pvar) {
    return sum_fracs(rec_terms(two_g, arity, fl, pvar));
}

namespace {

bool frac_mod(const Frac& f, const uint64_t* vals, uint64_t& out) {
    uint64_t n, d = 1;
    if (!eval_mod(f.num(), vals, n)) return false;
    for (auto& [a, e] : f.den()) {
        uint64_t v;
        if (!eval_mod(atom_poly(a), vals, v) || v == 0) return false;
        d = mulmod(d, powmod(v, e));
    }
    out = mulmod(n, invmod(d));
    return true;
}

bool sum_mod(const std::vector<Frac>& fs, const uint64_t* vals, uint64_t& out) {
    uint64_t acc = 0;
    for (auto& f : fs) {
        uint64_t v;
        if (!frac_mod(f, vals, v)) return false;
        acc += v;
        if (acc >= kModP) acc -= kModP;
    }
    out = acc;
    return true;
}

// rec1 == rec2 at random points mod p; two admissible samples.
bool agree_mod(const std::vector<Frac>& plus1, const std::vector<Frac>& minus, const Frac& rec2, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int good = 0;
    for (int tries = 0; tries < 16 && good < 2; ++tries) {
        uint64_t vals[kMaxVars];
        for (auto& v : vals) v = rng() % kModP;
        uint64_t a, b, r;
        if (!sum_mod(plus1, vals, a) || !sum_mod(minus, vals, b) || !frac_mod(rec2, vals, r)) continue;
        if ((a + kModP - b) % kModP != r) return false;
        ++good;
    }
    return good == 2;
}

}  // namespace

RecursionEngine::Paths RecursionEngine::evaluate(const std::vector<Frac>& terms, int arity, bool exact) {
    const int t = tvar(), z0 = zvar(0);
    Frac K = curve_.eta_var(z0, t) / (curve_.omega01(t).scale(4));
    Frac w0 = curve_.omega01(z0).scale(2);
    std::vector<Poly> splus;
    for (int j = 1; j < arity; ++j) splus.push_back(Poly::var(zvar(j)));
    for (auto& p : curve_.ptilde_plus()) splus.push_back(p.at);

    std::vector<Frac> first, plus, plus1, minus;
    for (auto& T : terms) {
        Frac F = K * T;
        first.push_back(-T.subst(t, Poly::var(z0)) / w0);
        for (auto& a : splus) plus.push_back(residue_at(F, t, Point::finite(a)));
        if (!cross_check_ && !exact) continue;
        for (auto& [pole, ord] : finite_poles(F, t)) {
            Frac r = residue_at(F, t, Point::finite(pole));
            bool in_plus = pole == Poly::var(z0) || std::find(splus.begin(), splus.end(), pole) != splus.end();
            (in_plus ? plus1 : minus).push_back(r);
        }
        minus.push_back(residue_at(F, t, Point::infinity()));
    }
    Paths out;
    out.rec2 = sum_fracs(first) + sum_fracs(plus).scale(2);
    if (exact) {
        out.rec1 = sum_fracs(plus1) - sum_fracs(minus);
        out.agree = *out.rec1 == out.rec2;
    } else if (cross_check_) {
        out.agree = agree_mod(plus1, minus, out.rec2, 0x9e3779b97f4a7c15ull ^ terms.size() ^ (uint64_t(arity) << 32));
    }
    return out;
}

Frac RecursionEngine::compute(int two_g, int arity, Flavor fl) {
    auto terms = rec_terms(two_g, arity, fl, tvar());
    Paths p = evaluate(terms, arity);
    if (cross_check_) checks_.push_back({{two_g, arity, fl}, p.agree});
    if (!p.agree)
        throw RecursionMismatch("recursion 1 and recursion 2 disagree at (2g,n+1)=(" + std::to_string(two_g) + "," +
                                std::to_string(arity) + ") " + flavor_name(fl));
    return p.rec2;
}

}  // namespace rtr
