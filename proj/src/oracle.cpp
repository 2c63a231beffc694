#include "rtr/oracle.hpp"

#include <algorithm>

namespace rtr {

Frac residue_of_product(const Laurent& a, const Laurent& b) {
    std::vector<Frac> parts;
    for (int i = a.low; i <= a.trunc; ++i) {
        Frac ai = a.coeff(i);
        if (ai.is_zero()) continue;
        Frac bj = b.coeff(-1 - i);
        if (!bj.is_zero()) parts.push_back(ai * bj);
    }
    return sum_fracs(parts);
}

UnrefinedOracle::UnrefinedOracle(const SpectralCurve& c) : curve_(c) {}

// omega_{g,k}(vars...) with vars possibly repeated
Frac UnrefinedOracle::piece(int g, const std::vector<int>& vars) {
    int k = (int)vars.size();
    Frac base;
    if (g == 0 && k == 2) base = curve_.omega02(zvar(0), zvar(1));
    else base = omega(g, k);
    // collapse repeated slots, then rename simultaneously
    Frac out = base;
    std::vector<int> map(kMaxVars, -1);
    for (int i = 0; i < k; ++i) {
        auto f = std::find(vars.begin(), vars.begin() + i, vars[i]);
        if (f != vars.begin() + i) out = out.subst(zvar(i), Frac::var(zvar(int(f - vars.begin()))));
        else map[zvar(i)] = vars[i];
    }
    return out.rename(map);
}

const Frac& UnrefinedOracle::omega(int g, int arity) {
    auto key = std::make_pair(g, arity);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (2 * g - 2 + arity - 1 < 0) throw std::runtime_error("oracle: unstable request");
    const int t = tvar();
    const int n = arity - 1;
    std::vector<int> J;
    for (int j = 1; j <= n; ++j) J.push_back(zvar(j));

    std::vector<Frac> rec;
    for (int g1 = 0; g1 <= g; ++g1) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> a{t}, b{t};
            for (int j = 0; j < n; ++j) (((mask >> j) & 1u) ? a : b).push_back(J[j]);
            int g2 = g - g1;
            if ((g1 == 0 && a.size() == 1) || (g2 == 0 && b.size() == 1)) continue;
            rec.push_back(piece(g1, a) * piece(g2, b));
        }
    }
    for (int j = 0; j < n; ++j) {
        if (g == 0 && n == 1) break;
        std::vector<int> a{t};
        for (int k = 0; k < n; ++k)
            if (k != j) a.push_back(J[k]);
        Frac xt = curve_.x_in(t), xj = curve_.x_in(J[j]);
        rec.push_back(curve_.dx_in(t) * curve_.dx_in(J[j]) / ((xt - xj) * (xt - xj)) * piece(g, a));
    }
    if (g >= 1) {
        std::vector<int> a{t, t};
        for (int v : J) a.push_back(v);
        if (g == 1 && n == 0) rec.push_back(curve_.omega02(t, zvar(1)).subst(zvar(1), Frac::var(t)));
        else rec.push_back(piece(g - 1, a));
    }
    Frac R = sum_fracs(rec);
    Frac Rs = (R + R.reflect(t)).scale(Rational(1, 2));
    Frac kern = (Frac::ratio(Poly(1), Poly::var(zvar(0)) - Poly::var(t)) -
                 Frac::ratio(Poly(1), Poly::var(zvar(0)) + Poly::var(t))) /
                curve_.omega01(t).scale(4);
    Frac integrand = kern * Rs;
    std::vector<Frac> res;
    for (auto& r : curve_.ramification())
        if (r.effective) res.push_back(residue_at(integrand, t, r.at));
    return memo_[key] = -sum_fracs(res);
}

Frac UnrefinedOracle::free_energy(int g) {
    if (g < 2) throw std::runtime_error("oracle: F_g needs g >= 2");
    const int z = zvar(0);
    Frac w = omega(g, 1);
    Frac W = curve_.omega01(z);
    std::vector<Frac> parts;
    for (auto& r : curve_.ramification()) {
        if (!r.effective) continue;
        Laurent om = laurent_expand_diff(w, z, r.at, -1);
        int need = -1 - om.low;
        Laurent phi = local_antiderivative(W, z, r.at, std::max(need, 1));
        parts.push_back(residue_of_product(phi, om));
    }
    return sum_fracs(parts).scale(Rational(1) / (2 - 2 * g));
}

}  // namespace rtr
