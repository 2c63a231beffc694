#include "rtr/free_energy.hpp"

#include "rtr/oracle.hpp"

namespace rtr {

namespace {

int diff_valuation(const Frac& f, int v, const Point& r) {
    return r.inf ? valuation(f, v, r) - 2 : valuation(f, v, r);
}

// -Res_{v=r} I_r[f] * g dv
Frac by_parts(const Frac& f, const Frac& g, int v, const Point& r) {
    int lf = diff_valuation(f, v, r);
    if (lf >= 0) return Frac();
    int ilow = lf + 1;
    Laurent gd = laurent_expand_diff(g, v, r, -1 - ilow);
    if (gd.is_zero()) {
        if (!residue_at(f, v, r).is_zero()) throw ResiduePresent("nonzero residue at " + to_string(r));
        return Frac();
    }
    int itrunc = std::max(-1 - gd.low, ilow);
    Laurent I;
    try {
        I = local_antiderivative(f, v, r, itrunc);
    } catch (const NoRationalPrimitive& e) {
        throw ResiduePresent(e.what());
    }
    return -residue_of_product(I, gd);
}

}  // namespace

Frac pairing_with_primitive(const SpectralCurve& c, const Frac& f, int v, const std::vector<Point>& poles,
                            const PrimitiveSpec& spec) {
    Frac W = c.omega01(v);
    std::vector<Frac> parts;
    for (auto& r : poles) {
        if (diff_valuation(W, v, r) < 0) throw std::runtime_error("contour touches a pole of omega_{0,1} at " + to_string(r));
        parts.push_back(by_parts(f, W, v, r));
    }
    Frac out = sum_fracs(parts);
    if (spec.alpha) out += u_pairing(c, f, v, poles, *spec.alpha);
    return out;
}

Frac u_pairing(const SpectralCurve& c, const Frac& f, int v, const std::vector<Point>& poles, const Frac& alpha) {
    Frac dlog = c.dx_in(v) / c.x_in(v);
    std::vector<Frac> parts;
    for (auto& r : poles) parts.push_back(by_parts(f, dlog, v, r));
    return sum_fracs(parts) * alpha;
}

std::vector<Point> contour_poles(const SpectralCurve& c, const Frac& f, int v) {
    Frac W = c.omega01(v);
    std::vector<Point> cand;
    for (auto& [p, e] : finite_poles(f, v)) cand.push_back(Point::finite(p));
    if (diff_valuation(f, v, Point::infinity()) < 0) cand.push_back(Point::infinity());
    std::vector<Point> out;
    for (auto& r : cand) {
        bool skip = false;
        for (auto& rp : c.ramification())
            if (rp.at == r && !rp.effective) skip = true;
        if (!skip && diff_valuation(W, v, r) < 0) skip = true;
        if (!skip) out.push_back(r);
    }
    return out;
}

DilatonResult check_dilaton(RecursionEngine& e, int two_g, int n, const PrimitiveSpec& spec) {
    const SpectralCurve& c = e.curve();
    const int t = tvar();
    std::vector<int> slots{t};
    for (int i = 0; i <= n; ++i) slots.push_back(zvar(i));
    Frac big = e.instantiate(two_g, n + 2, Flavor::Full, slots);
    DilatonResult r;
    r.rhs = pairing_with_primitive(c, big, t, contour_poles(c, big, t), spec);
    // (2 - 2g - n - 1) with 2g = two_g
    int coef = 1 - two_g - n;
    if (coef == 0) r.lhs = Frac();
    else r.lhs = e.omega(two_g, n + 1).scale(coef);
    r.pass = r.lhs == r.rhs;
    return r;
}

std::vector<Point> free_energy_poles(const SpectralCurve& c) {
    std::vector<Point> out = c.effective_points();
    for (auto& p : c.ptilde())
        if (p.plus && p.order > 0) out.push_back(Point::finite(-p.at));
    return out;
}

Frac free_energy(RecursionEngine& e, int two_g, const PrimitiveSpec& spec) {
    if (two_g <= 2) throw std::runtime_error("F_g is only defined here for g > 1");
    const int z = zvar(0);
    Frac w = e.omega(two_g, 1);
    Frac p = pairing_with_primitive(e.curve(), w, z, free_energy_poles(e.curve()), spec);
    return p.scale(Rational(2) / (4 - 2 * two_g));
}

}  // namespace rtr
