#include "rtr/validator.hpp"

#include "rtr/free_energy.hpp"
#include "rtr/qtop.hpp"

namespace rtr {

std::string genus_text(int two_g) { return two_g % 2 ? std::to_string(two_g) + "/2" : std::to_string(two_g / 2); }

std::string CheckReport::line() const {
    std::string s = "check=" + name + " target=(" + genus_text(two_g) + "," + std::to_string(arity) + ") flavor=" +
                    flavor_name(flavor) + " verdict=" + (pass ? "pass" : "fail");
    if (!mode.empty()) s += " mode=" + mode;
    if (!pass && !witness.empty()) s += " witness=" + witness;
    return s;
}

namespace {

std::string clip(const std::string& s, size_t n = 160) { return s.size() <= n ? s : s.substr(0, n) + "..."; }

CheckReport report(const std::string& name, int two_g, int arity, Flavor fl) {
    CheckReport r;
    r.name = name;
    r.two_g = two_g;
    r.arity = arity;
    r.flavor = fl;
    r.pass = true;
    return r;
}

void fail(CheckReport& r, const std::string& w) {
    if (r.pass) r.witness = w;
    r.pass = false;
}

int diff_val(const Frac& f, int v, const Point& p) { return p.inf ? valuation(f, v, p) - 2 : valuation(f, v, p); }

}  // namespace

CheckReport check_symmetry(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    CheckReport r = report("symmetry", two_g, arity, fl);
    const Frac& f = e.omega(two_g, arity, fl);
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j) {
            std::vector<int> map(kMaxVars, -1);
            map[zvar(i)] = zvar(j);
            map[zvar(j)] = zvar(i);
            Frac d = f.rename(map) - f;
            if (!d.is_zero()) fail(r, "z" + std::to_string(i) + "<->z" + std::to_string(j) + " residual " + clip(to_string(d)));
        }
    return r;
}

CheckReport check_residues(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    CheckReport r = report("residue_free", two_g, arity, fl);
    const Frac& f = e.omega(two_g, arity, fl);
    for (int i = 0; i < arity; ++i) {
        int v = zvar(i);
        std::vector<Point> pts;
        for (auto& [p, o] : finite_poles(f, v)) pts.push_back(Point::finite(p));
        pts.push_back(Point::infinity());
        for (auto& p : pts) {
            Frac res = residue_at(f, v, p);
            if (!res.is_zero()) fail(r, "Res_{z" + std::to_string(i) + "=" + to_string(p) + "} = " + clip(to_string(res)));
        }
    }
    return r;
}

CheckReport check_pole_locus(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    CheckReport r = report("pole_locus", two_g, arity, fl);
    const SpectralCurve& c = e.curve();
    const Frac& f = e.omega(two_g, arity, fl);
    bool inf_ok = false;
    std::vector<Poly> base;
    for (auto& rp : c.ramification()) {
        if (!rp.effective) continue;
        if (rp.at.inf) inf_ok = true;
        else base.push_back(rp.at.at);
    }
    for (auto& p : c.ptilde_plus()) base.push_back(-p.at);
    for (int i = 0; i < arity; ++i) {
        int v = zvar(i);
        std::vector<Poly> allowed = base;
        for (int j = 0; j < arity; ++j)
            if (j != i) allowed.push_back(-Poly::var(zvar(j)));
        for (auto& [p, o] : finite_poles(f, v))
            if (std::find(allowed.begin(), allowed.end(), p) == allowed.end())
                fail(r, "pole of order " + std::to_string(o) + " at z" + std::to_string(i) + "=" + to_string(p));
        if (!inf_ok && diff_val(f, v, Point::infinity()) < 0) fail(r, "pole at z" + std::to_string(i) + "=oo");
    }
    return r;
}

CheckReport check_q_degree(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    CheckReport r = report("q_degree", two_g, arity, fl);
    const Frac& f = e.omega(two_g, arity, fl);
    const int q = qvar();
    for (auto& [a, ex] : f.den())
        if ((atom_mask(a) >> q) & 1u) fail(r, "Q in denominator");
    for (auto& t : f.num().terms()) {
        int d = t.m.exp(q);
        if (fl == Flavor::QTop && d != 0) fail(r, "Q appears in a Q-top entry");
        if (d > two_g) fail(r, "Q-degree " + std::to_string(d) + " > 2g");
        if (fl == Flavor::Full && (d - two_g) % 2 != 0) fail(r, "Q^" + std::to_string(d) + " has the wrong parity");
    }
    return r;
}

std::vector<CheckReport> check_structural(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    return {check_symmetry(e, two_g, arity, fl), check_residues(e, two_g, arity, fl), check_pole_locus(e, two_g, arity, fl),
            check_q_degree(e, two_g, arity, fl)};
}

CheckReport check_loop_equation(RecursionEngine& e, int two_g, int arity) {
    CheckReport r = report("loop_equation", two_g, arity, Flavor::Full);
    const SpectralCurve& c = e.curve();
    const int z0 = zvar(0);
    auto terms = e.rec_terms(two_g, arity, Flavor::Full, z0);
    Frac W = c.omega01(z0);
    terms.push_back(W.scale(2) * e.omega(two_g, arity));
    Frac R = sum_fracs(terms) / W.scale(2);
    for (auto& rp : c.ramification()) {
        int v = diff_val(R, z0, rp.at);
        if (v < 0) fail(r, "pole of order " + std::to_string(-v) + " at " + rp.user);
    }
    Frac inv = invariant_part(R, z0);
    if (!inv.is_zero()) fail(r, "anti-invariance residual " + clip(to_string(inv)));
    return r;
}

std::vector<CheckReport> check_linear_loop(RecursionEngine& e, int two_g, int arity, Flavor fl) {
    std::vector<CheckReport> out;
    const SpectralCurve& c = e.curve();
    const int z0 = zvar(0);
    Frac Q = Frac::var(qvar());
    if (fl == Flavor::QTop) {
        CheckReport r = report("linear_loop.qtop", two_g, arity, fl);
        Frac d = qtop_invariant_part(e, two_g, arity) - qtop_linear_loop_rhs(e, two_g, arity);
        if (!d.is_zero()) fail(r, "residual " + clip(to_string(d)));
        out.push_back(r);
        return out;
    }
    const Frac& w = e.omega(two_g, arity);
    {
        CheckReport r = report("linear_loop.q0", two_g, arity, fl);
        Frac d = invariant_part(q_coeff(w, 0), z0);
        if (!d.is_zero()) fail(r, "I_0 of the Q^0 part " + clip(to_string(d)));
        out.push_back(r);
    }
    if (two_g == 1 && arity == 2) {
        CheckReport r = report("linear_loop.half_2", two_g, arity, fl);
        Frac rhs = -Q * (anti_part(c.omega02(z0, zvar(1)), z0) / c.omega01(z0).scale(2)).deriv(z0);
        Frac d = invariant_part(w, z0) - rhs;
        if (!d.is_zero()) fail(r, "residual " + clip(to_string(d)));
        out.push_back(r);
    }
    if (two_g == 2 && arity == 1) {
        CheckReport r = report("linear_loop.one_1", two_g, arity, fl);
        Frac rhs = -(Q.scale(Rational(1, 2))) * (anti_part(c.omega_half1(z0), z0) / c.omega01(z0)).deriv(z0);
        Frac d = invariant_part(w, z0) - rhs;
        if (!d.is_zero()) fail(r, "residual " + clip(to_string(d)));
        out.push_back(r);
    }
    return out;
}

CheckReport compare_q0(RecursionEngine& e, UnrefinedOracle& o, int two_g, int arity) {
    CheckReport r = report("oracle_q0", two_g, arity, Flavor::Full);
    Frac q0 = q_coeff(e.omega(two_g, arity), 0);
    Frac ref = two_g % 2 ? Frac() : o.omega(two_g / 2, arity);
    Frac d = q0 - ref;
    if (!d.is_zero()) fail(r, "difference " + clip(to_string(d)));
    return r;
}

CheckReport check_qtop(RecursionEngine& e, int two_g, int arity) {
    CheckReport r = report("qtop_consistency", two_g, arity, Flavor::QTop);
    if (!check_qtop_consistency(e, two_g, arity)) fail(r, "varpi differs from the top Q coefficient");
    return r;
}

std::vector<CheckReport> validate_all(RecursionEngine& e, int depth, int kmax) {
    std::vector<CheckReport> out;
    auto add = [&](std::vector<CheckReport> v) { out.insert(out.end(), v.begin(), v.end()); };
    UnrefinedOracle o(e.curve());
    for (int L = 0; L <= depth; ++L)
        for (int arity = 1; arity <= L + 3; ++arity) {
            int two_g = L + 2 - (arity - 1);
            if (two_g < 0) continue;
            add(check_structural(e, two_g, arity, Flavor::Full));
            add(check_structural(e, two_g, arity, Flavor::QTop));
            out.push_back(check_loop_equation(e, two_g, arity));
            add(check_linear_loop(e, two_g, arity, Flavor::Full));
            add(check_linear_loop(e, two_g, arity, Flavor::QTop));
            out.push_back(compare_q0(e, o, two_g, arity));
            out.push_back(check_qtop(e, two_g, arity));
        }
    // dilaton: unstable instances and every (g,n) whose partner is in range
    auto dil = [&](int two_g, int n) {
        CheckReport r = report("dilaton", two_g, n + 1, Flavor::Full);
        DilatonResult d = check_dilaton(e, two_g, n);
        if (!d.pass) fail(r, "lhs-rhs " + clip(to_string(d.lhs - d.rhs)));
        out.push_back(r);
    };
    dil(0, 0);
    dil(0, 1);
    dil(1, 0);
    for (int L = 0; L + 1 <= depth; ++L)
        for (int arity = 1; arity <= L + 3; ++arity) {
            int two_g = L + 2 - (arity - 1);
            if (two_g >= 0) dil(two_g, arity - 1);
        }
    for (auto& pc : e.path_checks()) {
        CheckReport r = report("recursion_paths", pc.key.two_g, pc.key.arity, pc.key.flavor);
        if (!pc.agree) fail(r, "recursion 1 != recursion 2");
        out.push_back(r);
    }
    if (kmax >= 0) {
        WKBData w = wkb_coefficients(e, kmax);
        QuantumCurve qc = emit_quantum_curve(e.curve(), w);
        for (int k = 0; k <= kmax; ++k) {
            CheckReport a = report("wkb_invariance", k, 1, Flavor::QTop);
            if (!w.invariant[k]) fail(a, "Q_" + std::to_string(k) + " not sigma-invariant");
            CheckReport b = report("wkb_residual", k, 1, Flavor::QTop);
            if (!w.residual_zero[k]) fail(b, clip(to_string(w.Q[k] - w.Qdirect[k])));
            CheckReport c = report("quantum_curve_lift", k, 1, Flavor::QTop);
            if (!qc.lift_ok[k]) fail(c, "lift of Qbar_" + std::to_string(k) + " differs");
            out.insert(out.end(), {a, b, c});
        }
    }
    return out;
}

std::vector<CheckReport> negative_controls(const SpectralCurve& c) {
    std::vector<CheckReport> out;
    const int z0 = zvar(0), z1 = zvar(1), z2 = zvar(2);
    Frac Q = Frac::var(qvar());
    {
        RecursionEngine e(c);
        e.omega(2, 1);
        e.put(1, 1, Flavor::Full, -c.omega_half1(z0));
        out.push_back(check_loop_equation(e, 2, 1));
        out.back().name += "[flipped omega_1/2,1]";
    }
    {
        RecursionEngine e(c);
        Frac w = e.omega(0, 3);
        e.put(0, 3, Flavor::Full, w + Frac(1) / (Frac(Poly::var(z0, 2) * Poly::var(z1, 4) * Poly::var(z2, 2))));
        out.push_back(check_symmetry(e, 0, 3, Flavor::Full));
        out.back().name += "[asymmetric omega_0,3]";
        e.put(0, 3, Flavor::Full, w + Frac(1) / (Frac(Poly::var(z0)) * Frac(Poly::var(z1, 2) * Poly::var(z2, 2))));
        out.push_back(check_residues(e, 0, 3, Flavor::Full));
        out.back().name += "[simple pole added]";
        Frac seven = Frac::ratio(Poly(1), (Poly::var(z0) - Poly(7)).pow(2) * (Poly::var(z1) - Poly(7)).pow(2) *
                                                (Poly::var(z2) - Poly(7)).pow(2));
        e.put(0, 3, Flavor::Full, w + seven);
        out.push_back(check_pole_locus(e, 0, 3, Flavor::Full));
        out.back().name += "[pole at 7]";
        UnrefinedOracle o(c);
        e.put(0, 3, Flavor::Full, w.scale(2));
        out.push_back(compare_q0(e, o, 0, 3));
        out.back().name += "[doubled omega_0,3]";
    }
    {
        RecursionEngine e(c);
        Frac w = e.omega(1, 2);
        e.put(1, 2, Flavor::Full, w * Q * Q);
        out.push_back(check_q_degree(e, 1, 2, Flavor::Full));
        out.back().name += "[Q^2 factor]";
        e.put(1, 2, Flavor::Full, w + Q / (Frac(Poly::var(z0)) * Frac(Poly::var(z1, 2))));
        auto ll = check_linear_loop(e, 1, 2, Flavor::Full);
        out.push_back(ll.back());
        out.back().name += "[invariant term added]";
    }
    {
        RecursionEngine e(c);
        e.omega(0, 3);
        Frac w4 = e.omega(0, 4);
        e.put(0, 4, Flavor::Full, w4.scale(2));
        CheckReport r = report("dilaton[doubled omega_0,4]", 0, 3, Flavor::Full);
        DilatonResult d = check_dilaton(e, 0, 2);
        if (!d.pass) fail(r, "lhs-rhs " + clip(to_string(d.lhs - d.rhs)));
        out.push_back(r);
    }
    {
        RecursionEngine e(c);
        Frac w = e.omega(2, 1, Flavor::QTop);
        e.put(2, 1, Flavor::QTop, w.scale(3));
        out.push_back(check_qtop(e, 2, 1));
        out.back().name += "[tripled varpi_1,1]";
    }
    return out;
}

}  // namespace rtr
