#include "rtr/curve.hpp"

#include <algorithm>
#include <random>

#include "rtr/expr.hpp"

namespace rtr {

Frac sigma_pullback(const Frac& f, int v) { return -f.reflect(v); }
Frac invariant_part(const Frac& f, int v) { return f + sigma_pullback(f, v); }
Frac anti_part(const Frac& f, int v) { return f - sigma_pullback(f, v); }

Frac SpectralCurve::rename_t(const Frac& f, int v) {
    if (v == tvar()) return f;
    std::vector<int> map(kMaxVars, -1);
    map[tvar()] = v;
    return f.rename(map);
}

Frac SpectralCurve::parse(const std::string& expr) const {
    const int t = tvar();
    auto lookup = [&](const std::string& name) -> std::optional<Frac> {
        if (name == cfg_.zsym) return Frac::var(t);
        auto it = pinned_.find(name);
        if (it != pinned_.end()) return Frac(it->second);
        if (std::find(symbolic_.begin(), symbolic_.end(), name) != symbolic_.end()) return Frac::var(var_id(name));
        return std::nullopt;
    };
    return parse_expr(expr, lookup);
}

SpectralCurve::SpectralCurve(const CurveConfig& cfg) : cfg_(cfg) {
    for (auto& [k, v] : cfg_.params) {
        if (v == "symbolic") symbolic_.push_back(k);
        else pinned_[k] = Rational(v);
    }
    std::sort(symbolic_.begin(), symbolic_.end());
    for (auto& s : symbolic_) var_id(s);
    qvar();
    build_chart();
    classify();
}

void SpectralCurve::build_chart() {
    const int t = tvar();
    Frac T = Frac::var(t);
    Frac xu, yu, su;
    try {
        xu = parse(cfg_.x);
        yu = parse(cfg_.y);
        su = parse(cfg_.sigma);
    } catch (const ParseError& e) {
        throw CurveError("parse-error", std::string(e.what()) + " at offset " + std::to_string(e.pos));
    }
    if (su == T) throw CurveError("involution-failure", "sigma is the identity");
    if (su.subst(t, su) != T) throw CurveError("involution-failure", "sigma(sigma(z)) != z");
    if (xu.subst(t, su) != xu) throw CurveError("cover-failure", "x(sigma(z)) != x(z)");
    Poly sn = su.num(), sd = su.den_poly();
    if (sn.degree(t) > 1 || sd.degree(t) > 1)
        throw CurveError("involution-failure", "sigma is not a Moebius transformation");

    if (su == -T) {
        phi_ = T;
        phi_inv_ = T;
    } else {
        auto nc = sn.coeffs_in(t), dc = sd.coeffs_in(t);
        nc.resize(2);
        dc.resize(2);
        // sigma = (al t + be)/(ga t + de)
        Poly al = nc[1], be = nc[0], ga = dc[1], de = dc[0];
        if (ga.is_zero()) {
            Poly s = al - de;
            if (!s.is_const()) throw CurveError("irrational-distinguished-point", "fixed point not polynomial in the parameters");
            Poly r = (-be).scale(1 / s.const_value());
            phi_ = T + Frac(r);
            phi_inv_ = T - Frac(r);
        } else {
            Poly F = -(ga * Poly::var(t, 2)) + (al - de) * Poly::var(t) + be;
            Factored ff = factor(F);
            std::vector<Poly> roots;
            for (auto& [a, e] : ff.f) {
                const Poly& A = atom_poly(a);
                if (!A.has_var(t)) continue;
                auto cs = A.coeffs_in(t);
                if (cs.size() != 2 || !cs[1].is_const())
                    throw CurveError("irrational-distinguished-point", "fixed points of sigma are not rational");
                for (int k = 0; k < e; ++k) roots.push_back((-cs[0]).scale(1 / cs[1].const_value()));
            }
            if (roots.size() != 2 || roots[0] == roots[1])
                throw CurveError("involution-failure", "sigma does not have two distinct fixed points");
            Frac r1(roots[0]), r2(roots[1]);
            phi_ = (r1 - r2 * T) / (Frac(1) - T);
            phi_inv_ = (T - r1) / (T - r2);
        }
        if (su.subst(t, phi_) != phi_.subst(t, -T))
            throw CurveError("involution-failure", "could not normalise sigma to t -> -t");
    }
    x_ = xu.subst(t, phi_);
    y_ = yu.subst(t, phi_);
    if (!cfg_.a.empty()) {
        has_rel_ = true;
        int xv = xvar();
        auto lk = [&](const std::string& name) -> std::optional<Frac> {
            if (name == "x") return Frac::var(xv);
            auto it = pinned_.find(name);
            if (it != pinned_.end()) return Frac(it->second);
            if (std::find(symbolic_.begin(), symbolic_.end(), name) != symbolic_.end()) return Frac::var(var_id(name));
            return std::nullopt;
        };
        try {
            a_ = parse_expr(cfg_.a, lk);
            b_ = parse_expr(cfg_.b, lk);
            c_ = parse_expr(cfg_.c, lk);
        } catch (const ParseError& e) {
            throw CurveError("parse-error", std::string(e.what()) + " in [relation]");
        }
        Frac lhs = a_.subst(xv, x_) * y_ * y_ + b_.subst(xv, x_) * y_ + c_.subst(xv, x_);
        if (!lhs.is_zero()) throw CurveError("relation-failure", "a(x) y^2 + b(x) y + c(x) != 0");
    }
    xp_ = x_.deriv(t);
    dy_ = y_ - y_.reflect(t);
    if (dy_.is_zero()) throw CurveError("cover-failure", "y is invariant under sigma");
    w01_ = (dy_ * xp_).scale(Rational(1, 2));
}

std::string SpectralCurve::user_point(const Point& p) const {
    const int t = tvar();
    if (p.inf) {
        Frac v = phi_.subst(t, Frac::ratio(Poly(1), Poly::var(t)));
        // limit as t -> 0 of phi(1/t)
        if (valuation(v, t, Point::finite(0)) < 0) return "oo";
        Laurent L = laurent_expand(v, t, Point::finite(0), 0);
        return to_string(L.coeff(0));
    }
    Frac d = Frac(phi_.den_poly()).subst(t, p.at);
    if (d.is_zero()) return "oo";
    return to_string(phi_.subst(t, p.at));
}

void SpectralCurve::classify() {
    const int t = tvar();
    Frac f = dy_ * xp_;  // Delta y dx coefficient
    ram_.clear();
    int v0 = valuation(f, t, Point::finite(0));
    int vinf = valuation(f, t, Point::infinity()) - 2;
    ram_.push_back({Point::finite(0), v0 >= 0, user_point(Point::finite(0))});
    ram_.push_back({Point::infinity(), vinf >= 0, user_point(Point::infinity())});

    pt_.clear();
    auto add = [&](const Poly& at, int order) {
        if (at.is_zero()) return;
        PTildePoint p;
        p.at = at;
        p.order = order;
        p.user = user_point(Point::finite(at));
        pt_.push_back(p);
    };
    try {
        for (auto& [p, e] : finite_poles(f, t)) add(p, -e);
    } catch (const std::exception& e) {
        throw CurveError("irrational-distinguished-point", e.what());
    }
    Factored fn = factor(f.num());
    for (auto& [a, e] : fn.f) {
        const Poly& A = atom_poly(a);
        if (!A.has_var(t)) continue;
        auto cs = A.coeffs_in(t);
        if (cs.size() != 2 || !cs[1].is_const())
            throw CurveError("irrational-distinguished-point", "zero locus " + to_string(A) + " of Delta y dx");
        add((-cs[0]).scale(1 / cs[1].const_value()), e);
    }
    std::sort(pt_.begin(), pt_.end(), [](const PTildePoint& a, const PTildePoint& b) {
        return to_string(a.at) < to_string(b.at);
    });

    // declared plus half
    for (auto& d : cfg_.ptilde_plus) {
        Frac pu, mu;
        try {
            pu = parse(d.point);
            mu = parse(d.mu);
        } catch (const ParseError& e) {
            throw CurveError("parse-error", std::string(e.what()) + " in [ptilde_plus]");
        }
        if (pu.has_var(t)) throw CurveError("invalid-ptilde", "point depends on the coordinate");
        if (!mu.is_poly() || mu.has_var(t)) throw CurveError("invalid-ptilde", "mu must be a rational or parameter polynomial");
        Frac pc = phi_inv_.subst(t, pu);
        if (!pc.is_poly()) throw CurveError("unsupported-point", "chart image of " + d.point + " is not polynomial");
        auto it = std::find_if(pt_.begin(), pt_.end(), [&](const PTildePoint& q) { return q.at == pc.num(); });
        if (it == pt_.end()) throw CurveError("invalid-ptilde", d.point + " is not a zero or pole of Delta y dx off the fixed points");
        if (it->plus) throw CurveError("invalid-ptilde", d.point + " declared twice");
        auto jt = std::find_if(pt_.begin(), pt_.end(), [&](const PTildePoint& q) { return q.at == -pc.num(); });
        if (jt != pt_.end() && jt->plus) throw CurveError("invalid-ptilde", d.point + " and its involution image both declared");
        it->plus = true;
        it->mu = mu;
    }
    for (auto& p : pt_) {
        if (p.plus) continue;
        auto jt = std::find_if(pt_.begin(), pt_.end(), [&](const PTildePoint& q) { return q.at == -p.at; });
        if (jt == pt_.end() || !jt->plus)
            throw CurveError("invalid-ptilde", "declared ptilde_plus is not a valid half of P-tilde (missing " + p.user + ")");
    }

    mueta_ = Frac();
    for (auto& p : pt_)
        if (p.plus) mueta_ += p.mu * eta(t, p.at);
    Frac logd = dy_.deriv(t) / dy_;
    wh_ = (mueta_ - logd) * Frac(Poly::var(qvar())).scale(Rational(1, 2));
}

std::vector<PTildePoint> SpectralCurve::ptilde_plus() const {
    std::vector<PTildePoint> r;
    for (auto& p : pt_)
        if (p.plus) r.push_back(p);
    return r;
}

std::vector<Point> SpectralCurve::effective_points() const {
    std::vector<Point> r;
    for (auto& p : ram_)
        if (p.effective) r.push_back(p.at);
    return r;
}

Frac SpectralCurve::omega02(int v0, int v1) const {
    return Frac::ratio(Poly(1), (Poly::var(v0) + Poly::var(v1)).pow(2));
}

Frac SpectralCurve::eta(int v0, const Poly& p) const {
    Poly z = Poly::var(v0);
    return Frac::ratio(Poly(1), z - p) - Frac::ratio(Poly(1), z + p);
}

Frac SpectralCurve::eta_var(int v0, int vp) const { return eta(v0, Poly::var(vp)); }

CurveConfig sample_parameters(const CurveConfig& cfg, uint64_t seed) {
    std::mt19937_64 gen(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        CurveConfig out = cfg;
        for (auto& [k, v] : out.params) {
            long num = (long)(gen() % 19) + 1, den = (long)(gen() % 9) + 1;
            if (gen() & 1) num = -num;
            Rational q(num, den);
            q.canonicalize();
            v = q.get_str();
        }
        try {
            SpectralCurve c(out);
            return out;
        } catch (const CurveError&) {
        }
    }
    throw CurveError("sampling-failure", "no admissible parameter draw");
}

}  // namespace rtr
