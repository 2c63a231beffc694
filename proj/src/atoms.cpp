#include "rtr/atoms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace rtr {

namespace {

struct PolyHash {
    size_t operator()(const Poly& p) const { return p.hash(); }
};

struct LinInfo {
    int v = -1;
    Poly c, r;  // atom = c*v + r
};

struct AtomTable {
    std::mutex mu;
    std::deque<Poly> polys;
    std::deque<LinInfo> lin;
    std::vector<uint32_t> masks;
    std::unordered_map<Poly, int, PolyHash> index;
    std::map<std::pair<int, int>, Poly> pows;
    std::unordered_map<Poly, Factored, PolyHash> memo;
    std::map<uint32_t, std::vector<int>> by_mask;
};

AtomTable& table() {
    static AtomTable t;
    return t;
}

LinInfo linear_info(const Poly& a) {
    LinInfo best;
    uint32_t m = a.var_mask();
    for (int v = 0; v < kMaxVars; ++v) {
        if (!((m >> v) & 1u) || a.degree(v) != 1) continue;
        auto cs = a.coeffs_in(v);
        LinInfo li{v, cs[1], cs[0]};
        if (best.v < 0 || (li.c.is_const() && !best.c.is_const())) best = li;
        if (best.c.is_const()) break;
    }
    return best;
}

}  // namespace

int intern_atom(const Poly& monic) {
    auto& T = table();
    std::lock_guard<std::mutex> lk(T.mu);
    auto it = T.index.find(monic);
    if (it != T.index.end()) return it->second;
    int id = (int)T.polys.size();
    T.polys.push_back(monic);
    T.lin.push_back(linear_info(monic));
    T.masks.push_back(monic.var_mask());
    T.index.emplace(monic, id);
    T.by_mask[monic.var_mask()].push_back(id);
    return id;
}

const Poly& atom_poly(int id) {
    auto& T = table();
    std::lock_guard<std::mutex> lk(T.mu);
    return T.polys.at(id);
}

uint32_t atom_mask(int id) {
    auto& T = table();
    std::lock_guard<std::mutex> lk(T.mu);
    return T.masks.at(id);
}

static const LinInfo& atom_lin(int id) {
    auto& T = table();
    std::lock_guard<std::mutex> lk(T.mu);
    return T.lin.at(id);
}

Poly atom_pow(int atom, int e) {
    if (e == 0) return Poly(1);
    if (e == 1) return atom_poly(atom);
    auto& T = table();
    {
        std::lock_guard<std::mutex> lk(T.mu);
        auto it = T.pows.find({atom, e});
        if (it != T.pows.end()) return it->second;
    }
    Poly r = atom_pow(atom, e / 2);
    r = r * r;
    if (e & 1) r = r * atom_poly(atom);
    std::lock_guard<std::mutex> lk(T.mu);
    T.pows.emplace(std::make_pair(atom, e), r);
    return r;
}

std::pair<Rational, Poly> make_monic(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("make_monic of zero");
    Rational lc = p.canonical_lead().c;
    if (lc == 1) return {lc, p};
    return {lc, p.scale(1 / lc)};
}

Den den_mul(const Den& a, const Den& b) {
    Den r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

Den den_max(const Den& a, const Den& b) {
    Den r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, std::max(a[i].second, b[j].second)});
            ++i;
            ++j;
        }
    }
    return r;
}

Poly den_poly(const Den& d) {
    Poly r(1);
    for (auto& [a, e] : d) r = r * atom_pow(a, e);
    return r;
}

bool maybe_divides(int atom, const Poly& p) {
    if (p.is_zero()) return true;
    const LinInfo& li = atom_lin(atom);
    if (li.v < 0) return true;
    uint32_t need = p.var_mask() | atom_mask(atom);
    if (!((p.var_mask() >> li.v) & 1u)) {
        // p free of v: atom | p only if p == 0
        return false;
    }
    static thread_local std::mt19937_64 rng(0x5eed1234abcdull);
    uint64_t vals[kMaxVars] = {};
    for (int attempt = 0; attempt < 3; ++attempt) {
        for (int v = 0; v < kMaxVars; ++v)
            if ((need >> v) & 1u) vals[v] = rng() % kModP;
        uint64_t c, r;
        if (!eval_mod(li.c, vals, c) || !eval_mod(li.r, vals, r)) return true;
        if (c == 0) continue;
        vals[li.v] = mulmod(kModP - r, invmod(c));
        if (r == 0) vals[li.v] = 0;
        uint64_t e;
        if (!eval_mod(p, vals, e)) return true;
        return e == 0;
    }
    return true;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    const auto& lt = p.terms()[0];
    if (lt.c < 0) return std::nullopt;
    Mono sm;
    for (int v = 0; v < kMaxVars; ++v) {
        int e = lt.m.exp(v);
        if (e & 1) return std::nullopt;
        if (e) sm.set_exp(v, e / 2);
    }
    mpz_class n = lt.c.get_num(), d = lt.c.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_sqrt(n.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
    Rational sc(n, d);
    sc.canonicalize();
    Poly s = Poly::monomial(sm, sc);
    Poly rem = p - s * s;
    const Mono s_lead = sm;
    size_t guard = p.size() + 8;
    while (!rem.is_zero()) {
        if (guard-- == 0) return std::nullopt;
        const auto& rt = rem.terms()[0];
        if (!s_lead.divides(rt.m)) return std::nullopt;
        Mono tm = rt.m / s_lead;
        if (!(tm < s_lead)) return std::nullopt;
        Rational tc = rt.c / (2 * sc);
        Poly t = Poly::monomial(tm, tc);
        rem -= (s.scale(2) + t) * t;
        s += t;
    }
    return s;
}

static void add_factor(Factored& f, int atom, int e) {
    f.f = den_mul(f.f, Den{{atom, e}});
}

static Factored factor_monic(const Poly& m);
static std::vector<mpz_class> divisors(mpz_class n);

static void factor_into(const Poly& q, int mult, Factored& out) {
    if (q.is_const()) {
        mpq_class c = q.const_value();
        for (int i = 0; i < mult; ++i) out.c *= c;
        return;
    }
    auto [sc, m] = make_monic(q);
    for (int i = 0; i < mult; ++i) out.c *= sc;
    Factored fm;
    {
        auto& T = table();
        std::unique_lock<std::mutex> lk(T.mu);
        auto it = T.memo.find(m);
        if (it != T.memo.end()) {
            fm = it->second;
        } else {
            lk.unlock();
            fm = factor_monic(m);
            lk.lock();
            T.memo.emplace(m, fm);
        }
    }
    for (int i = 0; i < mult; ++i) out.c *= fm.c;
    for (auto& [a, e] : fm.f) add_factor(out, a, e * mult);
}

static Factored factor_univariate(const Poly& m, int v) {
    Factored out;
    Poly cur = m;
    for (;;) {
        int d = cur.degree(v);
        if (d <= 1) break;
        auto cs = cur.coeffs_in(v);
        mpz_class l = 1;
        for (auto& c : cs) {
            Rational q = c.const_value();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
        std::vector<mpz_class> ic;
        for (auto& c : cs) {
            Rational q = c.const_value() * l;
            ic.push_back(q.get_num());
        }
        if (ic[0] == 0) break;  // monomial factors handled by caller
        auto d0 = divisors(ic[0]);
        auto dn = divisors(ic[d]);
        bool found = false;
        for (auto& s : d0) {
            for (auto& t : dn) {
                for (int sg : {1, -1}) {
                    Rational r(s * sg, t);
                    r.canonicalize();
                    Rational acc = 0;
                    for (int k = d; k >= 0; --k) acc = acc * r + Rational(ic[k]);
                    if (acc != 0) continue;
                    Poly lin = Poly::var(v) - Poly(r);
                    auto qq = cur.divexact(lin);
                    if (!qq) continue;
                    add_factor(out, intern_atom(lin), 1);
                    auto [sc, mq] = make_monic(*qq);
                    out.c *= sc;
                    cur = mq;
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (!cur.is_const()) add_factor(out, intern_atom(cur), 1);
    else out.c *= cur.const_value();
    return out;
}

static std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, int>> pf;
    for (unsigned long p = 2; p < 100000 && mpz_class(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int k = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++k;
            }
            pf.push_back({mpz_class(p), k});
        }
    }
    if (n > 1) pf.push_back({n, 1});
    std::vector<mpz_class> ds{1};
    for (auto& [p, k] : pf) {
        size_t base = ds.size();
        mpz_class pk = 1;
        for (int i = 1; i <= k; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
        if (ds.size() > 20000) break;
    }
    return ds;
}

static bool root_mod_check(const Poly& m, int v, const Poly& rho) {
    static thread_local std::mt19937_64 rng(0xfeedbeefull);
    uint64_t vals[kMaxVars] = {};
    uint32_t need = m.var_mask() | rho.var_mask();
    for (int w = 0; w < kMaxVars; ++w)
        if ((need >> w) & 1u) vals[w] = rng() % kModP;
    uint64_t r, e;
    if (!eval_mod(rho, vals, r)) return true;
    vals[v] = r;
    if (!eval_mod(m, vals, e)) return true;
    return e == 0;
}

// Polynomial rho with m(v = rho) = 0, searched among divisors of the constant
// coefficient when the leading coefficient in v is constant.
static std::optional<Poly> polynomial_root(const Poly& m, int v) {
    auto cs = m.coeffs_in(v);
    if (!cs.back().is_const() || cs[0].is_zero()) return std::nullopt;
    Factored f0 = factor(cs[0]);
    // integer content ratio for the constant part
    mpz_class l = 1;
    for (auto& t : m.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    Rational lead = cs.back().const_value() * l;
    Rational c0 = f0.c * l;
    auto dn = divisors(c0.get_num());
    auto dd = divisors(lead.get_num() * c0.get_den());
    if (dn.size() * dd.size() > 4000) return std::nullopt;
    // atom exponent combinations, atoms limited to degree <= deg_v target
    std::vector<Poly> mons{Poly(1)};
    for (auto& [a, e] : f0.f) {
        std::vector<Poly> next;
        for (auto& base : mons) {
            Poly cur = base;
            for (int k = 0; k <= e; ++k) {
                next.push_back(cur);
                cur = cur * atom_poly(a);
            }
        }
        mons = std::move(next);
        if (mons.size() > 512) return std::nullopt;
    }
    for (auto& mon : mons) {
        for (auto& s : dn)
            for (auto& t : dd)
                for (int sg : {1, -1}) {
                    Rational r(s * sg, t);
                    r.canonicalize();
                    Poly rho = mon.scale(r);
                    if (root_mod_check(m, v, rho) && root_mod_check(m, v, rho) && m.subst(v, rho).is_zero()) return rho;
                }
    }
    return std::nullopt;
}

// first known atom dividing m, or -1
static int known_divisor(const Poly& m) {
    uint32_t mask = m.var_mask();
    std::vector<int> cand;
    {
        auto& T = table();
        std::lock_guard<std::mutex> lk(T.mu);
        auto it = T.index.find(m);
        if (it != T.index.end()) return it->second;
        for (auto& [am, ids] : T.by_mask)
            if ((am & ~mask) == 0) cand.insert(cand.end(), ids.begin(), ids.end());
    }
    for (int a : cand) {
        const Poly& A = atom_poly(a);
        if (A.total_degree() > m.total_degree()) continue;
        if (!maybe_divides(a, m)) continue;
        if (m.divexact(A)) return a;
    }
    return -1;
}

static Factored factor_monic(const Poly& m) {
    Factored out;
    uint32_t mask = m.var_mask();
    int nv = __builtin_popcount(mask);
    int kd = known_divisor(m);
    if (kd >= 0) {
        Poly q = *m.divexact(atom_poly(kd));
        add_factor(out, kd, 1);
        factor_into(q, 1, out);
        return out;
    }
    if (nv == 1) {
        int v = __builtin_ctz(mask);
        if (m.degree(v) == 1) {
            add_factor(out, intern_atom(m), 1);
            return out;
        }
        return factor_univariate(m, v);
    }
    // linear in some variable
    for (int v = 0; v < kMaxVars; ++v) {
        if (!((mask >> v) & 1u) || m.degree(v) != 1) continue;
        auto cs = m.coeffs_in(v);
        if (cs[1].is_const()) {
            add_factor(out, intern_atom(m), 1);
            return out;
        }
        Factored fa = factor(cs[1]);
        Poly g(1);
        Poly b = cs[0];
        for (auto& [a, e] : fa.f) {
            for (int k = 0; k < e; ++k) {
                if (!maybe_divides(a, b)) break;
                auto q = b.divexact(atom_poly(a));
                if (!q) break;
                b = *q;
                g = g * atom_poly(a);
            }
        }
        if (g.is_const()) {
            add_factor(out, intern_atom(m), 1);
            return out;
        }
        auto rest = m.divexact(g);
        if (!rest) throw std::logic_error("factor: inconsistent linear split");
        factor_into(g, 1, out);
        factor_into(*rest, 1, out);
        return out;
    }
    // v - rho with rho a product of factors of the constant coefficient
    for (int v = 0; v < kMaxVars; ++v) {
        if (!((mask >> v) & 1u) || m.degree(v) < 2) continue;
        auto root = polynomial_root(m, v);
        if (!root) continue;
        Poly lin = Poly::var(v) - *root;
        auto q = m.divexact(lin);
        if (!q) continue;
        factor_into(lin, 1, out);
        factor_into(*q, 1, out);
        return out;
    }
    // quadratic with square discriminant
    for (int v = 0; v < kMaxVars; ++v) {
        if (!((mask >> v) & 1u) || m.degree(v) != 2) continue;
        auto cs = m.coeffs_in(v);
        Poly disc = cs[1] * cs[1] - cs[2] * cs[0].scale(4);
        auto s = poly_sqrt(disc);
        if (!s) continue;
        Poly two_a_v = cs[2].scale(2) * Poly::var(v);
        Poly f1 = two_a_v + cs[1] - *s;
        Poly f2 = two_a_v + cs[1] + *s;
        // m = f1*f2/(4a)
        Poly prod = f1 * f2;
        Factored tmp;
        factor_into(f1, 1, tmp);
        factor_into(f2, 1, tmp);
        Factored fa = factor(cs[2].scale(4));
        // divide out 4a
        tmp.c /= fa.c;
        for (auto& [a, e] : fa.f) {
            auto it = std::find_if(tmp.f.begin(), tmp.f.end(), [&](auto& pr) { return pr.first == a; });
            if (it == tmp.f.end() || it->second < e) throw std::logic_error("factor: quadratic split failed");
            it->second -= e;
        }
        tmp.f.erase(std::remove_if(tmp.f.begin(), tmp.f.end(), [](auto& pr) { return pr.second == 0; }),
                    tmp.f.end());
        (void)prod;
        out.c *= tmp.c;
        for (auto& [a, e] : tmp.f) add_factor(out, a, e);
        return out;
    }
    add_factor(out, intern_atom(m), 1);
    return out;
}

Factored factor(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("factor of zero polynomial");
    Factored out;
    if (p.is_const()) {
        out.c = p.const_value();
        return out;
    }
    // monomial content
    Mono g = p.terms()[0].m;
    for (auto& t : p.terms()) {
        Mono ng;
        for (int v = 0; v < kMaxVars; ++v) {
            int e = std::min(g.exp(v), t.m.exp(v));
            if (e) ng.set_exp(v, e);
        }
        g = ng;
    }
    Poly q = p;
    if (!g.is_one()) {
        q = *p.divexact(Poly::monomial(g, 1));
        for (int v = 0; v < kMaxVars; ++v)
            if (g.exp(v)) add_factor(out, intern_atom(Poly::var(v)), g.exp(v));
    }
    factor_into(q, 1, out);
    return out;
}

}  // namespace rtr
