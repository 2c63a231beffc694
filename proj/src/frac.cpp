#include "rtr/frac.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rtr {

static void cancel(Poly& num, Den& den) {
    if (num.is_zero()) {
        den.clear();
        return;
    }
    for (auto& [a, e] : den) {
        while (e > 0 && maybe_divides(a, num)) {
            auto q = num.divexact(atom_poly(a));
            if (!q) break;
            num = std::move(*q);
            --e;
        }
    }
    den.erase(std::remove_if(den.begin(), den.end(), [](auto& p) { return p.second == 0; }), den.end());
}

Frac Frac::canonical(Poly num, Den den) {
    Frac f;
    cancel(num, den);
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
}

Frac Frac::ratio(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw std::domain_error("division by the zero rational function");
    Factored fd = factor(d);
    return canonical(n.scale(1 / fd.c), fd.f);
}

uint32_t Frac::var_mask() const {
    uint32_t m = num_.var_mask();
    for (auto& [a, e] : den_) m |= atom_mask(a);
    return m;
}

Frac Frac::operator-() const {
    Frac r = *this;
    r.num_ = -r.num_;
    return r;
}

static Poly cofactor(const Den& full, const Den& part) {
    Poly r(1);
    size_t j = 0;
    for (auto& [a, e] : full) {
        int have = 0;
        while (j < part.size() && part[j].first < a) ++j;
        if (j < part.size() && part[j].first == a) have = part[j].second;
        if (e > have) r = r * atom_pow(a, e - have);
    }
    return r;
}

Frac operator+(const Frac& a, const Frac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Frac::canonical(a.num_ + b.num_, a.den_);
    Den d = den_max(a.den_, b.den_);
    Poly n = a.num_ * cofactor(d, a.den_) + b.num_ * cofactor(d, b.den_);
    return Frac::canonical(std::move(n), std::move(d));
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    Poly an = a.num_, bn = b.num_;
    Den ad = a.den_, bd = b.den_;
    cancel(bn, ad);
    cancel(an, bd);
    Frac r;
    r.num_ = an * bn;
    r.den_ = den_mul(ad, bd);
    return r;
}

Frac Frac::inv() const {
    if (is_zero()) throw std::domain_error("division by the zero rational function");
    Factored fn = factor(num_);
    Frac r;
    r.num_ = den_poly().scale(1 / fn.c);
    r.den_ = fn.f;
    return r;
}

Frac operator/(const Frac& a, const Frac& b) { return a * b.inv(); }

Frac Frac::scale(const Rational& c) const {
    if (c == 0) return Frac();
    Frac r = *this;
    r.num_ = r.num_.scale(c);
    return r;
}

Frac Frac::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    if (e == 0) return Frac(1);
    if (is_zero()) return Frac();
    Frac r;
    r.num_ = num_.pow(e);
    r.den_ = den_;
    for (auto& pr : r.den_) pr.second *= e;
    return r;
}

Frac Frac::subst(int v, const Poly& r) const {
    if (!has_var(v)) return *this;
    Poly n = num_.subst(v, r);
    Rational sc = 1;
    Den nd;
    Den extra;  // atoms that became numerators
    Poly numfix(1);
    for (auto& [a, e] : den_) {
        if (!((atom_mask(a) >> v) & 1u)) {
            nd = den_mul(nd, Den{{a, e}});
            continue;
        }
        Poly s = atom_poly(a).subst(v, r);
        if (s.is_zero()) throw std::domain_error("substitution hits a pole");
        Factored f = factor(s);
        for (int i = 0; i < e; ++i) sc *= f.c;
        for (auto& [b, k] : f.f) nd = den_mul(nd, Den{{b, k * e}});
    }
    return canonical(n.scale(1 / sc), nd);
}

Frac Frac::subst(int v, const Frac& r) const {
    if (!has_var(v)) return *this;
    if (r.is_poly()) return subst(v, r.num());
    auto horner = [&](const Poly& p) {
        auto cs = p.coeffs_in(v);
        Frac acc;
        for (int k = (int)cs.size() - 1; k >= 0; --k) acc = acc * r + Frac(cs[k]);
        return acc;
    };
    Frac out = horner(num_);
    for (auto& [a, e] : den_) {
        if (!((atom_mask(a) >> v) & 1u)) {
            Frac t;
            t.num_ = Poly(1);
            t.den_ = Den{{a, e}};
            out = out * t;
            continue;
        }
        Frac s = horner(atom_poly(a));
        if (s.is_zero()) throw std::domain_error("substitution hits a pole");
        out = out * s.pow(-e);
    }
    return out;
}

Frac Frac::deriv(int v) const {
    if (!has_var(v)) return Frac();
    // (N/D)' = (N' * prod A - N * sum e_i A_i' prod_{j!=i} A_j) / (D * prod A), A over atoms containing v
    std::vector<std::pair<int, int>> dep;
    for (auto& pr : den_)
        if ((atom_mask(pr.first) >> v) & 1u) dep.push_back(pr);
    Poly prodA(1);
    for (auto& [a, e] : dep) prodA = prodA * atom_poly(a);
    Poly n = num_.deriv(v) * prodA;
    for (size_t i = 0; i < dep.size(); ++i) {
        Poly t = atom_poly(dep[i].first).deriv(v).scale(dep[i].second);
        for (size_t j = 0; j < dep.size(); ++j)
            if (j != i) t = t * atom_poly(dep[j].first);
        n -= num_ * t;
    }
    Den d = den_;
    for (auto& [a, e] : d)
        if ((atom_mask(a) >> v) & 1u) e += 1;
    return canonical(std::move(n), std::move(d));
}

namespace {
struct RenameCache {
    std::mutex mu;
    std::map<std::pair<int, std::vector<int>>, std::pair<int, Rational>> m;
};
RenameCache& rcache() {
    static RenameCache c;
    return c;
}

std::pair<int, Rational> map_atom(int a, const std::vector<int>& key, const std::function<Poly(const Poly&)>& fn) {
    auto& C = rcache();
    {
        std::lock_guard<std::mutex> lk(C.mu);
        auto it = C.m.find({a, key});
        if (it != C.m.end()) return it->second;
    }
    auto [sc, mon] = make_monic(fn(atom_poly(a)));
    std::pair<int, Rational> res{intern_atom(mon), sc};
    std::lock_guard<std::mutex> lk(C.mu);
    C.m.emplace(std::make_pair(a, key), res);
    return res;
}
}  // namespace

Frac Frac::rename(const std::vector<int>& map) const {
    std::vector<int> key(kMaxVars, -1);
    uint32_t m = var_mask();
    for (int v = 0; v < (int)map.size(); ++v)
        if (map[v] >= 0 && map[v] != v && ((m >> v) & 1u)) key[v] = map[v];
    if (std::all_of(key.begin(), key.end(), [](int k) { return k < 0; })) return *this;
    Frac r;
    r.num_ = num_.rename(key);
    Rational sc = 1;
    for (auto& [a, e] : den_) {
        auto [na, s] = map_atom(a, key, [&](const Poly& p) { return p.rename(key); });
        for (int i = 0; i < e; ++i) sc *= s;
        r.den_ = den_mul(r.den_, Den{{na, e}});
    }
    if (sc != 1) r.num_ = r.num_.scale(1 / sc);
    return r;
}

Frac Frac::reflect(int v) const {
    if (!has_var(v)) return *this;
    std::vector<int> key(kMaxVars, -1);
    key[0] = -2 - v;  // distinct cache key space for reflections
    Frac r;
    r.num_ = num_.reflect(v);
    Rational sc = 1;
    for (auto& [a, e] : den_) {
        if (!((atom_mask(a) >> v) & 1u)) {
            r.den_ = den_mul(r.den_, Den{{a, e}});
            continue;
        }
        auto [na, s] = map_atom(a, key, [&](const Poly& p) { return p.reflect(v); });
        for (int i = 0; i < e; ++i) sc *= s;
        r.den_ = den_mul(r.den_, Den{{na, e}});
    }
    if (sc != 1) r.num_ = r.num_.scale(1 / sc);
    return r;
}

Frac sum_raw(const std::vector<RawFrac>& parts) {
    Den d;
    for (auto& p : parts)
        if (!p.num.is_zero()) d = den_max(d, p.den);
    std::vector<Poly> nums;
    nums.reserve(parts.size());
    for (auto& p : parts)
        if (!p.num.is_zero()) nums.push_back(p.num * cofactor(d, p.den));
    return Frac::canonical(sum_polys(std::move(nums)), d);
}

Frac sum_fracs(const std::vector<Frac>& parts) {
    std::vector<RawFrac> r;
    r.reserve(parts.size());
    for (auto& p : parts) r.push_back(p.raw());
    return sum_raw(r);
}

std::string atom_string(int atom) { return to_string(atom_poly(atom)); }

int den_exponent(const Frac& f, int atom) {
    for (auto& [a, e] : f.den())
        if (a == atom) return e;
    return 0;
}

std::string to_string(const Frac& f) {
    std::string n = to_string(f.num());
    if (f.den().empty()) return n;
    std::vector<std::string> fs;
    for (auto& [a, e] : f.den()) {
        const Poly& p = atom_poly(a);
        std::string s = p.size() > 1 ? "(" + to_string(p) + ")" : to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
        fs.push_back(s);
    }
    std::sort(fs.begin(), fs.end());
    std::string d;
    for (size_t i = 0; i < fs.size(); ++i) d += (i ? "*" : "") + fs[i];
    if (fs.size() > 1) d = "(" + d + ")";
    if (f.num().size() > 1) n = "(" + n + ")";
    return n + "/" + d;
}

}  // namespace rtr
