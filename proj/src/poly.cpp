#include "rtr/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rtr {

void Mono::set_exp(int v, int e) {
    if (e < 0 || e > 255) throw std::overflow_error("exponent out of range");
    int old = exp(v);
    int b = v + 1;
    int sh = 56 - 8 * (b & 7);
    uint64_t& word = w[b >> 3];
    word = (word & ~(0xffull << sh)) | (uint64_t(e) << sh);
    int d = deg() - old + e;
    if (d > 255) throw std::overflow_error("total degree exceeds 255");
    w[0] = (w[0] & ~(0xffull << 56)) | (uint64_t(d) << 56);
}

bool Mono::divides(const Mono& o) const {
    for (int k = 0; k < 3; ++k) {
        uint64_t a = w[k], b = o.w[k];
        for (int s = 0; s < 64; s += 8)
            if (((a >> s) & 0xff) > ((b >> s) & 0xff)) return false;
    }
    return true;
}

uint32_t Mono::mask() const {
    uint32_t m = 0;
    for (int v = 0; v < kMaxVars; ++v)
        if (exp(v)) m |= 1u << v;
    return m;
}

Mono operator*(const Mono& a, const Mono& b) {
    if (a.deg() + b.deg() > 255) throw std::overflow_error("total degree exceeds 255");
    Mono r;
    r.w[0] = a.w[0] + b.w[0];
    r.w[1] = a.w[1] + b.w[1];
    r.w[2] = a.w[2] + b.w[2];
    return r;
}

Mono operator/(const Mono& a, const Mono& b) {
    Mono r;
    r.w[0] = a.w[0] - b.w[0];
    r.w[1] = a.w[1] - b.w[1];
    r.w[2] = a.w[2] - b.w[2];
    return r;
}

Poly::Poly(long c) {
    if (c != 0) t_.push_back({Mono{}, Rational(c)});
}

Poly::Poly(const Rational& c) {
    if (c != 0) t_.push_back({Mono{}, c});
}

Poly Poly::var(int id, int e) {
    Mono m;
    m.set_exp(id, e);
    return monomial(m, 1);
}

Poly Poly::monomial(const Mono& m, const Rational& c) {
    Poly p;
    if (c != 0) p.t_.push_back({m, c});
    return p;
}

Rational Poly::const_value() const {
    if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
    return 0;
}

int Poly::degree(int v) const {
    int d = -1;
    for (auto& t : t_) d = std::max(d, t.m.exp(v));
    return d;
}

uint32_t Poly::var_mask() const {
    uint64_t acc[3] = {0, 0, 0};
    for (auto& t : t_) {
        acc[0] |= t.m.w[0];
        acc[1] |= t.m.w[1];
        acc[2] |= t.m.w[2];
    }
    Mono m;
    m.w[0] = acc[0] & ~(0xffull << 56);
    m.w[1] = acc[1];
    m.w[2] = acc[2];
    return m.mask();
}

static std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                                     bool negate_b) {
    std::vector<Poly::Term> r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].m > b[j].m) {
            r.push_back(a[i++]);
        } else if (b[j].m > a[i].m) {
            r.push_back(b[j++]);
            if (negate_b) r.back().c = -r.back().c;
        } else {
            Rational c = negate_b ? Rational(a[i].c - b[j].c) : Rational(a[i].c + b[j].c);
            if (c != 0) r.push_back({a[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) {
        r.push_back(b[j]);
        if (negate_b) r.back().c = -r.back().c;
    }
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    t_ = merge(t_, o.t_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.t_.empty()) return *this;
    t_ = merge(t_, o.t_, true);
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r += b;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    r -= b;
    return r;
}

Poly Poly::mul_term(const Mono& m, const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
    return r;
}

Poly Poly::scale(const Rational& c) const { return mul_term(Mono{}, c); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.t_.empty() || b.t_.empty()) return Poly();
    const Poly& s = a.t_.size() <= b.t_.size() ? a : b;
    const Poly& l = a.t_.size() <= b.t_.size() ? b : a;
    if (s.t_.size() == 1) return l.mul_term(s.t_[0].m, s.t_[0].c);
    std::unordered_map<Mono, Rational, MonoHash> acc;
    acc.reserve(s.t_.size() * l.t_.size());
    mpq_t tmp;
    mpq_init(tmp);
    for (auto& x : s.t_)
        for (auto& y : l.t_) {
            mpq_mul(tmp, x.c.get_mpq_t(), y.c.get_mpq_t());
            Rational& slot = acc[x.m * y.m];
            mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp);
        }
    mpq_clear(tmp);
    Poly r;
    r.t_.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0) r.t_.push_back({kv.first, std::move(kv.second)});
    std::sort(r.t_.begin(), r.t_.end(), [](const Poly::Term& x, const Poly::Term& y) { return x.m > y.m; });
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power of polynomial");
    Poly r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
    int d = degree(v);
    std::vector<std::vector<Term>> parts(std::max(d + 1, 0));
    for (auto& t : t_) {
        int e = t.m.exp(v);
        Mono m = t.m;
        m.set_exp(v, 0);
        parts[e].push_back({m, t.c});
    }
    std::vector<Poly> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.push_back(from_sorted(std::move(p)));
    return out;
}

Poly Poly::subst(int v, const Poly& r) const {
    if (!has_var(v)) return *this;
    auto cs = coeffs_in(v);
    if (r.is_const()) {
        Rational c = r.const_value();
        Poly acc;
        for (int k = (int)cs.size() - 1; k >= 0; --k) acc = acc.scale(c) + cs[k];
        return acc;
    }
    Poly acc;
    for (int k = (int)cs.size() - 1; k >= 0; --k) acc = acc * r + cs[k];
    return acc;
}

Poly Poly::deriv(int v) const {
    std::vector<Term> r;
    for (auto& t : t_) {
        int e = t.m.exp(v);
        if (!e) continue;
        Mono m = t.m;
        m.set_exp(v, e - 1);
        r.push_back({m, t.c * e});
    }
    std::sort(r.begin(), r.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
    return from_sorted(std::move(r));
}

Poly Poly::rename(const std::vector<int>& map) const {
    std::vector<Term> r;
    r.reserve(t_.size());
    for (auto& t : t_) {
        Mono m;
        for (int v = 0; v < kMaxVars; ++v) {
            int e = t.m.exp(v);
            if (!e) continue;
            int nv = (v < (int)map.size() && map[v] >= 0) ? map[v] : v;
            m.set_exp(nv, m.exp(nv) + e);
        }
        r.push_back({m, t.c});
    }
    std::sort(r.begin(), r.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
    std::vector<Term> out;
    for (auto& t : r) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c += t.c;
            if (out.back().c == 0) out.pop_back();
        } else {
            out.push_back(t);
        }
    }
    return from_sorted(std::move(out));
}

Poly Poly::reflect(int v) const {
    Poly r = *this;
    for (auto& t : r.t_)
        if (t.m.exp(v) & 1) t.c = -t.c;
    return r;
}

std::optional<Poly> Poly::divexact(const Poly& d) const {
    if (d.t_.empty()) throw std::domain_error("division by zero polynomial");
    if (t_.empty()) return Poly();
    if (d.t_.size() == 1) {
        const Term& dt = d.t_[0];
        std::vector<Term> q;
        q.reserve(t_.size());
        for (auto& t : t_) {
            if (!dt.m.divides(t.m)) return std::nullopt;
            q.push_back({t.m / dt.m, t.c / dt.c});
        }
        return from_sorted(std::move(q));
    }
    const Term& lead = d.t_[0];
    std::map<Mono, Rational, std::greater<Mono>> rem;
    for (auto& t : t_) rem.emplace(t.m, t.c);
    std::vector<Term> q;
    Rational c;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lead.m.divides(it->first)) return std::nullopt;
        Mono qm = it->first / lead.m;
        c = it->second / lead.c;
        rem.erase(it);
        for (size_t k = 1; k < d.t_.size(); ++k) {
            Mono m = d.t_[k].m * qm;
            auto jt = rem.find(m);
            if (jt == rem.end()) {
                rem.emplace(m, -c * d.t_[k].c);
            } else {
                jt->second -= c * d.t_[k].c;
                if (jt->second == 0) rem.erase(jt);
            }
        }
        q.push_back({qm, c});
    }
    return from_sorted(std::move(q));
}

Rational Poly::content() const {
    if (t_.empty()) return 0;
    mpz_class g = 0, l = 1;
    for (auto& t : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    Rational r(g, l);
    r.canonicalize();
    return abs(r);
}

static bool canon_greater(const Mono& a, const Mono& b, const std::vector<int>& order) {
    if (a.deg() != b.deg()) return a.deg() > b.deg();
    for (int v : order) {
        int ea = a.exp(v), eb = b.exp(v);
        if (ea != eb) return ea > eb;
    }
    return false;
}

const Poly::Term& Poly::canonical_lead() const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    auto order = canonical_var_order();
    size_t best = 0;
    for (size_t i = 1; i < t_.size(); ++i)
        if (t_[i].m.deg() == t_[0].m.deg() && canon_greater(t_[i].m, t_[best].m, order)) best = i;
    return t_[best];
}

size_t Poly::hash() const {
    size_t h = t_.size();
    MonoHash mh;
    for (auto& t : t_) {
        h ^= mh(t.m) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= mpz_get_ui(t.c.get_num_mpz_t()) * 31 + mpz_get_ui(t.c.get_den_mpz_t());
    }
    return h;
}

Poly sum_polys(std::vector<Poly> ps) {
    if (ps.empty()) return Poly();
    while (ps.size() > 1) {
        std::vector<Poly> next;
        for (size_t i = 0; i + 1 < ps.size(); i += 2) next.push_back(ps[i] + ps[i + 1]);
        if (ps.size() & 1) next.push_back(std::move(ps.back()));
        ps = std::move(next);
    }
    return ps[0];
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    auto order = canonical_var_order();
    std::vector<const Poly::Term*> ts;
    for (auto& t : p.terms()) ts.push_back(&t);
    std::stable_sort(ts.begin(), ts.end(),
                     [&](const Poly::Term* a, const Poly::Term* b) { return canon_greater(a->m, b->m, order); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        Rational c = t->c;
        bool neg = c < 0;
        if (neg) c = -c;
        if (neg) os << "-";
        else if (!first) os << "+";
        first = false;
        std::string mono;
        for (int v : order) {
            int e = t->m.exp(v);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) os << c.get_str();
        else if (c == 1) os << mono;
        else os << c.get_str() << "*" << mono;
    }
    return os.str();
}

uint64_t mulmod(uint64_t a, uint64_t b) {
    unsigned __int128 z = (unsigned __int128)a * b;
    uint64_t lo = uint64_t(z & kModP), hi = uint64_t(z >> 61);
    uint64_t r = lo + hi;
    if (r >= kModP) r -= kModP;
    return r;
}

uint64_t powmod(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a) { return powmod(a, kModP - 2); }

bool rat_mod(const Rational& q, uint64_t& out) {
    uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kModP);
    if (d == 0) return false;
    uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kModP);
    out = mulmod(n, invmod(d));
    return true;
}

bool eval_mod(const Poly& p, const uint64_t* vals, uint64_t& out) {
    uint64_t acc = 0;
    for (auto& t : p.terms()) {
        uint64_t c;
        if (!rat_mod(t.c, c)) return false;
        for (int v = 0; v < kMaxVars && c; ++v) {
            int e = t.m.exp(v);
            if (e) c = mulmod(c, powmod(vals[v], e));
        }
        acc += c;
        if (acc >= kModP) acc -= kModP;
    }
    out = acc;
    return true;
}

}  // namespace rtr
