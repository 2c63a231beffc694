#include "rtr/expr.hpp"

#include <algorithm>
#include <cctype>

namespace rtr {

namespace {

class Parser {
public:
    Parser(const std::string& s, const SymbolLookup& lk, std::vector<int>* dv) : s_(s), lk_(lk), dv_(dv) {}

    Frac run() {
        skip();
        if (i_ == s_.size()) throw ParseError("empty expression", i_);
        Frac r = sum();
        skip();
        if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return r;
    }

private:
    const std::string& s_;
    const SymbolLookup& lk_;
    std::vector<int>* dv_;
    size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Frac sum() {
        Frac acc = term();
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }
    Frac term() {
        Frac acc = unary();
        for (;;) {
            if (eat('*')) acc *= unary();
            else if (eat('/')) {
                size_t at = i_;
                Frac d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc /= d;
            } else
                return acc;
        }
    }
    Frac unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    long integer() {
        skip();
        size_t st = i_;
        bool neg = false;
        if (i_ < s_.size() && s_[i_] == '-') {
            neg = true;
            ++i_;
        }
        if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_])) throw ParseError("expected integer exponent", i_);
        long v = 0;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
            v = v * 10 + (s_[i_] - '0');
            if (v > 100000) throw ParseError("exponent too large", st);
            ++i_;
        }
        return neg ? -v : v;
    }
    Frac power() {
        size_t at = i_;
        Frac b = primary();
        if (eat('^')) {
            long e;
            if (eat('(')) {
                e = integer();
                if (!eat(')')) throw ParseError("expected ')'", i_);
            } else
                e = integer();
            if (e < 0 && b.is_zero()) throw ParseError("zero to a negative power", at);
            b = b.pow((int)e);
        }
        return b;
    }
    Frac primary() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Frac r = sum();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
            return Frac(Rational(mpz_class(s_.substr(st, i_ - st))));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t st = i_;
            while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
            std::string id = s_.substr(st, i_ - st);
            if (dv_ && id.size() > 2 && id[0] == 'd' && id[1] == 'z' &&
                std::all_of(id.begin() + 2, id.end(), [](char ch) { return std::isdigit((unsigned char)ch); })) {
                int k = std::stoi(id.substr(2));
                if (std::find(dv_->begin(), dv_->end(), k) != dv_->end())
                    throw ParseError("repeated differential " + id, st);
                dv_->push_back(k);
                return Frac(1);
            }
            auto v = lk_(id);
            if (!v) throw ParseError("unknown symbol '" + id + "'", st);
            return *v;
        }
        throw ParseError(std::string("unexpected '") + c + "'", i_);
    }
};

}  // namespace

Frac parse_expr(const std::string& text, const SymbolLookup& lookup) { return Parser(text, lookup, nullptr).run(); }

SymbolLookup variable_lookup() {
    return [](const std::string& name) -> std::optional<Frac> { return Frac::var(var_id(name)); };
}

ParsedDiff parse_diff(const std::string& text, const SymbolLookup& lookup) {
    ParsedDiff out;
    out.coeff = Parser(text, lookup, &out.dvars).run();
    std::sort(out.dvars.begin(), out.dvars.end());
    return out;
}

std::string diff_to_string(const Frac& coeff, int arity) {
    if (coeff.is_zero()) return "0";
    std::string d;
    for (int i = 0; i < arity; ++i) d += (i ? "*dz" : "dz") + std::to_string(i);
    const Poly& n = coeff.num();
    std::string ns;
    if (n.is_const() && n.const_value() == 1) ns = d;
    else if (n.is_const() && n.const_value() == -1) ns = "-" + d;
    else if (n.size() == 1) ns = to_string(n) + "*" + d;
    else ns = "(" + to_string(n) + ")*" + d;
    if (coeff.is_poly()) return ns;
    std::string den = to_string(Frac::canonical(Poly(1), coeff.den()));
    return ns + den.substr(den.find('/'));
}

}  // namespace rtr
