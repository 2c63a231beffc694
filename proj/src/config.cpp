#include "rtr/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <gmpxx.h>

namespace rtr {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

std::string squeeze(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) r += c;
    return r;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum((unsigned char)c) || c == '_'; });
}

bool is_rational(const std::string& s) {
    std::string t = squeeze(s);
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    bool slash = false, digit = false;
    for (; i < t.size(); ++i) {
        if (std::isdigit((unsigned char)t[i])) digit = true;
        else if (t[i] == '/' && !slash && digit) {
            slash = true;
            digit = false;
        } else
            return false;
    }
    if (!digit) return false;
    if (slash && t.substr(t.find('/') + 1).find_first_not_of('0') == std::string::npos) return false;
    return true;
}

std::string canonical_rational(const std::string& s) {
    mpq_class q(squeeze(s));
    q.canonicalize();
    return q.get_str();
}

const std::set<std::string> kSections{"curve", "relation", "parameters", "ptilde_plus", "options"};
const std::set<std::string> kOptionKeys{"kmax", "depth", "seeds", "samples"};

}  // namespace

bool is_reserved_symbol(const std::string& n) {
    if (n == "t" || n == "x" || n == "u" || n == "Q" || n == "symbolic") return true;
    if (n.size() > 1 && (n[0] == 'z' || (n.size() > 2 && n[0] == 'd' && n[1] == 'z'))) {
        size_t st = n[0] == 'z' ? 1 : 2;
        if (std::all_of(n.begin() + st, n.end(), [](char c) { return std::isdigit((unsigned char)c); })) return true;
    }
    return false;
}

std::optional<std::string> CurveConfig::param(const std::string& name) const {
    for (auto& [k, v] : params)
        if (k == name) return v;
    return std::nullopt;
}

void CurveConfig::set_param(const std::string& name, const std::string& value) {
    for (auto& [k, v] : params)
        if (k == name) {
            v = value;
            return;
        }
    params.emplace_back(name, value);
}

int CurveConfig::option_int(const std::string& key, int def) const {
    auto it = options.find(key);
    if (it == options.end()) return def;
    return std::stoi(it->second);
}

CurveConfig parse_curve_config(const std::string& text) {
    CurveConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    int ln = 0;
    std::set<std::string> seen_curve, seen_rel;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        int col = (int)line.find_first_not_of(" \t") + 1;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("unterminated section header", ln, col);
            section = trim(t.substr(1, t.size() - 2));
            if (!kSections.count(section)) throw ConfigError("unknown section [" + section + "]", ln, col);
            continue;
        }
        if (section.empty()) throw ConfigError("entry outside of any section", ln, col);
        if (section == "ptilde_plus") {
            std::string point, mu;
            bool hp = false, hm = false;
            size_t pos = 0;
            while (pos <= line.size()) {
                size_t comma = line.find(',', pos);
                std::string item = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                int icol = (int)pos + 1 + (int)(item.find_first_not_of(" \t") == std::string::npos ? 0 : item.find_first_not_of(" \t"));
                size_t eq = item.find('=');
                if (eq == std::string::npos) throw ConfigError("expected key = value", ln, icol);
                std::string k = trim(item.substr(0, eq)), v = trim(item.substr(eq + 1));
                if (v.empty()) throw ConfigError("empty value for '" + k + "'", ln, icol);
                if (k == "point") {
                    if (hp) throw ConfigError("duplicate key 'point'", ln, icol);
                    point = v;
                    hp = true;
                } else if (k == "mu") {
                    if (hm) throw ConfigError("duplicate key 'mu'", ln, icol);
                    mu = v;
                    hm = true;
                } else
                    throw ConfigError("unknown key '" + k + "'", ln, icol);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (!hp) throw ConfigError("mu given for undeclared point", ln, col);
            if (!hm) throw ConfigError("point without mu", ln, col);
            cfg.ptilde_plus.push_back({point, mu});
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", ln, col);
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        int vcol = (int)eq + 2;
        if (v.empty()) throw ConfigError("empty value for '" + k + "'", ln, vcol);
        if (section == "curve") {
            if (seen_curve.count(k)) throw ConfigError("duplicate key '" + k + "'", ln, col);
            seen_curve.insert(k);
            if (k == "z") {
                if (!is_identifier(v) || is_reserved_symbol(v)) throw ConfigError("invalid coordinate symbol '" + v + "'", ln, vcol);
                cfg.zsym = v;
            } else if (k == "x") cfg.x = v;
            else if (k == "y") cfg.y = v;
            else if (k == "sigma") cfg.sigma = v;
            else throw ConfigError("unknown key '" + k + "'", ln, col);
        } else if (section == "relation") {
            if (seen_rel.count(k)) throw ConfigError("duplicate key '" + k + "'", ln, col);
            seen_rel.insert(k);
            if (k == "a") cfg.a = v;
            else if (k == "b") cfg.b = v;
            else if (k == "c") cfg.c = v;
            else throw ConfigError("unknown key '" + k + "'", ln, col);
        } else if (section == "parameters") {
            if (!is_identifier(k) || is_reserved_symbol(k)) throw ConfigError("invalid parameter name '" + k + "'", ln, col);
            if (cfg.param(k)) throw ConfigError("duplicate parameter '" + k + "'", ln, col);
            if (v != "symbolic" && !is_rational(v)) throw ConfigError("parameter value must be a rational or 'symbolic'", ln, vcol);
            cfg.params.emplace_back(k, v == "symbolic" ? v : canonical_rational(v));
        } else if (section == "options") {
            if (!kOptionKeys.count(k)) throw ConfigError("unknown key '" + k + "'", ln, col);
            if (cfg.options.count(k)) throw ConfigError("duplicate key '" + k + "'", ln, col);
            cfg.options[k] = v;
        }
    }
    if (cfg.x.empty()) throw ConfigError("missing [curve] x", ln, 1);
    if (cfg.y.empty()) throw ConfigError("missing [curve] y", ln, 1);
    if (cfg.sigma.empty()) throw ConfigError("missing [curve] sigma", ln, 1);
    if (!seen_rel.empty() && seen_rel.size() != 3) throw ConfigError("[relation] needs all of a, b, c", ln, 1);
    for (auto& [k, v] : cfg.params)
        if (k == cfg.zsym) throw ConfigError("parameter '" + k + "' shadows the coordinate symbol", ln, 1);
    return cfg;
}

CurveConfig load_curve_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_curve_config(ss.str());
}

std::string serialize_curve_config(const CurveConfig& cfg) {
    std::ostringstream o;
    o << "[curve]\n";
    o << "z = " << cfg.zsym << "\n";
    o << "x = " << squeeze(cfg.x) << "\n";
    o << "y = " << squeeze(cfg.y) << "\n";
    o << "sigma = " << squeeze(cfg.sigma) << "\n";
    if (cfg.has_relation()) {
        o << "\n[relation]\n";
        o << "a = " << squeeze(cfg.a) << "\n";
        o << "b = " << squeeze(cfg.b) << "\n";
        o << "c = " << squeeze(cfg.c) << "\n";
    }
    if (!cfg.params.empty()) {
        auto ps = cfg.params;
        std::sort(ps.begin(), ps.end());
        o << "\n[parameters]\n";
        for (auto& [k, v] : ps) o << k << " = " << v << "\n";
    }
    if (!cfg.ptilde_plus.empty()) {
        o << "\n[ptilde_plus]\n";
        for (auto& p : cfg.ptilde_plus) o << "point = " << squeeze(p.point) << ", mu = " << squeeze(p.mu) << "\n";
    }
    if (!cfg.options.empty()) {
        o << "\n[options]\n";
        for (auto& [k, v] : cfg.options) o << k << " = " << v << "\n";
    }
    return o.str();
}

void apply_param_overrides(CurveConfig& cfg, const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad --params entry '" + item + "'");
        std::string k = trim(item.substr(0, eq)), v = squeeze(item.substr(eq + 1));
        if (!cfg.param(k)) throw std::runtime_error("--params names undeclared parameter '" + k + "'");
        if (v != "symbolic" && !is_rational(v)) throw std::runtime_error("--params value for '" + k + "' is not rational");
        cfg.set_param(k, v == "symbolic" ? v : canonical_rational(v));
    }
}

uint64_t config_hash(const CurveConfig& cfg) {
    CurveConfig c = cfg;
    c.options.clear();
    std::string s = serialize_curve_config(c);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace rtr
