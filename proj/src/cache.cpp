#include "rtr/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rtr/expr.hpp"

namespace rtr {

namespace fs = std::filesystem;

DiffFormat parse_format(const std::string& s) {
    if (s == "canonical") return DiffFormat::Canonical;
    if (s == "partial-fractions") return DiffFormat::PartialFractions;
    if (s == "coefficient-table") return DiffFormat::CoefficientTable;
    throw std::runtime_error("unknown format '" + s + "'");
}

std::string serialize_diff(const Frac& coeff, int arity, DiffFormat fmt) {
    std::ostringstream o;
    switch (fmt) {
        case DiffFormat::Canonical:
            o << diff_to_string(coeff, arity) << "\n";
            break;
        case DiffFormat::PartialFractions:
            for (int i = 0; i < arity; ++i) {
                int v = zvar(i);
                PartialFractions pf = partial_fractions(coeff, v);
                o << "z" << i << ":\n";
                if (!pf.poly_part.is_zero()) o << "  polynomial: " << to_string(pf.poly_part) << "\n";
                for (auto& t : pf.terms)
                    o << "  pole " << to_string(t.pole) << " order " << t.order << ": " << to_string(t.coeff) << "\n";
            }
            break;
        case DiffFormat::CoefficientTable: {
            int d = q_degree(coeff);
            for (int k = 0; k <= d; ++k) {
                Frac c = q_coeff(coeff, k);
                if (!c.is_zero()) o << "k=" << k << " " << diff_to_string(c, arity) << "\n";
            }
            break;
        }
    }
    return o.str();
}

Frac deserialize_diff(const std::string& text, int arity) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    if (s == "0") return Frac();
    ParsedDiff d = parse_diff(s, variable_lookup());
    if ((int)d.dvars.size() != arity) throw std::runtime_error("serialized differential has the wrong arity");
    for (int i = 0; i < arity; ++i)
        if (d.dvars[i] != i) throw std::runtime_error("serialized differential has the wrong dz factors");
    return d.coeff;
}

DiskCache::DiskCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path DiskCache::default_dir() {
    if (const char* d = std::getenv("RTR_CACHE_DIR"); d && *d) return d;
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "rtr";
    return ".rtr-cache";
}

std::string DiskCache::key(const CurveConfig& cfg, int two_g, int arity, Flavor fl) {
    std::string s = std::to_string(config_hash(cfg)) + "/" + std::to_string(two_g) + "/" + std::to_string(arity) + "/" +
                    flavor_name(fl);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::optional<Frac> DiskCache::load(const CurveConfig& cfg, int two_g, int arity, Flavor fl) const {
    fs::path p = dir_ / (key(cfg, two_g, arity, fl) + ".diff");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return deserialize_diff(ss.str(), arity);
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt entry: recompute
    }
}

void DiskCache::store(const CurveConfig& cfg, int two_g, int arity, Flavor fl, const Frac& f) {
    fs::create_directories(dir_);
    std::string k = key(cfg, two_g, arity, fl);
    fs::path tmp = dir_ / (k + ".tmp");
    {
        std::ofstream out(tmp);
        out << serialize_diff(f, arity);
    }
    fs::rename(tmp, dir_ / (k + ".diff"));

    fs::path mp = dir_ / "manifest.json";
    nlohmann::json m = nlohmann::json::object();
    if (std::ifstream in(mp); in) {
        try {
            in >> m;
        } catch (const std::exception&) {
            m = nlohmann::json::object();
        }
    }
    m[k] = {{"config_hash", std::to_string(config_hash(cfg))},
            {"two_g", two_g},
            {"arity", arity},
            {"flavor", flavor_name(fl)}};
    fs::path mtmp = dir_ / "manifest.json.tmp";
    {
        std::ofstream out(mtmp);
        out << m.dump(2) << "\n";
    }
    fs::rename(mtmp, mp);
}

int DiskCache::restore(RecursionEngine& e, const CurveConfig& cfg, int max_level) const {
    int count = 0;
    for (int L = 0; L <= max_level; ++L)
        for (int arity = 1; arity <= L + 3; ++arity) {
            int two_g = L + 2 - (arity - 1);
            if (two_g < 0) continue;
            for (Flavor fl : {Flavor::Full, Flavor::QTop})
                if (auto f = load(cfg, two_g, arity, fl)) {
                    e.put(two_g, arity, fl, *f);
                    ++count;
                }
        }
    return count;
}

void DiskCache::save(const RecursionEngine& e, const CurveConfig& cfg) {
    for (auto& [k, f] : e.entries())
        if (level(k.two_g, k.arity) >= 0 && !load(cfg, k.two_g, k.arity, k.flavor)) store(cfg, k.two_g, k.arity, k.flavor, f);
}

}  // namespace rtr
