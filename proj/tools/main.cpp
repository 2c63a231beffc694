#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rtr/cache.hpp"
#include "rtr/expr.hpp"
#include "rtr/free_energy.hpp"
#include "rtr/oracle.hpp"
#include "rtr/qtop.hpp"
#include "rtr/validator.hpp"

using namespace rtr;

namespace {

struct Options {
    std::string file;
    std::string g = "0";
    int n = 0;
    int kmax = -1, depth = -1;
    std::optional<uint64_t> seed;
    std::string params;
    std::string format = "canonical";
    std::string flavor = "full";
    std::string alpha;
    bool no_cache = false;
};

int parse_two_g(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    Rational t = q * 2;
    if (t < 0 || t.get_den() != 1) throw std::runtime_error("--g must be a non-negative multiple of 1/2");
    return (int)t.get_num().get_si();
}

CurveConfig load(const Options& o) {
    CurveConfig cfg = load_curve_config(o.file);
    if (o.seed) cfg = sample_parameters(cfg, *o.seed);
    if (!o.params.empty()) apply_param_overrides(cfg, o.params);
    return cfg;
}

std::optional<Frac> alpha_of(const Options& o) {
    if (o.alpha.empty()) return std::nullopt;
    return parse_expr(o.alpha, variable_lookup());
}

std::string join(const std::vector<std::string>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "}";
}

int run_classify(const Options& o) {
    SpectralCurve c(load(o));
    std::vector<std::string> r, rs, pt, pp;
    for (auto& p : c.ramification()) {
        r.push_back(p.user);
        if (p.effective) rs.push_back(p.user);
    }
    for (auto& p : c.ptilde()) {
        std::string s = p.user + " (order " + std::to_string(p.order) + ")";
        pt.push_back(s);
        if (p.plus) pp.push_back(p.user + " (mu " + to_string(p.mu) + ")");
    }
    std::cout << "R = " << join(r) << "\n";
    std::cout << "R* = " << join(rs) << "\n";
    std::cout << "Ptilde = " << join(pt) << "\n";
    std::cout << "Ptilde+ = " << join(pp) << "\n";
    std::cout << "x(t) = " << to_string(c.x()) << "\n";
    std::cout << "omega_{0,1} = " << diff_to_string(c.w01(), 1) << "\n";
    return 0;
}

int run_compute(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    int two_g = parse_two_g(o.g), arity = o.n + 1;
    DiffFormat fmt = parse_format(o.format);
    Frac w;
    if (o.flavor == "unrefined") {
        if (two_g % 2) throw std::runtime_error("the unrefined flavour needs integer g");
        UnrefinedOracle orc(c);
        w = orc.omega(two_g / 2, arity);
    } else {
        Flavor fl = o.flavor == "qtop" ? Flavor::QTop : Flavor::Full;
        if (o.flavor != "qtop" && o.flavor != "full") throw std::runtime_error("unknown flavour '" + o.flavor + "'");
        RecursionEngine e(c);
        std::optional<DiskCache> cache;
        if (!o.no_cache) {
            cache.emplace(DiskCache::default_dir());
            cache->restore(e, cfg, std::max(level(two_g, arity), 2 * two_g));
        }
        w = e.omega(two_g, arity, fl);
        if (cache) cache->save(e, cfg);
    }
    std::cout << serialize_diff(w, arity, fmt);
    return 0;
}

int report(const std::vector<CheckReport>& rs) {
    bool ok = true;
    for (auto& r : rs) {
        std::cout << r.line() << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int run_validate(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    RecursionEngine e(c);
    int depth = o.depth >= 0 ? o.depth : cfg.option_int("depth", 2);
    int kmax = o.kmax >= 0 ? o.kmax : cfg.option_int("kmax", 4);
    return report(validate_all(e, depth, kmax));
}

int run_qtop(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    RecursionEngine e(c);
    int kmax = o.kmax >= 0 ? o.kmax : cfg.option_int("kmax", 4);
    for (int two_g = 1; two_g <= kmax; ++two_g)
        std::cout << "varpi(" << genus_text(two_g) << ",1) = " << serialize_diff(e.omega(two_g, 1, Flavor::QTop), 1);
    CheckReport r;
    r.name = "qtop_tower";
    r.two_g = kmax;
    r.arity = 1;
    r.flavor = Flavor::QTop;
    r.pass = true;
    for (auto& [k, f] : e.entries())
        if (k.flavor == Flavor::QTop && k.arity >= 3) {
            r.pass = false;
            r.witness = "depends on (" + genus_text(k.two_g) + "," + std::to_string(k.arity) + ")";
        }
    return report({r});
}

int run_quantum_curve(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    RecursionEngine e(c);
    int kmax = o.kmax >= 0 ? o.kmax : cfg.option_int("kmax", 4);
    WKBData w = wkb_coefficients(e, kmax);
    QuantumCurve q = emit_quantum_curve(c, w);
    std::cout << q.operator_line() << "\n";
    std::vector<CheckReport> rs;
    for (int k = 0; k <= kmax; ++k) {
        std::cout << "Qbar_" << k << "(x) = " << to_string(q.qbar[k]) << "\n";
        CheckReport r;
        r.name = "wkb";
        r.two_g = k;
        r.arity = 1;
        r.flavor = Flavor::QTop;
        r.pass = w.invariant[k] && w.residual_zero[k] && q.lift_ok[k];
        if (!w.invariant[k]) r.witness = "Q_k not sigma-invariant";
        else if (!w.residual_zero[k]) r.witness = "nonzero WKB residual";
        else if (!q.lift_ok[k]) r.witness = "lift differs";
        rs.push_back(r);
    }
    return report(rs);
}

int run_free_energy(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    RecursionEngine e(c);
    int two_g = parse_two_g(o.g);
    PrimitiveSpec spec{alpha_of(o)};
    std::optional<DiskCache> cache;
    if (!o.no_cache) {
        cache.emplace(DiskCache::default_dir());
        cache->restore(e, cfg, level(two_g, 1));
    }
    Frac F = free_energy(e, two_g, spec);
    if (cache) cache->save(e, cfg);
    std::cout << "F_" << genus_text(two_g) << " = " << to_string(F) << "\n";
    return 0;
}

int run_dilaton(const Options& o) {
    CurveConfig cfg = load(o);
    SpectralCurve c(cfg);
    RecursionEngine e(c);
    int two_g = parse_two_g(o.g);
    PrimitiveSpec spec{alpha_of(o)};
    DilatonResult d = check_dilaton(e, two_g, o.n, spec);
    CheckReport r;
    r.name = spec.alpha ? "dilaton_u" : "dilaton";
    r.two_g = two_g;
    r.arity = o.n + 1;
    r.flavor = Flavor::Full;
    r.pass = d.pass;
    if (!d.pass) r.witness = "lhs-rhs " + to_string(d.lhs - d.rhs);
    return report({r});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refined topological recursion on genus-zero hyperelliptic curves"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("file", o.file, "curve file")->required()->check(CLI::ExistingFile);
        s->add_option("--seed", o.seed, "pin every parameter to a random rational drawn from this seed");
        s->add_option("--params", o.params, "parameter overrides, e.g. l0=3/2,m=symbolic");
    };
    std::map<std::string, std::function<int(const Options&)>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> h) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        handlers[name] = std::move(h);
        return s;
    };
    sub("classify", "print ramification points and P-tilde", run_classify);
    auto* compute = sub("compute", "print omega_{g,n+1}", run_compute);
    compute->add_option("--g", o.g, "genus, e.g. 1/2");
    compute->add_option("--n", o.n, "number of extra points");
    compute->add_option("--format", o.format, "canonical | partial-fractions | coefficient-table");
    compute->add_option("--flavor", o.flavor, "full | qtop | unrefined");
    compute->add_flag("--no-cache", o.no_cache, "skip the on-disk cache");
    auto* validate = sub("validate", "run every check up to --depth", run_validate);
    validate->add_option("--depth", o.depth, "largest 2g-2+n");
    validate->add_option("--kmax", o.kmax, "largest WKB order");
    auto* qtop = sub("qtop", "Q-top tower varpi_{g,1}", run_qtop);
    qtop->add_option("--kmax", o.kmax, "largest 2g");
    auto* qc = sub("quantum-curve", "WKB data and the quantum curve", run_quantum_curve);
    qc->add_option("--kmax", o.kmax, "largest order");
    auto* fe = sub("free-energy", "F_g, optionally shifted by U = alpha*log x", run_free_energy);
    fe->add_option("--g", o.g, "genus");
    fe->add_option("--alpha", o.alpha, "coefficient of log x in U");
    fe->add_flag("--no-cache", o.no_cache, "skip the on-disk cache");
    auto* dil = sub("dilaton-check", "dilaton equation for omega_{g,n+1}", run_dilaton);
    dil->add_option("--g", o.g, "genus");
    dil->add_option("--n", o.n, "number of extra points");
    dil->add_option("--alpha", o.alpha, "coefficient of log x in U");

    CLI11_PARSE(app, argc, argv);
    try {
        for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << o.file << ":" << e.what() << "\n";
    } catch (const CurveError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
