// One line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "rtr/cache.hpp"
#include "rtr/expr.hpp"
#include "rtr/free_energy.hpp"
#include "rtr/oracle.hpp"
#include "rtr/qtop.hpp"
#include "rtr/validator.hpp"

using namespace rtr;
namespace fs = std::filesystem;

namespace {

const uint64_t kSeeds[] = {1, 2, 3};

CurveConfig load(const std::string& name) { return load_curve_config(std::string(RTR_CURVES_DIR) + "/" + name); }

struct Tally {
    int total = 0, failed = 0;
    std::string first;
    void add(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            if (!failed) first = what;
            ++failed;
        }
    }
    void add(const CheckReport& r) { add(r.pass, r.line()); }
    bool ok() const { return failed == 0; }
    std::string summary() const {
        std::string s = std::to_string(total - failed) + "/" + std::to_string(total) + " checks";
        if (failed) s += "; first failure: " + first.substr(0, 300);
        return s;
    }
};

struct Engines {
    CurveConfig airy_cfg = load("airy.curve"), app_cfg = load("four_pole.curve");
    SpectralCurve airy{airy_cfg}, app{app_cfg};
    RecursionEngine ea{airy}, ep{app};
    std::vector<std::pair<std::string, RecursionEngine*>> both() { return {{"airy", &ea}, {"four_pole", &ep}}; }
};

void stable_upto(int depth, const std::function<void(int, int)>& f) {
    for (int L = 0; L <= depth; ++L)
        for (int a = 1; a <= L + 3; ++a) {
            int g2 = L + 3 - a;
            if (g2 >= 0) f(g2, a);
        }
}

std::vector<StoreKey> stable_keys(const RecursionEngine& e) {
    std::vector<StoreKey> ks;
    for (auto& [k, f] : e.entries())
        if (level(k.two_g, k.arity) >= 0) ks.push_back(k);
    return ks;
}

bool c1(Engines& E, std::string& detail) {
    Tally t;
    t.add(check_symmetry(E.ea, 1, 2, Flavor::Full));
    t.add(check_symmetry(E.ep, 1, 2, Flavor::Full));
    for (uint64_t s : kSeeds) {
        SpectralCurve c(sample_parameters(E.app_cfg, s));
        RecursionEngine e(c);
        t.add(check_symmetry(e, 1, 2, Flavor::Full));
    }
    detail = "omega_{1/2,2} transposition-symmetric on airy, four_pole and 3 sampled tuples; " + t.summary();
    return t.ok();
}

bool c2(Engines& E, std::string& detail) {
    Tally t;
    for (auto& [n, e] : E.both()) {
        for (auto& r : check_linear_loop(*e, 1, 2, Flavor::Full))
            if (r.name == "linear_loop.half_2") t.add(r);
        for (auto& r : check_linear_loop(*e, 2, 1, Flavor::Full))
            if (r.name == "linear_loop.one_1") t.add(r);
    }
    detail = "I_0 omega_{1/2,2} and I omega_{1,1} identities on both curves; " + t.summary();
    return t.ok();
}

bool c3(Engines& E, std::string& detail) {
    Tally t;
    UnrefinedOracle oa(E.airy), op(E.app);
    stable_upto(3, [&](int g2, int a) {
        t.add(compare_q0(E.ea, oa, g2, a));
        E.ea.omega(g2, a, Flavor::QTop);
    });
    stable_upto(2, [&](int g2, int a) {
        t.add(compare_q0(E.ep, op, g2, a));
        E.ep.omega(g2, a, Flavor::QTop);
    });
    detail = "[Q^0] omega vs independent oracle, airy level<=3, four_pole level<=2; " + t.summary();
    return t.ok();
}

bool c4(Engines& E, std::string& detail) {
    Tally t;
    for (auto& [n, e] : E.both())
        for (auto& k : stable_keys(*e)) t.add(check_q_degree(*e, k.two_g, k.arity, k.flavor));
    detail = "Q-degree <= 2g and parity on every computed entry; " + t.summary();
    return t.ok();
}

bool c5(Engines& E, std::string& detail) {
    Tally t, neg;
    for (auto& [n, e] : E.both())
        for (auto& k : stable_keys(*e))
            if (k.flavor == Flavor::Full) t.add(check_loop_equation(*e, k.two_g, k.arity));
    for (auto* c : {&E.airy, &E.app})
        for (auto& r : negative_controls(*c)) neg.add(!r.pass, r.line());
    detail = "R holomorphic at R and anti-invariant: " + t.summary() + "; negative controls failing as expected: " +
             neg.summary();
    return t.ok() && neg.ok();
}

bool c6(Engines& E, std::string& detail) {
    Tally t;
    for (auto& [n, e] : E.both())
        for (auto& k : stable_keys(*e)) {
            t.add(check_residues(*e, k.two_g, k.arity, k.flavor));
            t.add(check_pole_locus(*e, k.two_g, k.arity, k.flavor));
        }
    detail = "residue-free and pole locus contained, every variable; " + t.summary();
    return t.ok();
}

bool c7(Engines& E, std::string& detail) {
    Tally t;
    for (auto& [n, e] : E.both())
        for (auto& p : e->path_checks()) t.add(p.agree, n + " (" + genus_text(p.key.two_g) + "," + std::to_string(p.key.arity) + ")");
    detail = "recursion 1 == recursion 2 on every computed entry; " + t.summary();
    return t.ok() && t.total > 0;
}

bool c8(Engines& E, std::string& detail) {
    Tally t;
    auto dil = [&](const std::string& n, RecursionEngine& e, int g2, int nn) {
        DilatonResult d = check_dilaton(e, g2, nn);
        t.add(d.pass, n + " (" + genus_text(g2) + "," + std::to_string(nn) + ")");
    };
    for (auto& [n, e] : E.both()) {
        dil(n, *e, 0, 0);
        dil(n, *e, 0, 1);
        dil(n, *e, 1, 0);
    }
    stable_upto(2, [&](int g2, int a) { dil("airy", E.ea, g2, a - 1); });
    // four_pole (1/2,3) pairs against omega_{1/2,5}, which exceeds the budget.
    std::string skipped;
    E.ep.set_cross_check(false);
    stable_upto(2, [&](int g2, int a) {
        if (g2 == 1 && a == 4) {
            skipped = "four_pole (1/2,3)";
            t.add(false, skipped + " not verified: omega_{1/2,5} not computable within budget");
            return;
        }
        dil("four_pole", E.ep, g2, a - 1);
    });
    E.ep.set_cross_check(true);
    detail = "unstable instances and stable 2g-2+n <= 2 on both curves; " + t.summary();
    return t.ok();
}

bool c9(Engines& E, std::string& detail) {
    Tally t;
    for (auto& [n, e] : E.both())
        for (auto& k : stable_keys(*e))
            if (k.flavor == Flavor::QTop && e->has(k.two_g, k.arity, Flavor::Full)) t.add(check_qtop(*e, k.two_g, k.arity));
    RecursionEngine tower(E.app);
    tower.omega(7, 1, Flavor::QTop);
    bool separate = true;
    for (auto& k : stable_keys(tower)) separate = separate && k.flavor == Flavor::QTop && k.arity <= 2;
    t.add(separate, "qtop tower through 2g=7 touched an entry with n>=2 or a full entry");
    detail = "varpi == [Q^2g] omega on jointly computed entries, tower to 2g=7 without arity>=3; " + t.summary();
    return t.ok();
}

bool c10(Engines& E, std::string& detail) {
    Tally t;
    std::string line;
    for (auto& [n, e] : E.both()) {
        WKBData w = wkb_coefficients(*e, 6);
        QuantumCurve q = emit_quantum_curve(e->curve(), w);
        for (int k = 0; k <= 6; ++k) {
            t.add(w.invariant[k], n + " Q_" + std::to_string(k) + " invariant");
            t.add(w.residual_zero[k], n + " Q_" + std::to_string(k) + " residual");
            t.add(q.lift_ok[k], n + " Qbar_" + std::to_string(k) + " lift");
        }
        if (n == "airy") {
            line = q.operator_line();
            t.add(line.rfind("Δŷ² − x", 0) == 0, "airy operator " + line);
            t.add(w.Q[1].is_zero(), "airy Q_1 != 0");
        }
    }
    detail = "k<=6 on both curves, airy operator '" + line + "'; " + t.summary();
    return t.ok();
}

bool c11(Engines& E, std::string& detail) {
    Tally t, dil;
    std::string ratios;
    Frac alpha = Frac::var(var_id("alpha"));
    for (uint64_t s : kSeeds) {
        CurveConfig cfg = sample_parameters(E.app_cfg, s);
        SpectralCurve c(cfg);
        RecursionEngine e(c);
        Frac d = free_energy(e, 4, {alpha}) - free_energy(e, 4);
        Frac Q = Frac::var(qvar()), mu0 = c.parse("mu0"), l0 = c.parse("l0");
        Frac target = alpha * mu0 * Q * Q * (Frac(1) - (mu0 * mu0 * Q * Q).scale(2)) / (l0 * l0 * l0).scale(48);
        t.add(d == target, "seed " + std::to_string(s) + ": F2^U-F2 = " + to_string(d));
        ratios += (ratios.empty() ? "" : ",") + to_string(d / target);
        for (auto [g2, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}})
            dil.add(check_dilaton(e, g2, n, {alpha}).pass, "seed " + std::to_string(s) + " U-dilaton");
    }
    detail = "F2^U-F2 vs alpha mu0 Q^2 (1-2mu0^2Q^2)/(48 l0^3) at 3 sampled tuples: " + t.summary() +
             "; measured/expected = {" + ratios + "}; U-shifted dilaton: " + dil.summary();
    return t.ok() && dil.ok();
}

bool c12(Engines& E, std::string& detail) {
    Tally t;
    auto render = [&](const CurveConfig& cfg) {
        SpectralCurve c(cfg);
        RecursionEngine e(c);
        std::string s;
        for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {0, 3}, {2, 2}, {1, 3}})
            s += serialize_diff(e.omega(g, a), a) + serialize_diff(e.omega(g, a), a, DiffFormat::CoefficientTable);
        s += to_string(free_energy(e, 4));
        return s;
    };
    std::string a = render(E.app_cfg), b = render(E.app_cfg);
    t.add(a == b, "repeated run differs");
    fs::path dir = fs::temp_directory_path() / ("rtr-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    DiskCache cache(dir);
    cache.save(E.ep, E.app_cfg);
    RecursionEngine warm(E.app);
    int restored = cache.restore(warm, E.app_cfg, 2);
    t.add(restored > 0, "nothing restored");
    for (auto& k : stable_keys(E.ep))
        if (level(k.two_g, k.arity) <= 2)
            t.add(serialize_diff(warm.omega(k.two_g, k.arity, k.flavor), k.arity) ==
                      serialize_diff(E.ep.omega(k.two_g, k.arity, k.flavor), k.arity),
                  "cache hit differs");
    fs::remove_all(dir);
    detail = "byte-identical repeated runs and cache round trip (" + std::to_string(restored) + " entries); " + t.summary();
    return t.ok();
}

}  // namespace

int main() {
    Engines E;
    std::vector<std::function<bool(Engines&, std::string&)>> crit{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
    bool all = true;
    for (size_t i = 0; i < crit.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = crit[i](E, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream o;
        o.precision(1);
        o << std::fixed << secs;
        std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " [" << o.str() << "s] " << detail << std::endl;
        all = all && ok;
    }
    return all ? 0 : 1;
}
