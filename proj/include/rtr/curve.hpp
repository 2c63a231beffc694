#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtr/config.hpp"
#include "rtr/frac.hpp"
#include "rtr/series.hpp"

namespace rtr {

struct CurveError : std::runtime_error {
    std::string kind;
    CurveError(const std::string& k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(k) {}
};

// A point of P-tilde in the working chart.
struct PTildePoint {
    Poly at;         // chart coordinate
    int order = 0;   // order of Delta y * dx there (negative for poles)
    bool plus = false;
    Frac mu;         // only for plus points
    std::string user;  // coordinate in the user's chart
};

struct RamPoint {
    Point at;  // chart coordinate (0 or infinity)
    bool effective = false;
    std::string user;
};

// Genus-zero curve in a chart where the involution is t -> -t.  All functions
// are Fracs in tvar() with parameters and Q as further symbols.
class SpectralCurve {
public:
    explicit SpectralCurve(const CurveConfig& cfg);

    const CurveConfig& config() const { return cfg_; }

    const Frac& x() const { return x_; }
    const Frac& y() const { return y_; }
    const Frac& dx() const { return xp_; }       // dx/dt
    const Frac& delta_y() const { return dy_; }  // y(t) - y(-t)
    const Frac& w01() const { return w01_; }     // coefficient of omega_{0,1}
    const Frac& chart() const { return phi_; }   // user coordinate as a function of t

    const std::vector<RamPoint>& ramification() const { return ram_; }
    const std::vector<PTildePoint>& ptilde() const { return pt_; }
    std::vector<PTildePoint> ptilde_plus() const;
    std::vector<Point> effective_points() const;

    bool has_relation() const { return has_rel_; }
    const Frac& rel_a() const { return a_; }
    const Frac& rel_b() const { return b_; }
    const Frac& rel_c() const { return c_; }

    // Symbols for the parameters that stay symbolic.
    const std::vector<std::string>& symbolic_params() const { return symbolic_; }
    const std::map<std::string, Rational>& pinned_params() const { return pinned_; }

    // Coefficients of the unstable differentials in the given variables.
    Frac x_in(int v) const { return rename_t(x_, v); }
    Frac dx_in(int v) const { return rename_t(xp_, v); }
    Frac omega01(int v) const { return rename_t(w01_, v); }
    Frac omega02(int v0, int v1) const;
    Frac eta(int v0, const Poly& p) const;  // eta^p(v0)
    Frac eta_var(int v0, int vp) const;      // eta^{vp}(v0), vp symbolic
    Frac omega_half1(int v) const { return rename_t(wh_, v); }
    // sum_p mu_p eta^p(v): the Q-free part of omega_{1/2,1} without the log term
    Frac mu_eta(int v) const { return rename_t(mueta_, v); }

    // Converts a chart point to user text.
    std::string user_point(const Point& p) const;

    Frac parse(const std::string& expr) const;  // expression in user z and parameters

private:
    CurveConfig cfg_;
    Frac phi_, phi_inv_;  // user z = phi(t);  t = phi_inv(z) in tvar
    Frac x_, y_, xp_, dy_, w01_, wh_, mueta_;
    bool has_rel_ = false;
    Frac a_, b_, c_;
    std::vector<RamPoint> ram_;
    std::vector<PTildePoint> pt_;
    std::vector<std::string> symbolic_;
    std::map<std::string, Rational> pinned_;

    static Frac rename_t(const Frac& f, int v);
    void build_chart();
    void classify();
};

// sigma-split of a differential coefficient f(v) dv: invariant part f(v) - f(-v)
// (as coefficients, since d(-v) = -dv) and anti-invariant part.
Frac sigma_pullback(const Frac& f, int v);  // coefficient of sigma^* (f dv)
Frac invariant_part(const Frac& f, int v);  // I f = f + sigma^* f
Frac anti_part(const Frac& f, int v);       // Delta f = f - sigma^* f

// Pins every parameter to a nonzero rational drawn from seed; draws that make
// the curve degenerate are discarded.  Portable across standard libraries.
CurveConfig sample_parameters(const CurveConfig& cfg, uint64_t seed);

}  // namespace rtr
