#pragma once

#include <optional>
#include <vector>

#include "rtr/recursion.hpp"

namespace rtr {

struct ResiduePresent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Primitive phi of omega_{0,1}, optionally shifted by U = alpha*log x.
struct PrimitiveSpec {
    std::optional<Frac> alpha;
};

// sum over poles of Res_{v=r} (phi + U)(v) * f(v) dv, by parts against local
// antiderivatives of f.  Other variables are spectators.
Frac pairing_with_primitive(const SpectralCurve& c, const Frac& f, int v, const std::vector<Point>& poles,
                            const PrimitiveSpec& spec = {});
// Only the U part: - sum Res I_r[f] * alpha dx/x.
Frac u_pairing(const SpectralCurve& c, const Frac& f, int v, const std::vector<Point>& poles, const Frac& alpha);

// Poles of f in v that the dilaton contour encloses: every pole of f except
// ineffective ramification points and poles of omega_{0,1}; infinity included
// when applicable.
std::vector<Point> contour_poles(const SpectralCurve& c, const Frac& f, int v);

struct DilatonResult {
    Frac lhs, rhs;
    bool pass;
};
// (2-2g-n-1) omega_{g,n+1}(z0..zn) against the pairing of omega_{g,n+2}(p, z0..zn).
DilatonResult check_dilaton(RecursionEngine& e, int two_g, int n, const PrimitiveSpec& spec = {});

// F_g = 1/(2-2g) * pairing of omega_{g,1} over R* and sigma(P~+^(0)); 2g > 2.
Frac free_energy(RecursionEngine& e, int two_g, const PrimitiveSpec& spec = {});
std::vector<Point> free_energy_poles(const SpectralCurve& c);

}  // namespace rtr
