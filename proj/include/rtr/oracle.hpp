#pragma once

#include <map>
#include <utility>

#include "rtr/curve.hpp"

namespace rtr {

// Plain Eynard-Orantin recursion at Q = 0: residues at effective ramification
// points only, with the sigma-symmetrised recursion integrand.  Shares nothing
// with RecursionEngine beyond the algebra layer and the curve data.
class UnrefinedOracle {
public:
    explicit UnrefinedOracle(const SpectralCurve& c);

    // omega^{(0)}_{g,n+1} for integer g, as a Frac in z0..zn.
    const Frac& omega(int g, int arity);
    // F_g for g >= 2 from a local primitive of omega_{0,1} at each effective point.
    Frac free_energy(int g);

private:
    const SpectralCurve& curve_;
    std::map<std::pair<int, int>, Frac> memo_;
    Frac piece(int g, const std::vector<int>& vars);
};

// sum_{i+j=-1} a_i b_j for germs at the same point
Frac residue_of_product(const Laurent& a, const Laurent& b);

}  // namespace rtr
