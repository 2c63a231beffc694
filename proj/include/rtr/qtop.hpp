#pragma once

#include <string>
#include <vector>

#include "rtr/recursion.hpp"

namespace rtr {

struct DescentFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// varpi_{g,n+1} = [Q^{2g}] omega_{g,n+1}
bool check_qtop_consistency(RecursionEngine& e, int two_g, int arity);

// Right-hand side of the invariant-part identity for varpi_{g,n+1}, as the
// coefficient of dz0...dzn.
Frac qtop_linear_loop_rhs(RecursionEngine& e, int two_g, int arity);
// I_0 varpi_{g,n+1}
Frac qtop_invariant_part(RecursionEngine& e, int two_g, int arity);

struct WKBData {
    int kmax = 0;
    std::vector<Frac> S;        // S[k+1] = S_k for k = -1..kmax
    std::vector<Frac> Q;        // Q_k from the WKB relation, k = 0..kmax
    std::vector<Frac> Qdirect;  // Q_k from the defining formulae
    std::vector<bool> invariant;
    std::vector<bool> residual_zero;
};
WKBData wkb_coefficients(RecursionEngine& e, int kmax);

// Rewrites a sigma-invariant function of t as a function of xvar().
Frac descend(const SpectralCurve& c, const Frac& f);

struct QuantumCurve {
    std::vector<Frac> qbar;      // Qbar_l(x)
    std::vector<bool> lift_ok;   // Qbar_l(x(t)) == Q_l(t)
    std::string operator_line() const;
};
QuantumCurve emit_quantum_curve(const SpectralCurve& c, const WKBData& w);

}  // namespace rtr
