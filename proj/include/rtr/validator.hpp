#pragma once

#include <string>
#include <vector>

#include "rtr/oracle.hpp"
#include "rtr/recursion.hpp"

namespace rtr {

struct CheckReport {
    std::string name;
    int two_g = 0, arity = 0;
    Flavor flavor = Flavor::Full;
    bool pass = false;
    std::string witness;  // empty on pass
    std::string mode;     // "exact" or "sampled seed=N"

    std::string line() const;
};

// 2g as text: 3 -> "3/2"
std::string genus_text(int two_g);

CheckReport check_symmetry(RecursionEngine& e, int two_g, int arity, Flavor fl);
CheckReport check_residues(RecursionEngine& e, int two_g, int arity, Flavor fl);
CheckReport check_pole_locus(RecursionEngine& e, int two_g, int arity, Flavor fl);
CheckReport check_q_degree(RecursionEngine& e, int two_g, int arity, Flavor fl);
// symmetry, residues, pole locus and Q-degree together
std::vector<CheckReport> check_structural(RecursionEngine& e, int two_g, int arity, Flavor fl = Flavor::Full);

// Q_{g,n+1}/(2 omega_{0,1}) holomorphic at every ramification point and anti-invariant.
CheckReport check_loop_equation(RecursionEngine& e, int two_g, int arity);

// Invariant part identities: Q^0 sector, (1/2,2), (1,1), and the Q-top family.
std::vector<CheckReport> check_linear_loop(RecursionEngine& e, int two_g, int arity, Flavor fl);

CheckReport compare_q0(RecursionEngine& e, UnrefinedOracle& o, int two_g, int arity);

CheckReport check_qtop(RecursionEngine& e, int two_g, int arity);

// Everything at levels <= depth, WKB through kmax, dilaton where the next
// level is available.
std::vector<CheckReport> validate_all(RecursionEngine& e, int depth, int kmax);

// Each check run once on a deliberately corrupted store; every report
// returned here is expected to fail.
std::vector<CheckReport> negative_controls(const SpectralCurve& c);

}  // namespace rtr
