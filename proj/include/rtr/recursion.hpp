#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rtr/curve.hpp"

namespace rtr {

enum class Flavor { Full = 0, QTop = 1, Unrefined = 2 };
std::string flavor_name(Flavor f);

struct RecursionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingDependency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 2g-2+n for omega_{g,n+1}.
inline int level(int two_g, int arity) { return two_g - 2 + (arity - 1); }

struct StoreKey {
    int two_g, arity;
    Flavor flavor;
    friend bool operator<(const StoreKey& a, const StoreKey& b) {
        return std::tie(a.two_g, a.arity, a.flavor) < std::tie(b.two_g, b.arity, b.flavor);
    }
};

struct PathCheck {
    StoreKey key;
    bool agree;
};

// Memoised refined recursion for the full and Q-top flavours.  Entries are
// coefficients of dz0...dzn as Fracs in zvar(0..n).
class RecursionEngine {
public:
    explicit RecursionEngine(const SpectralCurve& c);

    const SpectralCurve& curve() const { return curve_; }

    // Returns the stored entry, computing it (and its dependencies) on demand.
    const Frac& omega(int two_g, int arity, Flavor fl = Flavor::Full);
    bool has(int two_g, int arity, Flavor fl = Flavor::Full) const;
    // Overwrite or preload an entry (cache restore, mutation tests).
    void put(int two_g, int arity, Flavor fl, const Frac& f);
    const std::map<StoreKey, Frac>& entries() const { return store_; }

    // Entry with z_i replaced by slots[i]; repeated slots give diagonals.
    Frac instantiate(int two_g, int arity, Flavor fl, const std::vector<int>& slots);

    // Terms of Rec_{g,n+1}(p, z1..zn); their sum is Rec.
    std::vector<Frac> rec_terms(int two_g, int arity, Flavor fl, int pvar);
    Frac rec(int two_g, int arity, Flavor fl, int pvar);

    // Evaluation through both recursion formulae; throws RecursionMismatch if
    // they disagree.
    void set_cross_check(bool on) { cross_check_ = on; }
    const std::vector<PathCheck>& path_checks() const { return checks_; }

    // Recursion 1 and 2 on explicit Rec terms. Recursion 1 is summed
    // exactly only when asked; otherwise the two are compared mod p at
    // random points.
    struct Paths {
        Frac rec2;
        std::optional<Frac> rec1;
        bool agree = true;
    };
    Paths evaluate(const std::vector<Frac>& terms, int arity, bool exact = false);

private:
    const SpectralCurve& curve_;
    std::map<StoreKey, Frac> store_;
    std::map<std::pair<StoreKey, std::vector<int>>, Frac> inst_;
    std::map<std::pair<int, int>, Frac> cross_;  // (pvar, j)
    std::vector<PathCheck> checks_;
    bool cross_check_ = true;

    Frac compute(int two_g, int arity, Flavor fl);
    const Frac& cross_factor(int pvar, int zj);
};

// Coefficient of Q^k; requires a Q-free denominator.
Frac q_coeff(const Frac& f, int k);
int q_degree(const Frac& f);  // -1 for zero

}  // namespace rtr
