#include <gtest/gtest.h>

#include <functional>

#include "helpers.hpp"
#include "rtr/oracle.hpp"
#include "rtr/recursion.hpp"
#include "rtr/validator.hpp"

using namespace rtr;
using rtr::test::curve_file;
using rtr::test::P;

namespace {

// Witten-Kontsevich numbers <tau_d1 ... tau_dn>_g needed below.
Rational wk(std::vector<int> d) {
    std::sort(d.begin(), d.end());
    static const std::map<std::vector<int>, Rational> table{
        {{0, 0, 0}, Rational(1)},       {{1}, Rational(1, 24)},         {{0, 0, 0, 1}, Rational(1)},
        {{0, 2}, Rational(1, 24)},      {{1, 1}, Rational(1, 24)},      {{4}, Rational(1, 1152)},
        {{0, 0, 0, 0, 2}, Rational(1)}, {{0, 0, 0, 1, 1}, Rational(2)}, {{0, 0, 3}, Rational(1, 24)},
        {{0, 1, 2}, Rational(1, 12)},   {{1, 1, 1}, Rational(1, 12)}};
    auto it = table.find(d);
    return it == table.end() ? Rational(0) : it->second;
}

long dfact(int k) {
    long r = 1;
    for (int i = k; i > 1; i -= 2) r *= i;
    return r;
}

// Airy omega^{(0)}_{g,n} = (-1)^n 2^{-(2g-2+n)} sum <tau_d> prod (2d_i+1)!!/z_i^{2d_i+2}.
Frac airy_wk(int g, int n) {
    int total = 3 * g - 3 + n;
    Frac acc;
    std::vector<int> d(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            d[i] = left;
            Rational c = wk(d);
            if (c == 0) return;
            Frac term(c);
            for (int j = 0; j < n; ++j)
                term *= Frac::ratio(Poly(dfact(2 * d[j] + 1)), Poly::var(zvar(j), 2 * d[j] + 2));
            acc += term;
            return;
        }
        for (int k = 0; k <= left; ++k) {
            d[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, total);
    Rational s(1);
    for (int k = 0; k < 2 * g - 2 + n; ++k) s /= 2;
    if (n % 2) s = -s;
    return acc.scale(s);
}

struct Airy : ::testing::Test {
    SpectralCurve c{curve_file("airy.curve")};
};

struct FourPole : ::testing::Test {
    SpectralCurve c{curve_file("four_pole.curve")};
};

}  // namespace

TEST(Level, Formula) {
    EXPECT_EQ(level(0, 3), 0);
    EXPECT_EQ(level(1, 2), 0);
    EXPECT_EQ(level(2, 1), 0);
    EXPECT_EQ(level(1, 1), -1);
    EXPECT_EQ(level(4, 1), 2);
}

TEST_F(Airy, WittenKontsevichOracle) {
    RecursionEngine e(c);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}, {0, 5}, {1, 3}})
        EXPECT_EQ(q_coeff(e.omega(2 * g, n), 0), airy_wk(g, n)) << "g=" << g << " n=" << n;
}

TEST_F(Airy, IndependentOracleAgreesWithWittenKontsevich) {
    UnrefinedOracle o(c);
    EXPECT_EQ(o.omega(0, 3), airy_wk(0, 3));
    EXPECT_EQ(o.omega(1, 1), airy_wk(1, 1));
    EXPECT_EQ(o.omega(1, 2), airy_wk(1, 2));
    EXPECT_EQ(o.omega(2, 1), airy_wk(2, 1));
}

TEST_F(Airy, KnownEntries) {
    RecursionEngine e(c);
    EXPECT_EQ(e.omega(0, 3), P("-1/(2*z0^2*z1^2*z2^2)"));
    EXPECT_EQ(e.omega(2, 1), P("(-5*Q^2-1)/(16*z0^4)"));
}

TEST_F(Airy, HalfTwo) {
    RecursionEngine e(c);
    const Frac& w = e.omega(1, 2);
    EXPECT_EQ(q_degree(w), 1);
    EXPECT_TRUE(q_coeff(w, 0).is_zero());
    EXPECT_TRUE(check_symmetry(e, 1, 2, Flavor::Full).pass);
    EXPECT_TRUE(check_pole_locus(e, 1, 2, Flavor::Full).pass);
}

TEST_F(Airy, UnstablePassthrough) {
    RecursionEngine e(c);
    EXPECT_EQ(e.omega(0, 2), c.omega02(zvar(0), zvar(1)));
    EXPECT_EQ(e.omega(0, 2, Flavor::QTop), c.omega02(zvar(0), zvar(1)));
    EXPECT_EQ(e.omega(1, 1), c.omega_half1(zvar(0)));
    EXPECT_THROW(e.omega(0, 2, Flavor::Unrefined), MissingDependency);
}

TEST_F(Airy, CrossPath) {
    RecursionEngine e(c);
    e.omega(1, 2);
    e.omega(2, 1);
    e.omega(1, 3);
    ASSERT_FALSE(e.path_checks().empty());
    for (auto& p : e.path_checks()) EXPECT_TRUE(p.agree);
    for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}}) {
        auto paths = e.evaluate(e.rec_terms(g, a, Flavor::Full, tvar()), a, true);
        ASSERT_TRUE(paths.rec1);
        EXPECT_EQ(*paths.rec1, paths.rec2);
        EXPECT_TRUE(e.evaluate(e.rec_terms(g, a, Flavor::Full, tvar()), a).agree);
        EXPECT_EQ(paths.rec2, e.omega(g, a));
    }
}

TEST_F(Airy, OracleThroughLevelThree) {
    RecursionEngine e(c);
    UnrefinedOracle o(c);
    for (int L = 0; L <= 3; ++L)
        for (int a = 1; a <= L + 3; ++a) {
            int g2 = L + 3 - a;
            if (g2 < 0 || g2 % 2) continue;
            EXPECT_EQ(q_coeff(e.omega(g2, a), 0), o.omega(g2 / 2, a)) << g2 << "," << a;
        }
}

TEST_F(FourPole, OracleAndCrossPath) {
    RecursionEngine e(c);
    UnrefinedOracle o(c);
    EXPECT_EQ(e.omega(0, 3), o.omega(0, 3));
    EXPECT_EQ(q_coeff(e.omega(2, 1), 0), o.omega(1, 1));
    EXPECT_EQ(q_coeff(e.omega(4, 1), 0), o.omega(2, 1));
    for (auto& p : e.path_checks()) EXPECT_TRUE(p.agree);
    auto paths = e.evaluate(e.rec_terms(0, 3, Flavor::Full, tvar()), 3, true);
    EXPECT_EQ(*paths.rec1, e.omega(0, 3));
}

TEST_F(FourPole, QDegreeAndParity) {
    RecursionEngine e(c);
    for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 1}, {2, 2}, {4, 1}}) {
        EXPECT_LE(q_degree(e.omega(g, a)), g);
        EXPECT_TRUE(check_q_degree(e, g, a, Flavor::Full).pass);
    }
}

// The two paths differ by the residue theorem on P^1, so they agree for any
// rational integrand; a spurious pole moves both results together.
TEST_F(FourPole, PathsAgreeForArbitraryIntegrand) {
    RecursionEngine e(c);
    auto terms = e.rec_terms(1, 2, Flavor::Full, tvar());
    auto base = e.evaluate(terms, 2);
    terms.push_back(Frac::ratio(Poly(1), Poly::var(tvar()) - Poly(5)));
    auto paths = e.evaluate(terms, 2, true);
    EXPECT_EQ(*paths.rec1, paths.rec2);
    EXPECT_TRUE(paths.agree);
    EXPECT_TRUE(e.evaluate(terms, 2).agree);
    EXPECT_NE(paths.rec2, base.rec2);
}

TEST(Recursion, InstantiateDiagonal) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    Frac d = e.instantiate(0, 3, Flavor::Full, {tvar(), tvar(), zvar(1)});
    EXPECT_EQ(d, P("-1/(2*t^4*z1^2)"));
    Frac r = e.instantiate(0, 2, Flavor::Full, {zvar(1), tvar()});
    EXPECT_EQ(r, P("1/(z1+t)^2"));
}

TEST(Recursion, QCoeff) {
    Frac f = P("(Q^2+3*Q*z+1)/z");
    EXPECT_EQ(q_coeff(f, 1), Frac(3));
    EXPECT_EQ(q_coeff(f, 2), P("1/z"));
    EXPECT_EQ(q_degree(f), 2);
    EXPECT_THROW(q_coeff(P("1/(Q+z)"), 0), std::runtime_error);
}
