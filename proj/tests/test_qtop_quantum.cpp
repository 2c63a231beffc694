#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rtr/qtop.hpp"

using namespace rtr;
using rtr::test::curve_file;
using rtr::test::P;

TEST(QTop, ConsistencyAiry) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    EXPECT_TRUE(check_qtop_consistency(e, 2, 1));
    EXPECT_TRUE(check_qtop_consistency(e, 0, 3));
    EXPECT_TRUE(check_qtop_consistency(e, 1, 2));
}

TEST(QTop, ConsistencyFourPole) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    EXPECT_TRUE(check_qtop_consistency(e, 1, 2));
    EXPECT_TRUE(check_qtop_consistency(e, 3, 1));
    EXPECT_TRUE(check_qtop_consistency(e, 2, 2));
}

TEST(QTop, TowerNeedsOnlyLowArity) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    e.omega(7, 1, Flavor::QTop);
    for (auto& [k, f] : e.entries()) {
        if (k.flavor == Flavor::QTop) EXPECT_LE(k.arity, 2) << k.two_g << "," << k.arity;
        if (level(k.two_g, k.arity) >= 0) EXPECT_NE(k.flavor, Flavor::Full);
    }
}

TEST(WKB, AiryOperator) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    WKBData w = wkb_coefficients(e, 4);
    QuantumCurve q = emit_quantum_curve(c, w);
    EXPECT_EQ(q.operator_line(), "Δŷ² − x");
    EXPECT_EQ(q.qbar[0], Frac::var(xvar()));
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(q.qbar[k].is_zero());
    EXPECT_EQ(w.S[0], P("z0"));
}

TEST(WKB, FourPoleResidualAndLift) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    WKBData w = wkb_coefficients(e, 6);
    QuantumCurve q = emit_quantum_curve(c, w);
    for (int k = 0; k <= 6; ++k) {
        EXPECT_TRUE(w.invariant[k]) << k;
        EXPECT_TRUE(w.residual_zero[k]) << k;
        EXPECT_TRUE(q.lift_ok[k]) << k;
    }
    // a = 4x^2, b = 0: Qbar_0 = (x^2 + 4 linf x + 4 l0^2)/(4x^2) with l0 = 3/2, linf = -5/2
    EXPECT_EQ(q.qbar[0], P("(x^2-10*x+9)/(4*x^2)"));
    EXPECT_EQ(q.qbar[0], (c.rel_b() * c.rel_b() - c.rel_a() * c.rel_c().scale(4)) / (c.rel_a() * c.rel_a()).scale(4));
}

TEST(Descent, EvenFunctions) {
    SpectralCurve c(curve_file("four_pole.curve"));
    const int t = tvar();
    Frac x = c.x();
    Frac f = x * x + Frac(3) / x;
    EXPECT_EQ(descend(c, f), P("x^2+3/x"));
    EXPECT_THROW(descend(c, Frac::var(t)), DescentFailure);
}
