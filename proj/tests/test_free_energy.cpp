#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rtr/free_energy.hpp"
#include "rtr/oracle.hpp"

using namespace rtr;
using rtr::test::curve_file;
using rtr::test::P;

TEST(Pairing, DilatonZeroTwo) {
    SpectralCurve c(curve_file("four_pole.curve"));
    const int z0 = zvar(0), z1 = zvar(1);
    Frac w = c.omega02(z0, z1);
    Point pole = Point::finite(-Poly::var(z1));
    EXPECT_EQ(pairing_with_primitive(c, w, z0, {pole}), c.omega01(z1));
}

TEST(Pairing, DilatonZeroThree) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    EXPECT_TRUE(pairing_with_primitive(c, e.omega(0, 3), zvar(0), {Point::finite(0)}).is_zero());
    EXPECT_TRUE(pairing_with_primitive(c, e.omega(0, 3), zvar(0), {}).is_zero());
}

TEST(Pairing, ResidueRejected) {
    SpectralCurve c(curve_file("airy.curve"));
    EXPECT_THROW(pairing_with_primitive(c, P("1/z0"), zvar(0), {Point::finite(0)}), ResiduePresent);
}

TEST(ContourPoles, AiryExcludesInfinity) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    auto ps = contour_poles(c, e.omega(0, 3), zvar(0));
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0], Point::finite(0));
}

TEST(Dilaton, Airy) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {2, 1}})
        EXPECT_TRUE(check_dilaton(e, g, n).pass) << g << "," << n;
}

TEST(Dilaton, FourPole) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {3, 0}})
        EXPECT_TRUE(check_dilaton(e, g, n).pass) << g << "," << n;
}

TEST(Dilaton, UShiftStable) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    PrimitiveSpec U{Frac::var(var_id("alpha"))};
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}})
        EXPECT_TRUE(check_dilaton(e, g, n, U).pass) << g << "," << n;
}

TEST(FreeEnergy, MatchesOracleAtQZero) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    UnrefinedOracle o(c);
    Frac F2 = free_energy(e, 4);
    EXPECT_EQ(q_coeff(F2, 0), o.free_energy(2));
    EXPECT_EQ(q_coeff(F2, 0), P("-137/34560"));
}

TEST(FreeEnergy, AiryVanishes) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    EXPECT_TRUE(free_energy(e, 4).is_zero());
}

TEST(FreeEnergy, UShiftIsLinearInAlpha) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    Frac a = Frac::var(var_id("alpha"));
    Frac d1 = free_energy(e, 4, {a}) - free_energy(e, 4);
    Frac d2 = free_energy(e, 4, {a.scale(2)}) - free_energy(e, 4);
    EXPECT_EQ(d2, d1.scale(2));
    EXPECT_FALSE(d1.is_zero());
}
