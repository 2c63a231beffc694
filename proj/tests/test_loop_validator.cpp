#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rtr/qtop.hpp"
#include "rtr/validator.hpp"

using namespace rtr;
using rtr::test::curve_file;

namespace {

struct Both : ::testing::TestWithParam<const char*> {
    SpectralCurve c{curve_file(GetParam())};
};

}  // namespace

TEST_P(Both, LoopEquationLowLevels) {
    RecursionEngine e(c);
    for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {0, 3}, {3, 1}, {2, 2}, {1, 3}}) {
        CheckReport r = check_loop_equation(e, g, a);
        EXPECT_TRUE(r.pass) << r.line();
    }
}

TEST_P(Both, StructuralLowLevels) {
    RecursionEngine e(c);
    for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {0, 3}, {3, 1}, {2, 2}, {1, 3}, {0, 4}})
        for (Flavor fl : {Flavor::Full, Flavor::QTop})
            for (auto& r : check_structural(e, g, a, fl)) EXPECT_TRUE(r.pass) << r.line();
}

TEST_P(Both, LinearLoop) {
    RecursionEngine e(c);
    for (auto [g, a] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {0, 3}, {3, 1}})
        for (Flavor fl : {Flavor::Full, Flavor::QTop})
            for (auto& r : check_linear_loop(e, g, a, fl)) EXPECT_TRUE(r.pass) << r.line();
}

TEST_P(Both, NegativeControlsFail) {
    auto rs = negative_controls(c);
    EXPECT_GE(rs.size(), 9u);
    for (auto& r : rs) {
        EXPECT_FALSE(r.pass) << r.line();
        EXPECT_FALSE(r.witness.empty()) << r.line();
    }
}

TEST_P(Both, ValidateDepthZero) {
    RecursionEngine e(c);
    for (auto& r : validate_all(e, 0, 2)) EXPECT_TRUE(r.pass) << r.line();
}

INSTANTIATE_TEST_SUITE_P(Curves, Both, ::testing::Values("airy.curve", "four_pole.curve"));

TEST(Validator, HalfTwoDegreeExactlyOne) {
    SpectralCurve c(curve_file("airy.curve"));
    RecursionEngine e(c);
    EXPECT_EQ(q_degree(e.omega(1, 2)), 1);
    EXPECT_TRUE(check_q_degree(e, 1, 2, Flavor::Full).pass);
}

TEST(Validator, ThreeHalvesInvariantPart) {
    SpectralCurve c(curve_file("four_pole.curve"));
    RecursionEngine e(c);
    const int z0 = zvar(0);
    Frac w2 = c.omega01(z0).scale(2);
    Frac a = -anti_part(e.omega(2, 1, Flavor::QTop), z0) / w2;
    Frac b = -anti_part(e.omega(1, 1, Flavor::QTop), z0) / w2;
    Frac rhs = (a + (b * b).scale(Rational(1, 2))).deriv(z0);
    EXPECT_EQ(qtop_invariant_part(e, 3, 1), rhs);
    EXPECT_EQ(qtop_linear_loop_rhs(e, 3, 1), rhs);
}

TEST(Validator, ReportLine) {
    CheckReport r;
    r.name = "symmetry";
    r.two_g = 1;
    r.arity = 2;
    r.flavor = Flavor::Full;
    r.pass = false;
    r.witness = "w";
    EXPECT_EQ(r.line(), "check=symmetry target=(1/2,2) flavor=full verdict=fail witness=w");
    r.pass = true;
    EXPECT_EQ(r.line(), "check=symmetry target=(1/2,2) flavor=full verdict=pass");
}
