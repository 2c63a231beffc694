#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace rtr;
using rtr::test::curve_file;
using rtr::test::inline_curve;
using rtr::test::P;

namespace {

std::string kind_of(const CurveConfig& cfg) {
    try {
        SpectralCurve c(cfg);
    } catch (const CurveError& e) {
        return e.kind;
    }
    return "";
}

Frac T() { return Frac::var(tvar()); }

}  // namespace

TEST(Config, AiryMinimal) {
    CurveConfig cfg = curve_file("airy.curve");
    EXPECT_EQ(cfg.x, "z^2");
    EXPECT_EQ(cfg.y, "z");
    EXPECT_EQ(cfg.sigma, "-z");
    EXPECT_TRUE(cfg.has_relation());
}

TEST(Config, RoundTrip) {
    for (auto name : {"airy.curve", "four_pole.curve"}) {
        CurveConfig cfg = curve_file(name);
        std::string s = serialize_curve_config(cfg);
        EXPECT_EQ(serialize_curve_config(parse_curve_config(s)), s);
    }
}

TEST(Config, HashIgnoresWhitespace) {
    CurveConfig a = inline_curve("z^2", "z", "-z");
    CurveConfig b = parse_curve_config("# comment\n[curve]\n  x=z ^ 2\ny   = z\nsigma = - z\n");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(inline_curve("z^2", "2*z", "-z")));
}

TEST(Config, Diagnostics) {
    auto where = [](const std::string& text) -> std::pair<int, int> {
        try {
            parse_curve_config(text);
        } catch (const ConfigError& e) {
            return {e.line, e.col};
        }
        return {0, 0};
    };
    EXPECT_EQ(where("[curve]\nx = z^2\nfoo = 1\n").first, 3);
    EXPECT_EQ(where("[curve]\nx = z^2\ny = z\nsigma = -z\n[parameters]\na = 1\na = 2\n").first, 7);
    EXPECT_EQ(where("[curve]\nx = z^2\ny = z\nsigma = -z\n[ptilde_plus]\nmu = 1\n").first, 6);
    EXPECT_EQ(where("[bogus]\n").first, 1);
    EXPECT_EQ(where("[curve]\nx = z^2\ny = z\nsigma = -z\n"), std::make_pair(0, 0));
}

TEST(Config, ParamOverrides) {
    CurveConfig cfg = curve_file("four_pole.curve");
    apply_param_overrides(cfg, "l0=5/2, m=symbolic");
    EXPECT_EQ(*cfg.param("l0"), "5/2");
    EXPECT_EQ(*cfg.param("m"), "symbolic");
    EXPECT_THROW(apply_param_overrides(cfg, "nope=1"), std::runtime_error);
}

TEST(Curve, AiryValid) {
    SpectralCurve c(curve_file("airy.curve"));
    EXPECT_EQ(c.x(), T() * T());
    EXPECT_EQ(c.w01(), T() * T() * Frac(2));
}

TEST(Curve, Rejections) {
    CurveConfig shift = inline_curve("z^2", "z", "z+1");
    EXPECT_EQ(kind_of(shift), "involution-failure");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z", "1/z")), "cover-failure");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z", "z")), "involution-failure");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z^2", "-z")), "cover-failure");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z", "-z", "[relation]\na = 1\nb = 0\nc = -2*x\n")), "relation-failure");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z+", "-z")), "parse-error");
}

TEST(Curve, MoebiusInvolution) {
    SpectralCurve c(inline_curve("z+1/z", "z", "1/z", "[ptilde_plus]\npoint = 0, mu = 1\n"));
    const int t = tvar();
    EXPECT_EQ(c.x(), c.x().reflect(t));
    EXPECT_EQ(c.chart().subst(t, -T()), Frac(1) / c.chart());
    EXPECT_EQ(c.ramification().size(), 2u);
    ASSERT_EQ(c.ptilde_plus().size(), 1u);
    EXPECT_EQ(c.ptilde_plus()[0].user, "0");
}

TEST(Curve, ClassifyAiry) {
    SpectralCurve c(curve_file("airy.curve"));
    ASSERT_EQ(c.ramification().size(), 2u);
    EXPECT_TRUE(c.ramification()[0].effective);
    EXPECT_EQ(c.ramification()[0].user, "0");
    EXPECT_FALSE(c.ramification()[1].effective);
    EXPECT_EQ(c.ramification()[1].user, "oo");
    EXPECT_TRUE(c.ptilde().empty());
}

TEST(Curve, ClassifyFourPole) {
    SpectralCurve c(curve_file("four_pole.curve"));
    for (auto& r : c.ramification()) EXPECT_TRUE(r.effective);
    ASSERT_EQ(c.ptilde().size(), 4u);
    for (auto& p : c.ptilde()) EXPECT_LT(p.order, 0);
    EXPECT_EQ(c.ptilde_plus().size(), 2u);
}

TEST(Curve, ZeroOfDeltaYdx) {
    CurveConfig cfg = inline_curve("z^2", "z*(z^2-4)", "-z", "[ptilde_plus]\npoint = 2, mu = 1\n");
    SpectralCurve c(cfg);
    ASSERT_EQ(c.ptilde().size(), 2u);
    for (auto& p : c.ptilde()) EXPECT_EQ(p.order, 1);
    EXPECT_EQ(kind_of(inline_curve("z^2", "z*(z^2-4)", "-z")), "invalid-ptilde");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z*(z^2-4)", "-z", "[ptilde_plus]\npoint = 2, mu = 1\npoint = -2, mu = 1\n")),
              "invalid-ptilde");
    EXPECT_EQ(kind_of(inline_curve("z^2", "z*(z^2-4)", "-z", "[ptilde_plus]\npoint = 3, mu = 1\n")), "invalid-ptilde");
}

TEST(Curve, UnstableDifferentials) {
    SpectralCurve c(curve_file("airy.curve"));
    const int z0 = zvar(0), z1 = zvar(1);
    EXPECT_EQ(c.omega01(z0), P("2*z0^2"));
    EXPECT_EQ(c.omega02(z0, z1), P("1/(z0+z1)^2"));
    EXPECT_EQ(c.omega_half1(z0), P("-Q/(2*z0)"));
    EXPECT_EQ(c.eta(z0, Poly(3)), P("1/(z0-3)-1/(z0+3)"));
}

TEST(Curve, MuShiftsOmegaHalf) {
    SpectralCurve plain(inline_curve("z^2", "z*(z^2-4)", "-z", "[ptilde_plus]\npoint = 2, mu = 0\n"));
    SpectralCurve shifted(inline_curve("z^2", "z*(z^2-4)", "-z", "[parameters]\nmu = symbolic\n[ptilde_plus]\npoint = 2, mu = mu\n"));
    const int z0 = zvar(0);
    Frac d = shifted.omega_half1(z0) - plain.omega_half1(z0);
    EXPECT_EQ(d, P("Q*mu/2*(1/(z0-2)-1/(z0+2))"));
}

TEST(Curve, SigmaSplit) {
    SpectralCurve c(curve_file("four_pole.curve"));
    const int t = tvar();
    EXPECT_TRUE(invariant_part(c.w01(), t).is_zero());
    EXPECT_EQ(anti_part(c.w01(), t), c.w01().scale(2));
    EXPECT_EQ(invariant_part(c.dx(), t), c.dx().scale(2));
    EXPECT_TRUE(anti_part(c.dx(), t).is_zero());
    SpectralCurve airy(curve_file("airy.curve"));
    // dz/z is sigma-invariant for sigma = -z, so I omega_{1/2,1} = 2 omega_{1/2,1} on Airy
    EXPECT_EQ(invariant_part(airy.omega_half1(zvar(0)), zvar(0)), airy.omega_half1(zvar(0)).scale(2));
    EXPECT_TRUE(anti_part(airy.omega_half1(zvar(0)), zvar(0)).is_zero());
}

TEST(Curve, SampledParametersAreAdmissible) {
    CurveConfig cfg = curve_file("four_pole.curve");
    CurveConfig a = sample_parameters(cfg, 7), b = sample_parameters(cfg, 7);
    EXPECT_EQ(serialize_curve_config(a), serialize_curve_config(b));
    EXPECT_NE(serialize_curve_config(a), serialize_curve_config(cfg));
    EXPECT_NO_THROW(SpectralCurve{a});
}
