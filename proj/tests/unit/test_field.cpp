#include <gtest/gtest.h>

#include <cmath>

#include "campanato/error.hpp"
#include "campanato/field.hpp"

using namespace campanato;

TEST(Field, CatalogExamples) {
    EXPECT_DOUBLE_EQ(builtinField("log", {})(Point{1.0}), 0.0);
    // alpha = (1 + 1/gamma)(lambda - 1) with gamma = 1/2, lambda = 1.25.
    const double alpha = (1.0 + 1.0 / 0.5) * (1.25 - 1.0);
    EXPECT_DOUBLE_EQ(alpha, 0.75);
    const auto sp = builtinField("signedPower", {{"exponent", 0.5 * alpha}});
    EXPECT_DOUBLE_EQ(sp(Point{1.0, 0.3}), 1.0);
    EXPECT_NEAR(sp(Point{-0.5, 0.3}), -std::pow(0.5, 0.375), 1e-15);
    EXPECT_DOUBLE_EQ(sp(Point{0.0, 0.3}), 0.0);
    EXPECT_DOUBLE_EQ(builtinField("coordinate", {{"index", 1}})(Point{3, 0.2}), 3.0);
    EXPECT_DOUBLE_EQ(builtinField("constant", {{"value", 2.5}})(Point{3, 0.2}), 2.5);
    const auto poly = builtinField("polynomial", {{"c", 1}, {"x1", 2}, {"x1x2", 3}, {"x2x2", -1}});
    EXPECT_DOUBLE_EQ(poly(Point{2, 3}), 1 + 4 + 18 - 9);
    const auto dl = builtinField("distLogToPoint", {{"gamma", 0.5}, {"p2", 1.0}});
    EXPECT_NEAR(dl(Point{4, 1}), std::log(2.0), 1e-15);
    EXPECT_THROW((void)dl(Point{0, 1}), DomainViolation);
    EXPECT_THROW((void)builtinField("nope", {}), InvalidInput);
    EXPECT_THROW((void)builtinField("coordinate", {{"index", 3}}), InvalidInput);
    EXPECT_THROW((void)builtinField("coordinate", {{"bogus", 1}}), InvalidInput);
}

TEST(Field, OutOfDomainIsAnError) {
    const auto f = builtinField("log", {});
    EXPECT_THROW((void)f(Point{-1.0}), DomainViolation);
    const auto g = builtinField("coordinate", {}, makeDomain(Strip{}));
    EXPECT_THROW((void)g(Point{0, 2}), DomainViolation);
}

TEST(Field, ZeroExtension) {
    const auto f = builtinField("log", {});
    const auto f0 = zeroExtend(f);
    EXPECT_DOUBLE_EQ(f0(Point{-1.0}), 0.0);
    EXPECT_DOUBLE_EQ(f0(Point{2.0}), std::log(2.0));
    const auto g = builtinField("polynomial", {{"x1x2", 1}}, makeDomain(CuspDomain{0.5}));
    const auto g0 = zeroExtend(g);
    Rng rng(1);
    const Domain& d = *g.definedOn();
    for (int s = 0; s < 10000; ++s) {
        const Point x = d.sampleInterior(rng, std::nullopt);
        EXPECT_EQ(g0(x), g(x));
    }
    EXPECT_EQ(g0(Point{0.0, 2.0}), 0.0);
}

TEST(Field, ComposeWithIsometry) {
    const auto f = builtinField("coordinate", {{"index", 1}});
    const auto id = composeWithIsometry(f, Isometry::identity(2));
    EXPECT_DOUBLE_EQ(id(Point{1.5, 2}), 1.5);
    const std::vector<double> t{2.0, -1.0};
    const auto shifted = composeWithIsometry(f, Isometry::translation(t));
    EXPECT_DOUBLE_EQ(shifted(Point{1.5, 2}), -0.5);

    const auto g = builtinField("polynomial", {{"x1", 1}, {"x2x2", 2}, {"x1x2", -1}}, makeDomain(CuspDomain{0.5}));
    const Isometry r = Isometry::planeRotation(2, 0, 1, 0.3).compose(Isometry::translation(t));
    const auto round = composeWithIsometry(composeWithIsometry(g, r), r.inverse());
    Rng rng(3);
    for (int s = 0; s < 10000; ++s) {
        const Point x = g.definedOn()->sampleInterior(rng, std::nullopt);
        EXPECT_NEAR(round.evaluateUnchecked(x), g(x), 1e-10);
    }
    // The composed field lives on R(domain).
    const auto rg = composeWithIsometry(g, r);
    EXPECT_NO_THROW((void)rg(r.apply(Point{0.0, 0.5})));
    EXPECT_THROW((void)rg(Point{0.0, 0.5}), DomainViolation);
}

TEST(Field, Cutoff) {
    EXPECT_NEAR(smoothRamp(0.5), 0.5, 1e-12);
    EXPECT_EQ(smoothRamp(0.0), 0.0);
    EXPECT_EQ(smoothRamp(1.0), 1.0);
    const auto c = makeCutoff(Isometry::identity(2), Box{{0, 0}, {1, 1}}, 0.1, 0.2);
    EXPECT_EQ(c(Point{0.5, 0.5}), 1.0);
    EXPECT_EQ(c(Point{0.05, 0.5}), 0.0);
    EXPECT_EQ(c(Point{2.0, 0.5}), 0.0);
    EXPECT_NEAR(c(Point{0.15, 0.5}), 0.5, 1e-12);
    Rng rng(6);
    for (int s = 0; s < 10000; ++s) {
        const double v = c(Point{rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)});
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_THROW((void)makeCutoff(Isometry::identity(2), Box{{0, 0}, {1, 1}}, 0.2, 0.1), InvalidInput);
}

TEST(Field, PartitionOfUnity) {
    auto single = std::make_shared<const Atlas>(
        Atlas{2, 1.0, 0.2, {AtlasPatch{Isometry::identity(2), Box{{0, 0}, {2, 2}}, std::nullopt, 0.0}}});
    const auto pu1 = makePartitionOfUnity(single);
    EXPECT_EQ(pu1.psi(0, Point{1.0, 1.0}), 1.0);
    EXPECT_EQ(pu1.psi(0, Point{0.21, 1.79}), 1.0);

    auto two = std::make_shared<const Atlas>(
        Atlas{2, 1.0, 0.2,
              {AtlasPatch{Isometry::identity(2), Box{{0, 0}, {2, 1}}, std::nullopt, 0.0},
               AtlasPatch{Isometry::identity(2), Box{{1, 0}, {3, 1}}, std::nullopt, 0.0}}});
    const auto pu2 = makePartitionOfUnity(two);
    const auto v = pu2.values(Point{1.5, 0.5});
    EXPECT_NEAR(v[0], 0.5, 1e-10);
    EXPECT_NEAR(v[1], 0.5, 1e-10);
    const auto out = pu2.values(Point{5.0, 0.5});
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 0.0);

    const Domain omega{CuboidDomain{Isometry::identity(2), Box{{0.2, 0.2}, {2.8, 0.8}}}};
    SamplerConfig cfg;
    const auto checked = makePartitionOfUnity(two, &omega, cfg);
    Rng rng(8);
    for (int s = 0; s < 10000; ++s) {
        const Point x = omega.sampleInterior(rng, std::nullopt);
        const auto w = checked.values(x);
        EXPECT_NEAR(w[0] + w[1], 1.0, 1e-10);
    }
    const Domain wide{CuboidDomain{Isometry::identity(2), Box{{0.0, 0.0}, {4.0, 1.0}}}};
    EXPECT_THROW((void)makePartitionOfUnity(two, &wide, cfg), PreconditionError);
}

TEST(Field, LinearCombinationAndProduct) {
    const auto x = builtinField("coordinate", {{"index", 1}});
    const auto y = builtinField("coordinate", {{"index", 2}});
    EXPECT_DOUBLE_EQ(linearCombination(2.0, x, -1.0, y)(Point{3, 4}), 2.0);
    EXPECT_DOUBLE_EQ(multiply(x, y)(Point{3, 4}), 12.0);
    EXPECT_DOUBLE_EQ(scaled(x, -2.0)(Point{3, 4}), -6.0);
}
