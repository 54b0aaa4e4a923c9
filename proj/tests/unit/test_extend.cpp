#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "campanato/error.hpp"
#include "campanato/extend.hpp"

using namespace campanato;

namespace {

ElementaryDomain flatGraph() {
    return ElementaryDomain{2, 1.0, makeBoundaryFunction("constant", {{"value", 0.0}}), 0.0, std::nullopt};
}

ElementaryDomain cuspGraph() {
    return ElementaryDomain{2, 0.5, makeBoundaryFunction("power", {{"exponent", 0.5}}), 1.0, Box{{-1.0}, {1.0}}};
}

}  // namespace

TEST(Reflect, EvenReflectionExamples) {
    const auto f = builtinField("coordinate", {{"index", 2}}, makeDomain(flatGraph()));
    const auto ft = reflectExtend(f);
    EXPECT_DOUBLE_EQ(ft(Point{0.3, 1.0}), -1.0);
    EXPECT_DOUBLE_EQ(ft(Point{0.3, -2.0}), -2.0);
    EXPECT_DOUBLE_EQ(ft(Point{0.3, 0.0}), 0.0);

    const auto c = builtinField("constant", {{"value", 2.0}}, makeDomain(cuspGraph()));
    const auto ct = reflectExtend(c);
    Rng rng(1);
    for (int s = 0; s < 1000; ++s) EXPECT_EQ(ct(Point{rng.uniform(-1, 1), rng.uniform(-3, 3)}), 2.0);
    EXPECT_THROW((void)ct(Point{2.0, 0.0}), DomainViolation);
    EXPECT_THROW((void)reflectExtend(builtinField("constant", {})), InvalidInput);
}

TEST(Reflect, ReflectedArgumentStaysBelowGraph) {
    const auto e = cuspGraph();
    const Domain d{e};
    Rng rng(2);
    for (int s = 0; s < 10000; ++s) {
        const Point x{rng.uniform(-1, 1), rng.uniform(-2, 3)};
        const double g = e.phi(x.head());
        if (x.last() <= g) continue;
        EXPECT_LE(2.0 * g - x.last(), g);
    }
}

TEST(Reflect, IdempotentOnSymmetricData) {
    const auto flat = makeDomain(flatGraph());
    const ScalarField even(2, [](const Point& x) { return std::cos(3.0 * std::abs(x[1])) + x[0]; }, flat, "even");
    const auto ft = reflectExtend(even);
    Rng rng(3);
    for (int s = 0; s < 10000; ++s) {
        const Point x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        EXPECT_EQ(ft(x), even.evaluateUnchecked(x));
    }
    const auto e = cuspGraph();
    const ScalarField sym(
        2, [e](const Point& x) { return std::exp(-std::abs(x[1] - e.phi(x.head()))); }, makeDomain(e), "sym");
    const auto st = reflectExtend(sym);
    for (int s = 0; s < 10000; ++s) {
        const Point x{rng.uniform(-1, 1), rng.uniform(-2, 2)};
        EXPECT_NEAR(st(x), sym.evaluateUnchecked(x), 1e-12);
    }
}

TEST(Reflect, CampanatoMatchesBruteForceOracle) {
    const auto f = builtinField("coordinate", {{"index", 2}}, makeDomain(flatGraph()));
    const auto ft = reflectExtend(f);
    SamplerConfig cfg;
    cfg.quadrature = QuadratureMode::Tensor;
    cfg.tensorNodesPerAxis = 100;
    SeminormSpec spec{SeminormKind::Campanato, 1.0, 1.0, 1.0, std::nullopt, std::nullopt};
    const Domain plane{FullSpace{2}};
    for (double c2 : {0.0, 0.3, -0.7}) {
        for (double r : {0.5, 1.0}) {
            const auto ev = evaluateBall(ft, plane, spec, AnisoBall{Point{0.0, c2}, r}, cfg, 0);
            const int n = 100;
            const double h = 2.0 * r / n;
            double mean = 0.0;
            std::vector<double> v;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double y = c2 - r + (j + 0.5) * h;
                    v.push_back(-std::abs(y));
                    mean += v.back();
                }
            }
            mean /= static_cast<double>(v.size());
            double s = 0.0;
            for (double x : v) s += std::abs(x - mean) * h * h;
            EXPECT_NEAR(ev.value, s / (r * r), 1e-6);
        }
    }
}

TEST(McShane, Examples) {
    SamplerConfig cfg;
    const auto c = mcshaneExtend([](std::span<const double>) { return 1.5; }, Box{{0}, {1}}, 0.5, std::nullopt, cfg);
    EXPECT_EQ(c.constant(), 0.0);
    for (double t : {-3.0, 0.5, 7.0}) EXPECT_EQ(c(std::vector{t}), 1.5);

    const auto lin = mcshaneExtend([](std::span<const double> x) { return x[0]; }, Box{{0}, {1}}, 1.0, 1.0, cfg);
    EXPECT_NEAR(lin(std::vector{2.0}), 2.0, 1e-12);
    EXPECT_NEAR(lin(std::vector{-1.0}), 1.0, 1e-12);
    for (double t : {0.0, 0.25, 1.0}) EXPECT_EQ(lin(std::vector{t}), t);

    EXPECT_THROW((void)mcshaneExtend([](std::span<const double> x) { return x[0]; }, Box{{0}, {1}}, 1.0, 0.0, cfg),
                 ConsistencyError);
}

TEST(McShane, PreservesHolderConstant) {
    SamplerConfig cfg;
    auto phi = [](std::span<const double> x) { return std::sqrt(std::abs(x[0])); };
    const auto ext = mcshaneExtend(phi, Box{{-1}, {1}}, 0.5, 1.0, cfg);
    for (std::size_t i = 0; i < ext.gridSize(); i += 97) EXPECT_EQ(ext(ext.gridNode(i)), phi(ext.gridNode(i)));
    Rng rng(4);
    double worst = 0.0;
    for (int s = 0; s < 10000; ++s) {
        const double a = rng.uniform(-3, 3);
        const double b = s % 2 ? rng.uniform(-1, 1) : rng.uniform(-3, 3);
        if (a == b) continue;
        worst = std::max(worst, std::abs(ext(std::vector{a}) - ext(std::vector{b})) / std::sqrt(std::abs(a - b)));
    }
    EXPECT_LE(worst, 1.0 + 1e-6);
}

TEST(McShane, TwoDimensionalWindow) {
    SamplerConfig cfg;
    auto phi = [](std::span<const double> x) { return std::sin(x[0]) + 0.5 * x[1]; };
    const auto ext = mcshaneExtend(phi, Box{{0, 0}, {1, 1}}, 1.0, std::nullopt, cfg, McShaneOptions{65, true});
    EXPECT_GE(ext.constant(), 1.0);
    Rng rng(5);
    for (int s = 0; s < 2000; ++s) {
        const std::vector<double> a{rng.uniform(-1, 2), rng.uniform(-1, 2)};
        const std::vector<double> b{rng.uniform(-1, 2), rng.uniform(-1, 2)};
        const double d = std::hypot(a[0] - b[0], a[1] - b[1]);
        EXPECT_LE(std::abs(ext(a) - ext(b)), ext.constant() * d + 1e-6);
    }
}

TEST(AtlasExtend, InteriorPatchIsZeroExtension) {
    auto atlas = std::make_shared<const Atlas>(
        Atlas{2, 1.0, 0.1, {AtlasPatch{Isometry::identity(2), Box{{0, 0}, {1, 1}}, std::nullopt, 0.0}}});
    const Domain omega{CuboidDomain{Isometry::identity(2), Box{{-1, -1}, {2, 2}}}};
    const auto bump = makeCutoff(Isometry::identity(2), Box{{0, 0}, {1, 1}}, 0.05, 0.2).asField();
    SamplerConfig cfg;
    const auto res = atlasExtend({{bump, 0}}, atlas, omega, cfg);
    Rng rng(6);
    for (int s = 0; s < 2000; ++s) {
        const Point x{rng.uniform(-2, 3), rng.uniform(-2, 3)};
        EXPECT_EQ(res.F(x), omega.contains(x) ? bump(x) : 0.0);
    }
    ASSERT_EQ(res.provenance.size(), 1u);
    EXPECT_NE(res.provenance[0].find("interior"), std::string::npos);
}

TEST(AtlasExtend, BoundaryPatchReflectsCutoff) {
    const Box box{{-1, 0}, {1, 1}};
    auto atlas = std::make_shared<const Atlas>(
        Atlas{2, 1.0, 0.1,
              {AtlasPatch{Isometry::identity(2), box, makeBoundaryFunction("constant", {{"value", 0.5}}), 0.0}}});
    const Domain omega{CuboidDomain{Isometry::identity(2), Box{{-1, 0}, {1, 0.5}}}};
    const auto f1 = makeCutoff(Isometry::identity(2), box, 0.05, 0.1).asField();
    SamplerConfig cfg;
    const auto res = atlasExtend({{f1, 0}}, atlas, omega, cfg);
    EXPECT_EQ(res.checkedPoints, 10000u);
    EXPECT_LE(res.restrictionError, 1e-8);
    Rng rng(7);
    for (int s = 0; s < 10000; ++s) {
        const Point x = omega.sampleInterior(rng, std::nullopt);
        EXPECT_NEAR(res.F(x), f1(x), 1e-12);
    }
    const auto cut = makeCutoff(Isometry::identity(2), box, 0.025, 0.05);
    for (int s = 0; s < 1000; ++s) {
        const Point x{rng.uniform(-1.2, 1.2), rng.uniform(0.5, 1.2)};
        const Point z{x[0], 1.0 - x[1]};
        const double expected = cut(x) * (omega.contains(z) ? f1(z) : 0.0);
        EXPECT_NEAR(res.F(x), expected, 1e-12);
    }
}

TEST(AtlasExtend, SupportConditionAndLinearity) {
    const Box box{{-1, 0}, {1, 1}};
    auto atlas = std::make_shared<const Atlas>(
        Atlas{2, 1.0, 0.1,
              {AtlasPatch{Isometry::identity(2), box, makeBoundaryFunction("constant", {{"value", 0.5}}), 0.0}}});
    const Domain omega{CuboidDomain{Isometry::identity(2), Box{{-1, 0}, {1, 0.5}}}};
    SamplerConfig cfg;
    const auto wide = builtinField("constant", {{"value", 1.0}});
    EXPECT_THROW((void)atlasExtend({{wide, 0}}, atlas, omega, cfg), PreconditionError);

    const auto cut = makeCutoff(Isometry::identity(2), box, 0.05, 0.1).asField();
    const auto f = multiply(cut, builtinField("polynomial", {{"x1", 1}, {"x2x2", 2}}));
    const auto g = multiply(cut, builtinField("polynomial", {{"c", 1}, {"x1x2", -1}}));
    const double a = 1.5;
    const double b = -0.75;
    const auto tf = atlasExtend({{f, 0}}, atlas, omega, cfg).F;
    const auto tg = atlasExtend({{g, 0}}, atlas, omega, cfg).F;
    const auto tc = atlasExtend({{linearCombination(a, f, b, g), 0}}, atlas, omega, cfg).F;
    Rng rng(8);
    for (int s = 0; s < 2000; ++s) {
        const Point x{rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 1.5)};
        EXPECT_NEAR(tc(x), a * tf(x) + b * tg(x), 1e-9);
    }
}

TEST(CompactExtend, ZeroAndBump) {
    const auto omega = makeDomain(CuboidDomain{Isometry::identity(2), Box{{-2, -2}, {2, 2}}});
    SeminormSpec spec{SeminormKind::Campanato, 1.0, 1.0, 1.0, std::nullopt, std::nullopt};
    SamplerConfig cfg;
    cfg.centerCount = 16;
    cfg.quadratureNodesPerBall = 512;
    cfg.radiusLadder = RadiusLadder{0.0, 0.5, 6};
    const auto zero = builtinField("constant", {{"value", 0.0}}, omega);
    const auto z = compactZeroExtend(zero, *omega, spec, cfg);
    EXPECT_EQ(z.estimateExtended, 0.0);
    EXPECT_EQ(z.seminormOnOmega, 0.0);

    const auto bump = restrictTo(makeCutoff(Isometry::identity(2), Box{{-1, -1}, {1, 1}}, 0.1, 0.5).asField(), omega);
    const auto res = compactZeroExtend(bump, *omega, spec, cfg);
    EXPECT_GT(res.supportDistance, 0.9);
    EXPECT_TRUE(std::isfinite(res.ratio));
    EXPECT_GT(res.bigBallsChecked, 0u);
    EXPECT_TRUE(res.bigBallBoundHolds) << res.worstBigBallRatio;

    const auto touching = builtinField("coordinate", {{"index", 1}}, omega);
    EXPECT_THROW((void)compactZeroExtend(touching, *omega, spec, cfg), PreconditionError);
}
