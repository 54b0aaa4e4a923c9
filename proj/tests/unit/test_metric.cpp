#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "campanato/error.hpp"
#include "campanato/metric.hpp"
#include "campanato/rng.hpp"
#include "campanato/sampling.hpp"

using namespace campanato;

namespace {

Point randomPoint(Rng& rng, int n, double scale) {
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-scale, scale);
    return p;
}

}  // namespace

TEST(Metric, DistanceDefinition) {
    const MetricParams m(2, 0.5);
    EXPECT_DOUBLE_EQ(dist(Point{0, 0}, Point{4, 1}, m), 2.0);
    EXPECT_DOUBLE_EQ(dist(Point{0, 0}, Point{1, 3}, m), 3.0);
    EXPECT_DOUBLE_EQ(dist(Point{1, 1}, Point{1, 1}, m), 0.0);
}

TEST(Metric, CriticalExponent) {
    EXPECT_DOUBLE_EQ(MetricParams(2, 0.5).criticalExponent(), 3.0);
    EXPECT_DOUBLE_EQ(MetricParams(3, 1.0).criticalExponent(), 3.0);
    EXPECT_DOUBLE_EQ(MetricParams(1, 0.3).criticalExponent(), 1.0);
}

TEST(Metric, RejectsBadParameters) {
    EXPECT_THROW(MetricParams(2, 0.0), InvalidInput);
    EXPECT_THROW(MetricParams(2, 1.5), InvalidInput);
    EXPECT_THROW(MetricParams(0, 1.0), InvalidInput);
    EXPECT_THROW(MetricParams(5, 1.0), InvalidInput);
    EXPECT_THROW((void)dist(Point{0, 0}, Point{0, 0, 0}, MetricParams(2, 1.0)), InvalidInput);
}

TEST(Metric, TriangleInequalityProperty) {
    for (double gamma : {0.3, 0.5, 1.0}) {
        for (int n : {2, 3}) {
            const MetricParams m(n, gamma);
            Rng rng(deriveSeed(7, static_cast<std::uint64_t>(gamma * 100), static_cast<std::uint64_t>(n)));
            int violations = 0;
            for (int s = 0; s < 20000; ++s) {
                const double scale = s % 3 == 0 ? 1e-3 : (s % 3 == 1 ? 1.0 : 1e3);
                const Point x = randomPoint(rng, n, scale);
                const Point y = randomPoint(rng, n, scale);
                const Point z = randomPoint(rng, n, scale);
                if (dist(x, z, m) > dist(x, y, m) + dist(y, z, m) + 1e-12 * scale) ++violations;
            }
            EXPECT_EQ(violations, 0) << "gamma=" << gamma << " n=" << n;
        }
    }
}

TEST(Metric, GammaFunctionMatchesStd) {
    for (double z : {0.1, 0.5, 1.0, 1.5, 2.5, 3.0, 7.25}) {
        EXPECT_NEAR(lanczosGamma(z) / std::tgamma(z), 1.0, 1e-13) << z;
    }
}

TEST(Metric, UnitBallVolumes) {
    EXPECT_DOUBLE_EQ(unitBallVolume(0), 1.0);
    EXPECT_NEAR(unitBallVolume(1), 2.0, 1e-13);
    EXPECT_NEAR(unitBallVolume(2), std::numbers::pi, 1e-13);
    EXPECT_NEAR(unitBallVolume(3), 4.0 * std::numbers::pi / 3.0, 1e-13);
}

TEST(Metric, BallVolumeHomogeneity) {
    for (double gamma : {0.3, 0.5, 1.0}) {
        const MetricParams m(3, gamma);
        for (double r : {1e-3, 0.7, 5.0}) {
            EXPECT_NEAR(ballVolume(2.0 * r, m) / ballVolume(r, m), std::pow(2.0, m.criticalExponent()), 1e-12);
        }
    }
}

TEST(Metric, BallVolumeAgainstRejectionOracle) {
    for (double gamma : {0.5, 1.0}) {
        const MetricParams m(2, gamma);
        const AnisoBall ball{Point{0.3, -0.2}, 0.8};
        const double hr = ball.headRadius(m);
        Rng rng(11);
        const int n = 400000;
        int hits = 0;
        for (int s = 0; s < n; ++s) {
            const Point y{ball.center[0] + rng.uniform(-hr, hr), ball.center[1] + rng.uniform(-0.8, 0.8)};
            hits += ball.contains(y, m);
        }
        const double oracle = 4.0 * hr * 0.8 * hits / n;
        EXPECT_NEAR(ballVolume(0.8, m) / oracle, 1.0, 0.01);
    }
}

TEST(Metric, DilationScalesDistance) {
    const MetricParams m(3, 0.5);
    Rng rng(3);
    for (int s = 0; s < 1000; ++s) {
        const Point x = randomPoint(rng, 3, 2.0);
        const Point y = randomPoint(rng, 3, 2.0);
        const double t = rng.uniform(0.1, 4.0);
        Point dx(3);
        Point dy(3);
        for (int i = 0; i < 2; ++i) {
            dx[i] = std::pow(t, 2.0) * x[i];
            dy[i] = std::pow(t, 2.0) * y[i];
        }
        dx[2] = t * x[2];
        dy[2] = t * y[2];
        EXPECT_NEAR(dist(dx, dy, m), t * dist(x, y, m), 1e-12 * (1.0 + t * dist(x, y, m)));
    }
}

TEST(Metric, ProductMembershipAgrees) {
    const MetricParams m(3, 0.4);
    Rng rng(5);
    const AnisoBall ball{Point{0.1, 0.2, 0.3}, 0.6};
    for (int s = 0; s < 10000; ++s) {
        const Point y = randomPoint(rng, 3, 1.5);
        EXPECT_EQ(ball.contains(y, m), ball.containsByProduct(y, m));
    }
}

TEST(Metric, IsometryRoundTrip) {
    const Isometry r = Isometry::planeRotation(3, 0, 2, 0.7).compose(Isometry::translation(std::vector{1.0, -2.0, 0.5}));
    Rng rng(9);
    for (int s = 0; s < 1000; ++s) {
        const Point x = randomPoint(rng, 3, 3.0);
        const Point back = r.applyInverse(r.apply(x));
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], x[i], 1e-12);
        const Point y = randomPoint(rng, 3, 3.0);
        EXPECT_NEAR(euclideanNorm(std::vector{r.apply(x)[0] - r.apply(y)[0], r.apply(x)[1] - r.apply(y)[1],
                                              r.apply(x)[2] - r.apply(y)[2]}),
                    euclideanNorm(std::vector{x[0] - y[0], x[1] - y[1], x[2] - y[2]}), 1e-12);
    }
    EXPECT_TRUE(Isometry::identity(2).isIdentity());
    EXPECT_THROW(Isometry(2, {1, 1, 0, 1}, {0, 0}), InvalidInput);
}

TEST(Metric, FiniteSetDiameter) {
    const MetricParams m(2, 0.5);
    const std::vector<Point> pts{Point{0, 0}, Point{4, 0}, Point{0, 1.5}};
    EXPECT_DOUBLE_EQ(diameter(pts, m), 2.0);
    EXPECT_THROW((void)diameter(std::span<const Point>{}, m), InvalidInput);
}

TEST(Sampling, RadiusLadder) {
    RadiusLadder l{0.0, 0.5, 4};
    const auto r = l.radii(2.0);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_DOUBLE_EQ(r[3], 0.25);
    EXPECT_THROW((void)l.radii(kInfinity), InvalidInput);
    l.rMax = 3.0;
    EXPECT_DOUBLE_EQ(l.radii(kInfinity)[0], 3.0);
}

TEST(Sampling, MonteCarloNodesLieInBall) {
    const MetricParams m(3, 0.5);
    const AnisoBall ball{Point{0, 1, 2}, 0.3};
    const auto q = sampleBallMonteCarlo(ball, m, 5000, 1);
    for (const auto& y : q.nodes) EXPECT_TRUE(ball.containsByProduct(y, m));
    EXPECT_NEAR(q.weight * 5000, ballVolume(0.3, m), 1e-12);
}

TEST(Sampling, TensorQuadratureVolume) {
    const MetricParams m(3, 1.0);
    const AnisoBall ball{Point{0, 0, 0}, 1.0};
    const auto q = sampleBallTensor(ball, m, 64);
    EXPECT_NEAR(q.weight * q.nodes.size() / ballVolume(1.0, m), 1.0, 0.01);
}

TEST(Sampling, RefinementIsSuperset) {
    SamplerConfig c;
    const auto r1 = c.refined(1);
    EXPECT_EQ(r1.centerCount, 128);
    EXPECT_EQ(r1.radiusLadder.count, 14);
    SamplerConfig bad;
    bad.radiusLadder.factor = 1.0;
    EXPECT_THROW(bad.validate(), InvalidInput);
}
