#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "campanato/domain.hpp"
#include "campanato/extend.hpp"
#include "campanato/field.hpp"
#include "campanato/metric.hpp"
#include "campanato/seminorm.hpp"

using namespace campanato;

namespace {

std::shared_ptr<const Domain> unitSquare() {
    return makeDomain(CuboidDomain{Isometry::identity(2), Box{{-1.0, -1.0}, {1.0, 1.0}}});
}

void BM_Dist(benchmark::State& state) {
    const MetricParams m(static_cast<int>(state.range(0)), 0.5);
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Point x(m.dimension());
    Point y(m.dimension());
    for (int i = 0; i < m.dimension(); ++i) {
        x[i] = u(g);
        y[i] = u(g);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist(x, y, m));
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_Dist)->Arg(2)->Arg(3)->Arg(4);

void BM_BallVolume(benchmark::State& state) {
    const MetricParams m(3, 0.3);
    double r = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ballVolume(r, m));
        r = r < 10.0 ? r * 1.0001 : 0.5;
    }
}
BENCHMARK(BM_BallVolume);

void BM_EvaluateBall(benchmark::State& state) {
    const auto omega = unitSquare();
    const ScalarField f = builtinField("polynomial", {{"dimension", 2}, {"x1x2", 1.0}, {"x2x2", 0.5}});
    SeminormSpec spec;
    spec.gamma = 0.5;
    spec.lambda = 1.0;
    SamplerConfig cfg;
    cfg.quadratureNodesPerBall = static_cast<int>(state.range(0));
    const AnisoBall ball{Point{0.2, -0.1}, 0.4};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(evaluateBall(f, *omega, spec, ball, cfg, ++seed));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateBall)->Arg(256)->Arg(1024)->Arg(4096);

void BM_EstimateSeminorm(benchmark::State& state) {
    const auto omega = unitSquare();
    const ScalarField f = builtinField("signedPower", {{"index", 2}, {"exponent", 0.5}, {"dimension", 2}});
    SeminormSpec spec;
    spec.gamma = 0.5;
    SamplerConfig cfg;
    cfg.centerCount = static_cast<int>(state.range(0));
    cfg.quadratureNodesPerBall = 256;
    cfg.radiusLadder = {1.0, 0.5, 8};
    for (auto _ : state) benchmark::DoNotOptimize(estimateSeminorm(f, *omega, spec, cfg));
}
BENCHMARK(BM_EstimateSeminorm)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_McShaneEvaluate(benchmark::State& state) {
    const auto phi = [](std::span<const double> y) { return std::sqrt(std::abs(y[0])); };
    SamplerConfig cfg;
    const McShaneExtension ext = mcshaneExtend(phi, Box{{-1.0}, {1.0}}, 0.5, 1.0, cfg);
    double t = -3.0;
    for (auto _ : state) {
        const double x[1] = {t};
        benchmark::DoNotOptimize(ext(x));
        t = t < 3.0 ? t + 0.013 : -3.0;
    }
}
BENCHMARK(BM_McShaneEvaluate);

void BM_CheckPropertyA(benchmark::State& state) {
    const auto omega = makeDomain(CuspDomain{0.5});
    const MetricParams m(2, 0.5);
    SamplerConfig cfg;
    cfg.centerCount = 16;
    cfg.radiusLadder = {0.0, 0.5, 8};
    for (auto _ : state) benchmark::DoNotOptimize(checkPropertyA(*omega, m, cfg));
}
BENCHMARK(BM_CheckPropertyA)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
