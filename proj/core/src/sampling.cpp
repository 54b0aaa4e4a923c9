#include "campanato/sampling.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "campanato/error.hpp"

namespace campanato {

double Box::volume() const noexcept {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

bool Box::contains(std::span<const double> x) const noexcept {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    }
    return true;
}

void Box::sample(Rng& rng, std::span<double> out) const {
    for (std::size_t i = 0; i < lo.size(); ++i) out[i] = rng.uniform(lo[i], hi[i]);
}

void Box::validate() const {
    if (lo.size() != hi.size() || lo.empty()) throw InvalidInput("box: lo/hi must be nonempty and of equal length");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(hi[i] > lo[i])) throw InvalidInput("box: degenerate extent on axis " + std::to_string(i));
    }
}

Box Box::cube(int dimension, double lo, double hi) {
    const auto n = static_cast<std::size_t>(dimension);
    return {std::vector<double>(n, lo), std::vector<double>(n, hi)};
}

std::vector<double> RadiusLadder::radii(double domainDiameter) const {
    double top = rMax > 0.0 ? std::min(rMax, domainDiameter) : domainDiameter;
    if (!std::isfinite(top)) {
        throw InvalidInput("radius ladder: domain is unbounded; set radiusLadder.rMax");
    }
    if (!(top > 0.0)) throw InvalidInput("radius ladder: nonpositive maximal radius");
    std::vector<double> out(static_cast<std::size_t>(count));
    double r = top;
    for (auto& v : out) {
        v = r;
        r *= factor;
    }
    return out;
}

void SamplerConfig::validate() const {
    if (centerCount < 0) throw InvalidInput("sampler: centerCount must be nonnegative");
    if (centerCount == 0 && fixedCenters.empty()) throw InvalidInput("sampler: no centers (centerCount = 0)");
    if (quadratureNodesPerBall <= 0) throw InvalidInput("sampler: quadratureNodesPerBall must be positive");
    if (pairSampleCount <= 0) throw InvalidInput("sampler: pairSampleCount must be positive");
    if (refinementRounds < 0) throw InvalidInput("sampler: refinementRounds must be nonnegative");
    if (tensorNodesPerAxis <= 0) throw InvalidInput("sampler: tensorNodesPerAxis must be positive");
    if (radiusLadder.count <= 0) throw InvalidInput("sampler: radiusLadder.count must be positive");
    if (!(radiusLadder.factor > 0.0 && radiusLadder.factor < 1.0)) {
        throw InvalidInput("sampler: radiusLadder.factor must lie in (0, 1)");
    }
    if (radiusLadder.rMax < 0.0) throw InvalidInput("sampler: radiusLadder.rMax must be nonnegative");
    if (!(boundaryFraction >= 0.0 && boundaryFraction <= 1.0)) {
        throw InvalidInput("sampler: boundaryFraction must lie in [0, 1]");
    }
    if (centerWindow) centerWindow->validate();
}

SamplerConfig SamplerConfig::refined(int round) const {
    SamplerConfig c = *this;
    for (int k = 0; k < round; ++k) c.centerCount *= 2;
    c.radiusLadder.count += round;
    return c;
}

BallQuadrature sampleBallMonteCarlo(const AnisoBall& ball, const MetricParams& m, int count, std::uint64_t seed) {
    if (count <= 0) throw InvalidInput("ball sampling: zero sample count");
    const int n = m.dimension();
    const int k = n - 1;
    const double headR = ball.headRadius(m);
    Rng rng(seed);
    BallQuadrature q;
    q.nodes.reserve(static_cast<std::size_t>(count));
    std::array<double, kMaxDimension> dir{};
    for (int s = 0; s < count; ++s) {
        Point y(n);
        if (k > 0) {
            double norm = 0.0;
            do {
                norm = 0.0;
                for (int i = 0; i < k; ++i) {
                    dir[static_cast<std::size_t>(i)] = rng.normal();
                    norm += dir[static_cast<std::size_t>(i)] * dir[static_cast<std::size_t>(i)];
                }
            } while (norm == 0.0);
            norm = std::sqrt(norm);
            const double rad = headR * std::pow(rng.uniform(), 1.0 / k);
            for (int i = 0; i < k; ++i) y[i] = ball.center[i] + rad * dir[static_cast<std::size_t>(i)] / norm;
        }
        y[k] = ball.center[k] + ball.radius * (2.0 * rng.uniform() - 1.0);
        q.nodes.push_back(y);
    }
    q.weight = ballVolume(ball.radius, m) / count;
    q.stochastic = true;
    return q;
}

BallQuadrature sampleBallTensor(const AnisoBall& ball, const MetricParams& m, int nodesPerAxis) {
    if (nodesPerAxis <= 0) throw InvalidInput("ball sampling: zero nodes per axis");
    const int n = m.dimension();
    const double headR = ball.headRadius(m);
    const double hHead = 2.0 * headR / nodesPerAxis;
    const double hLast = 2.0 * ball.radius / nodesPerAxis;
    BallQuadrature q;
    q.weight = std::pow(hHead, n - 1) * hLast;
    q.stochastic = false;
    std::array<int, kMaxDimension> idx{};
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(nodesPerAxis);
    q.nodes.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(nodesPerAxis));
            rem /= static_cast<std::size_t>(nodesPerAxis);
        }
        Point y(n);
        double head2 = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double off = -headR + (idx[static_cast<std::size_t>(i)] + 0.5) * hHead;
            y[i] = ball.center[i] + off;
            head2 += off * off;
        }
        y[n - 1] = ball.center[n - 1] - ball.radius + (idx[static_cast<std::size_t>(n - 1)] + 0.5) * hLast;
        if (n > 2 && !(std::sqrt(head2) < headR)) continue;
        q.nodes.push_back(y);
    }
    return q;
}

BallQuadrature sampleBall(const AnisoBall& ball, const MetricParams& m, const SamplerConfig& cfg,
                          std::uint64_t seed) {
    if (cfg.quadrature == QuadratureMode::Tensor) return sampleBallTensor(ball, m, cfg.tensorNodesPerAxis);
    return sampleBallMonteCarlo(ball, m, cfg.quadratureNodesPerBall, seed);
}

double RegionSample::measure() const noexcept { return std::accumulate(weights.begin(), weights.end(), 0.0); }

}  // namespace campanato
