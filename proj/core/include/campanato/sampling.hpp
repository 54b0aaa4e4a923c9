#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "campanato/metric.hpp"
#include "campanato/rng.hpp"

namespace campanato {

/// Axis-aligned box [lo, hi] in R^k.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(lo.size()); }
    [[nodiscard]] double volume() const noexcept;
    [[nodiscard]] bool contains(std::span<const double> x) const noexcept;
    /// Uniform sample; writes into `out` (size dimension()).
    void sample(Rng& rng, std::span<double> out) const;
    void validate() const;

    static Box cube(int dimension, double lo, double hi);
};

/// Geometric ladder r_j = rMax * factor^j, j = 0..count-1.
struct RadiusLadder {
    /// 0 means "use the δ_γ-diameter of the domain".
    double rMax = 0.0;
    double factor = 0.5;
    int count = 13;

    [[nodiscard]] std::vector<double> radii(double domainDiameter) const;
};

enum class QuadratureMode { MonteCarlo, Tensor };

struct SamplerConfig {
    std::uint64_t seed = 42;
    int centerCount = 64;
    RadiusLadder radiusLadder;
    int quadratureNodesPerBall = 1024;
    int pairSampleCount = 20000;
    int refinementRounds = 0;
    QuadratureMode quadrature = QuadratureMode::MonteCarlo;
    int tensorNodesPerAxis = 64;
    /// Centers always evaluated in addition to the random ones.
    std::vector<Point> fixedCenters;
    /// Sampling window for centers; required in practice for unbounded domains.
    std::optional<Box> centerWindow;
    /// Share of property-(A) centers drawn on the boundary.
    double boundaryFraction = 0.5;

    /// Throws InvalidInput on non-positive counts or factor outside (0, 1).
    void validate() const;
    /// Configuration for refinement round k: centers doubled k times, k finer radii appended.
    [[nodiscard]] SamplerConfig refined(int round) const;
};

/// Equal-weight quadrature nodes covering the whole ball B_γ(x, r).
struct BallQuadrature {
    std::vector<Point> nodes;
    /// Lebesgue measure carried by each node.
    double weight = 0.0;
    /// True for Monte Carlo nodes (weights are random estimates).
    bool stochastic = true;
};

/// Exact product sampling of B_γ: Gaussian-direction/radial-CDF draw of x̄ in
/// the Euclidean (N-1)-ball of radius r^{1/γ}, times a uniform x_N draw.
[[nodiscard]] BallQuadrature sampleBallMonteCarlo(const AnisoBall& ball, const MetricParams& m, int count,
                                                  std::uint64_t seed);
/// Midpoint tensor grid on the bounding box of the ball, masked to the ball.
[[nodiscard]] BallQuadrature sampleBallTensor(const AnisoBall& ball, const MetricParams& m, int nodesPerAxis);
[[nodiscard]] BallQuadrature sampleBall(const AnisoBall& ball, const MetricParams& m, const SamplerConfig& cfg,
                                        std::uint64_t seed);

/// Weighted nodes of a region (typically B ∩ Ω). `weights` sum to the region measure.
struct RegionSample {
    std::vector<Point> nodes;
    std::vector<double> weights;

    [[nodiscard]] bool empty() const noexcept { return nodes.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
    [[nodiscard]] double measure() const noexcept;
};

}  // namespace campanato
