#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "campanato/atlas.hpp"
#include "campanato/metric.hpp"
#include "campanato/sampling.hpp"

namespace campanato {

/// {x > 0} ⊂ R.
struct HalfLine {};
/// R × (-1, 1).
struct Strip {};
/// {0 < x_2 < 1 - |x_1|^γ} ⊂ R².
struct CuspDomain {
    double gamma = 0.5;
};
/// {x_N < φ(x̄)} (with x̄ ∈ W when a window is present).
struct ElementaryDomain {
    int dimension = 2;
    double gamma = 1.0;
    BoundaryFunction phi;
    /// Declared Lip_γ φ.
    double holderConstant = 0.0;
    std::optional<Box> window;
};
/// Isometric image of an open box: x ∈ V iff toChart(x) ∈ box.
struct CuboidDomain {
    Isometry toChart;
    Box box;
};
struct FullSpace {
    int dimension = 2;
};
/// Ω described patchwise by an atlas.
struct AtlasDomain {
    std::shared_ptr<const Atlas> atlas;
};
class Domain;
/// R(base) = {y : R^{-1} y ∈ base}.
struct MappedDomain {
    std::shared_ptr<const Domain> base;
    Isometry map;
};

using DomainVariant = std::variant<HalfLine, Strip, CuspDomain, ElementaryDomain, CuboidDomain, FullSpace,
                                   AtlasDomain, MappedDomain>;

class Domain {
public:
    Domain(DomainVariant v);  // NOLINT(google-explicit-constructor)

    [[nodiscard]] const DomainVariant& variant() const noexcept { return v_; }
    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] std::string kind() const;

    /// Strict membership; throws InvalidInput on dimension mismatch.
    [[nodiscard]] bool contains(const Point& x) const;
    /// Bounding box when bounded.
    [[nodiscard]] std::optional<Box> boundingBox() const;
    [[nodiscard]] bool bounded() const { return boundingBox().has_value(); }
    /// Lebesgue measure when known in closed form.
    [[nodiscard]] std::optional<double> knownVolume() const;
    /// Fixtures known to satisfy |B_γ ∩ Ω| ≥ c r^{N_γ}.
    [[nodiscard]] bool hasPropertyA() const;

    /// Rejection sample of Ω ∩ window (window defaults to the bounding box).
    [[nodiscard]] Point sampleInterior(Rng& rng, const std::optional<Box>& window) const;
    /// Sample of ∂Ω (closure points added explicitly); nullopt if Ω has no boundary.
    [[nodiscard]] std::optional<Point> sampleBoundary(Rng& rng, const std::optional<Box>& window) const;

private:
    DomainVariant v_;
    int dimension_;
};

[[nodiscard]] std::shared_ptr<const Domain> makeDomain(DomainVariant v);
[[nodiscard]] std::shared_ptr<const Domain> makeDomain(Domain d);

struct DiameterEstimate {
    double value = 0.0;
    /// False for sampled lower bounds.
    bool exact = true;
};

/// δ_γ(Ω): closed form for analytic fixtures (corner enumeration for
/// cuboids, +infinity for unbounded fixtures), sampled lower bound otherwise.
[[nodiscard]] DiameterEstimate diameter(const Domain& d, const MetricParams& m, const SamplerConfig& cfg);

struct MeasureEstimate {
    double estimate = 0.0;
    double standardError = 0.0;
};

/// |B ∩ Ω| by quadrature over the product parametrization of B.
[[nodiscard]] MeasureEstimate intersectionMeasure(const Domain& d, const AnisoBall& ball, const MetricParams& m,
                                                  const SamplerConfig& cfg, std::uint64_t streamSeed);
[[nodiscard]] MeasureEstimate intersectionMeasure(const Domain& d, const AnisoBall& ball, const MetricParams& m,
                                                  const SamplerConfig& cfg);

/// Ball quadrature filtered to Ω. `ballNodeCount` is the number of nodes before filtering.
struct BallRegion {
    RegionSample region;
    std::size_t ballNodeCount = 0;
    bool stochastic = true;
    double ballVolume = 0.0;
};
[[nodiscard]] BallRegion ballRegion(const Domain& d, const AnisoBall& ball, const MetricParams& m,
                                    const SamplerConfig& cfg, std::uint64_t streamSeed);

/// Draws centers following the sampler: fixed centers first, then
/// `boundaryFraction` of the rest on ∂Ω (if requested) and the remainder inside.
[[nodiscard]] std::vector<Point> sampleCenters(const Domain& d, const SamplerConfig& cfg, bool boundaryBiased,
                                               std::uint64_t streamTag);

struct PropertyAReport {
    double cEstimate = 0.0;
    Point witnessCenter;
    double witnessRadius = 0.0;
    /// (r, min ratio at r).
    std::vector<std::pair<double, double>> perRadius;
    /// cEstimate after each refinement round.
    std::vector<double> rounds;
};

/// min over sampled (x ∈ Ω̄, r in ladder) of |B_γ(x,r) ∩ Ω| / r^{N_γ}.
[[nodiscard]] PropertyAReport checkPropertyA(const Domain& d, const MetricParams& m, const SamplerConfig& cfg);

struct CuspInclusionReport {
    bool holds = true;
    std::size_t checked = 0;
    std::optional<Point> vertex;
    std::optional<Point> violation;
};

/// Samples vertices on and below the graph and points of C_γ(x, M); reports
/// the first point found outside Ω.
[[nodiscard]] CuspInclusionReport cuspInclusion(const ElementaryDomain& d, const SamplerConfig& cfg);

/// Lower bound of Lip_γ φ on W: all pairs of a nested dyadic grid plus seeded random pairs.
[[nodiscard]] double holderSeminorm(const std::function<double(std::span<const double>)>& phi, const Box& window,
                                    double gamma, const SamplerConfig& cfg);

}  // namespace campanato
