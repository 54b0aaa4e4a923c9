#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "campanato/metric.hpp"
#include "campanato/sampling.hpp"

namespace campanato {

/// Named real function on R^{N-1}, drawn from a built-in catalog so that
/// configuration files can refer to it.
struct BoundaryFunction {
    std::string name;
    std::map<std::string, double> params;
    std::function<double(std::span<const double>)> eval;
    /// Closed-form Hölder constant for the catalog exponent, when known.
    std::optional<double> holderConstant;
    /// Hölder exponent that `holderConstant` refers to.
    std::optional<double> holderExponent;

    double operator()(std::span<const double> x) const { return eval(x); }
};

/// Catalog: "constant" {value}; "power" {offset, scale, exponent}: offset + scale |x̄|^exponent;
/// "sine" {offset, amplitude, frequency}: offset + amplitude sin(frequency x_1).
/// Unknown names or parameters raise InvalidInput.
[[nodiscard]] BoundaryFunction makeBoundaryFunction(const std::string& name,
                                                    const std::map<std::string, double>& params);

/// One chart of an atlas. In chart coordinates y = toChart(x) the cuboid is
/// the open box; a boundary patch is the subgraph a_N < y_N < φ(ȳ), ȳ ∈ W.
struct AtlasPatch {
    Isometry toChart;
    Box box;
    /// Absent for interior (full-cuboid) patches.
    std::optional<BoundaryFunction> phi;
    double holderConstant = 0.0;

    [[nodiscard]] bool isBoundaryPatch() const noexcept { return phi.has_value(); }
    /// Chart-coordinate box shrunk by `margin` on every side ((V)_margin).
    [[nodiscard]] Box shrunk(double margin) const;
    /// Headbox W = Π_{i<N} (a_i, b_i).
    [[nodiscard]] Box window() const;
    /// x ∈ Ω ∩ V_k according to this patch.
    [[nodiscard]] bool containsInPatch(const Point& x) const;
    [[nodiscard]] bool inCuboid(const Point& x) const;
    [[nodiscard]] bool inShrunk(const Point& x, double margin) const;
};

struct Atlas {
    int dimension = 2;
    double gamma = 1.0;
    double delta = 0.1;
    std::vector<AtlasPatch> patches;

    /// Checks a_{N,k} < a_{N,k} + δ < b_{N,k} - δ < b_{N,k} and dimensions.
    void validateStructure() const;
};

class Domain;

struct AtlasCondition {
    std::string name;
    bool passed = true;
    std::optional<Point> witness;
    std::string detail;
};

struct AtlasReport {
    std::vector<AtlasCondition> conditions;
    [[nodiscard]] bool allPassed() const noexcept;
};

/// Sampled check of the three atlas conditions for `omega` (covering
/// conditions and patch shape). Failures are reported, never thrown.
[[nodiscard]] AtlasReport validateAtlas(const Atlas& atlas, const Domain& omega, const SamplerConfig& cfg);

}  // namespace campanato
