#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "campanato/atlas.hpp"
#include "campanato/domain.hpp"

namespace campanato {

using Evaluator = std::function<double(const Point&)>;

/// Closed-form real field on a domain. A null `definedOn` means all of R^N.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int dimension, Evaluator eval, std::shared_ptr<const Domain> definedOn, std::string label);

    /// Throws DomainViolation outside `definedOn`.
    double operator()(const Point& x) const;
    /// Skips the membership check; callers guarantee x lies in the domain.
    [[nodiscard]] double evaluateUnchecked(const Point& x) const { return eval_(x); }

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] const std::shared_ptr<const Domain>& definedOn() const noexcept { return definedOn_; }
    [[nodiscard]] bool total() const noexcept { return definedOn_ == nullptr; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

private:
    int dimension_ = 0;
    Evaluator eval_;
    std::shared_ptr<const Domain> definedOn_;
    std::string label_;
};

/// Catalog:
///   log {}                             log x on (0, inf)
///   coordinate {index, dimension}      x_index (1-based)
///   signedPower {index, exponent, dimension}  sign(x_i)|x_i|^exponent
///   constant {value, dimension}
///   polynomial {dimension, <monomial>: coefficient}, monomials written
///     "c" (constant), "x1", "x1x2", "x2x2x2", ...
///   distLogToPoint {dimension, gamma, p1..pN}  log δ_γ(x, p), undefined at p
/// `on` overrides the natural domain (R^N, or (0, inf) for log).
[[nodiscard]] ScalarField builtinField(const std::string& name, const std::map<std::string, double>& params,
                                       std::shared_ptr<const Domain> on = nullptr);

/// f on its domain, 0 elsewhere; total on R^N.
[[nodiscard]] ScalarField zeroExtend(const ScalarField& f);
/// Same evaluator, definedOn narrowed to `sub`.
[[nodiscard]] ScalarField restrictTo(const ScalarField& f, std::shared_ptr<const Domain> sub);
/// y ↦ f(R^{-1} y), defined on R(definedOn).
[[nodiscard]] ScalarField composeWithIsometry(const ScalarField& f, const Isometry& r);
/// a·f + b·g on the intersection of both domains.
[[nodiscard]] ScalarField linearCombination(double a, const ScalarField& f, double b, const ScalarField& g);
/// f·g on the domain of f (g must be total or contain it).
[[nodiscard]] ScalarField multiply(const ScalarField& f, const ScalarField& g);
[[nodiscard]] ScalarField scaled(const ScalarField& f, double c);

/// C^∞ ramp e(t)/(e(t)+e(1-t)), e(t) = exp(-1/t) for t > 0 and 0 otherwise.
[[nodiscard]] double smoothRamp(double t) noexcept;

/// Tensor-product bump on a cuboid in chart coordinates: 1 on the box shrunk
/// by `outerMargin`, 0 outside the box shrunk by `innerMargin`.
class SmoothCutoff {
public:
    SmoothCutoff(Isometry toChart, Box box, double innerMargin, double outerMargin);

    double operator()(const Point& x) const;
    /// Value at chart coordinates.
    [[nodiscard]] double inChart(const Point& y) const;
    [[nodiscard]] ScalarField asField() const;

    [[nodiscard]] const Box& box() const noexcept { return box_; }
    [[nodiscard]] double innerMargin() const noexcept { return inner_; }
    [[nodiscard]] double outerMargin() const noexcept { return outer_; }

private:
    Isometry toChart_;
    Box box_;
    double inner_;
    double outer_;
};

[[nodiscard]] SmoothCutoff makeCutoff(const Isometry& toChart, const Box& box, double innerMargin,
                                      double outerMargin);

/// ψ_k = η_k / Σ η_j with η_k = 1 on (V_k)_δ, supported in (V_k)_{δ/2}.
class PartitionOfUnity {
public:
    explicit PartitionOfUnity(std::shared_ptr<const Atlas> atlas);

    [[nodiscard]] std::size_t size() const noexcept { return bumps_.size(); }
    /// All ψ_k(x); zero vector where no bump is active.
    [[nodiscard]] std::vector<double> values(const Point& x) const;
    [[nodiscard]] double psi(std::size_t k, const Point& x) const;
    [[nodiscard]] double denominator(const Point& x) const;
    [[nodiscard]] ScalarField field(std::size_t k) const;
    [[nodiscard]] const Atlas& atlas() const noexcept { return *atlas_; }

private:
    std::shared_ptr<const Atlas> atlas_;
    std::vector<SmoothCutoff> bumps_;
};

/// Builds the partition; when `omega` is given, samples it and throws
/// PreconditionError if the denominator drops below 1e-8 at a domain point.
[[nodiscard]] PartitionOfUnity makePartitionOfUnity(std::shared_ptr<const Atlas> atlas, const Domain* omega = nullptr,
                                                    const SamplerConfig& cfg = {});

}  // namespace campanato
