#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "campanato/field.hpp"
#include "campanato/seminorm.hpp"

namespace campanato {

/// f(x̄, x_N) below or on the graph of φ, f(x̄, 2φ(x̄) - x_N) above it.
/// Defined for x̄ in `window` when one is given.
[[nodiscard]] ScalarField reflectExtend(const ScalarField& f, const BoundaryFunction& phi,
                                        const std::optional<Box>& window = std::nullopt);
/// Uses the graph and window of the ElementaryDomain that `f` is defined on.
[[nodiscard]] ScalarField reflectExtend(const ScalarField& f);

struct McShaneOptions {
    /// Grid nodes per axis on W; 0 selects 2^12 + 1 (N-1 = 1), 257 (N-1 = 2), 33 otherwise.
    int nodesPerAxis = 0;
    bool refine = true;
};

/// φ̃(x̄) = inf_{ȳ ∈ W} {φ(ȳ) + L|x̄ - ȳ|^γ}, evaluated on a grid with local
/// golden-section refinement; equals φ exactly on W.
class McShaneExtension {
public:
    McShaneExtension(std::function<double(std::span<const double>)> phi, Box window, double gamma, double constant,
                     const McShaneOptions& opts);

    double operator()(std::span<const double> x) const;
    [[nodiscard]] double constant() const noexcept { return constant_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] const Box& window() const noexcept { return window_; }
    [[nodiscard]] int nodesPerAxis() const noexcept { return perAxis_; }
    /// Grid node coordinates on W (flattened, row-major by axis 0 slowest).
    [[nodiscard]] std::vector<double> gridNode(std::size_t flat) const;
    [[nodiscard]] std::size_t gridSize() const noexcept { return values_.size(); }
    [[nodiscard]] BoundaryFunction asBoundaryFunction() const;

private:
    [[nodiscard]] double objective(std::span<const double> x, std::span<const double> y) const;

    std::function<double(std::span<const double>)> phi_;
    Box window_;
    double gamma_;
    double constant_;
    int perAxis_;
    bool refine_;
    std::vector<double> values_;
};

/// L defaults to holderSeminorm(φ) inflated by 1%. Throws ConsistencyError
/// for L = 0 with a nonconstant sampled φ.
[[nodiscard]] McShaneExtension mcshaneExtend(const std::function<double(std::span<const double>)>& phi,
                                             const Box& window, double gamma, std::optional<double> constant,
                                             const SamplerConfig& cfg, const McShaneOptions& opts = {});

struct AtlasPart {
    ScalarField f;
    std::size_t patch = 0;
};

struct AtlasExtensionResult {
    ScalarField F;
    /// G_k ∘ R_k, one per part.
    std::vector<ScalarField> components;
    std::vector<std::string> provenance;
    double restrictionError = 0.0;
    std::size_t checkedPoints = 0;
};

/// F = Σ G_k ∘ R_k. Boundary patch: zero extension to the subgraph of the
/// McShane-extended φ_k, even reflection across it, times a cutoff equal to 1
/// on (V_k)_{δ/2} and 0 outside (V_k)_{δ/4}. Interior patch: zero extension.
/// Throws PreconditionError if a part is nonzero outside (V_k)_{δ/2} and
/// ConsistencyError if F differs from Σ f_k on Ω by more than 1e-8.
[[nodiscard]] AtlasExtensionResult atlasExtend(const std::vector<AtlasPart>& parts,
                                               const std::shared_ptr<const Atlas>& atlas, const Domain& omega,
                                               const SamplerConfig& cfg, const McShaneOptions& opts = {});

struct CompactExtensionResult {
    ScalarField extended;
    /// δ_γ distance between sampled support points and sampled ∂Ω.
    double supportDistance = 0.0;
    double rBar = 0.0;
    double estimateExtended = 0.0;
    double seminormOnOmega = 0.0;
    double lpNormOnOmega = 0.0;
    /// estimateExtended / (seminormOnOmega + lpNormOnOmega).
    double ratio = 0.0;
    std::size_t bigBallsChecked = 0;
    bool bigBallBoundHolds = true;
    /// max over balls with r >= r̄ of value^p / (2^p‖f‖_p^p / (2ω r̄^{N_γ})^λ).
    double worstBigBallRatio = 0.0;
};

/// Zero extension of a field whose support is compact in Ω, with the
/// large-radius bound checked per sampled ball. Denominators are |B|^λ.
[[nodiscard]] CompactExtensionResult compactZeroExtend(const ScalarField& f, const Domain& d,
                                                       const SeminormSpec& spec, const SamplerConfig& cfg);

}  // namespace campanato
