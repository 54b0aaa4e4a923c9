#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "campanato/domain.hpp"
#include "campanato/field.hpp"

namespace campanato {

enum class SeminormKind { Campanato, CampanatoSymmetric, Morrey, BmoClassicInside, BmoGammaInside, RotatedCampanato };
/// Denominator |B∩Ω|^λ or r^{λ N_γ}.
enum class Normalization { MeasureOfIntersection, RPower };

[[nodiscard]] std::string toString(SeminormKind k);
[[nodiscard]] std::string toString(Normalization n);
[[nodiscard]] SeminormKind parseSeminormKind(const std::string& s);
[[nodiscard]] Normalization parseNormalization(const std::string& s);

struct SeminormSpec {
    SeminormKind kind = SeminormKind::Campanato;
    double lambda = 1.0;
    double p = 1.0;
    double gamma = 1.0;
    std::optional<Isometry> rotation;
    /// Unset: rPower on property-(A) domains, measureOfIntersection otherwise.
    std::optional<Normalization> normalization;

    void validate() const;
    [[nodiscard]] Normalization resolvedNormalization(const Domain& d) const;
};

using Trace = std::vector<std::pair<double, double>>;

struct SeminormReport {
    std::string kind;
    Normalization normalization = Normalization::RPower;
    /// Lower bound of the supremum (max over the trace).
    double estimate = 0.0;
    AnisoBall witnessBall;
    /// (r, best value at r), in ladder order.
    Trace perRadiusTrace;
    double standardErrorAtWitness = 0.0;
    /// Estimate after each refinement round.
    std::vector<double> rounds;
    std::size_t ballsEvaluated = 0;
    std::size_t ballsAdmissible = 0;
    /// Symmetric form: true when every ball used the full double average.
    bool fullPairAverage = true;
};

/// p-th root of the weighted average of |v - mean|^p; nullopt for an empty region.
[[nodiscard]] std::optional<double> meanOscillation(std::span<const double> values, std::span<const double> weights,
                                                    double p);
[[nodiscard]] std::optional<double> meanOscillation(const ScalarField& f, const RegionSample& region, double p);

struct BallEvaluation {
    /// False for empty regions, or for inside-BMO kinds when B ⊄ Ω.
    bool admissible = false;
    double value = 0.0;
    double measure = 0.0;
    std::size_t nodes = 0;
    double standardError = 0.0;
    bool fullPairAverage = true;
};

/// Value of the functional on a single ball; `streamSeed` fixes the quadrature nodes.
[[nodiscard]] BallEvaluation evaluateBall(const ScalarField& f, const Domain& d, const SeminormSpec& spec,
                                          const AnisoBall& ball, const SamplerConfig& cfg, std::uint64_t streamSeed);

/// Seed used for ball (center i, radius j); shared by all kinds so forms can be compared ball by ball.
[[nodiscard]] std::uint64_t ballSeed(const SamplerConfig& cfg, std::size_t centerIdx, std::size_t radiusIdx);

/// Sampled sup over centers × radius ladder, repeated for each refinement round.
[[nodiscard]] SeminormReport estimateSeminorm(const ScalarField& f, const Domain& d, const SeminormSpec& spec,
                                              const SamplerConfig& cfg);
/// estimateSeminorm with kind forced to campanatoSymmetric.
[[nodiscard]] SeminormReport estimateSymmetricSeminorm(const ScalarField& f, const Domain& d, SeminormSpec spec,
                                                       const SamplerConfig& cfg);

/// ‖f‖_{L^p(Ω)} by quadrature over the bounding box (Monte Carlo or tensor grid per cfg).
[[nodiscard]] double lpNorm(const ScalarField& f, const Domain& d, double p, const SamplerConfig& cfg);

struct SumSpaceTerm {
    ScalarField f;
    Isometry rotation;
};

/// Σ_k (‖f_k‖_p + rotated Campanato seminorm of f_k) for the given decomposition:
/// an upper bound for the infimum over decompositions.
[[nodiscard]] double sumSpaceNorm(const std::vector<SumSpaceTerm>& terms, const Domain& d, const SeminormSpec& spec,
                                  const SamplerConfig& cfg);

struct DivergenceFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

/// Least-squares fit of log(value) against log(r).
[[nodiscard]] DivergenceFit fitDivergenceRate(const Trace& trace);

}  // namespace campanato
