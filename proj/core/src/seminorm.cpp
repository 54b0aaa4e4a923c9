#include "campanato/seminorm.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/error.hpp"
#include "campanato/parallel.hpp"

namespace campanato {
namespace {

constexpr std::uint64_t kTagBall = 0x42414c4cULL;
constexpr std::uint64_t kTagSeminormCenters = 0x53454d49ULL;
constexpr std::uint64_t kTagPairs = 0x50414952ULL;
constexpr std::uint64_t kTagLp = 0x4c504e4dULL;
constexpr std::size_t kFullPairLimit = 512;

bool insideKind(SeminormKind k) { return k == SeminormKind::BmoClassicInside || k == SeminormKind::BmoGammaInside; }

MetricParams metricFor(const Domain& d, const SeminormSpec& spec) {
    return {d.dimension(), spec.kind == SeminormKind::BmoClassicInside ? 1.0 : spec.gamma};
}

/// The 2N axis-extreme points of the ball (on its boundary).
bool extremesInside(const Domain& d, const AnisoBall& ball, const MetricParams& m) {
    const int n = m.dimension();
    for (int i = 0; i < n; ++i) {
        const double h = i == n - 1 ? ball.radius : ball.headRadius(m);
        for (double s : {-1.0, 1.0}) {
            Point y = ball.center;
            y[i] += s * h;
            if (!d.contains(y)) return false;
        }
    }
    return true;
}

struct Prepared {
    ScalarField f;
    std::shared_ptr<const Domain> domain;
    SeminormSpec spec;
};

Prepared prepare(const ScalarField& f, const Domain& d, const SeminormSpec& spec) {
    spec.validate();
    if (f.dimension() != d.dimension()) throw InvalidInput("seminorm: field and domain dimensions differ");
    if (spec.kind != SeminormKind::RotatedCampanato) {
        return {f, std::make_shared<const Domain>(d), spec};
    }
    const Isometry& r = *spec.rotation;
    if (r.dimension() != d.dimension()) throw InvalidInput("seminorm: rotation dimension mismatch");
    SeminormSpec inner = spec;
    inner.kind = SeminormKind::Campanato;
    inner.normalization = spec.resolvedNormalization(d);
    return {composeWithIsometry(f, r), makeDomain(MappedDomain{std::make_shared<const Domain>(d), r}), inner};
}

BallEvaluation evaluatePrepared(const ScalarField& f, const Domain& d, const SeminormSpec& spec, Normalization norm,
                                const AnisoBall& ball, const SamplerConfig& cfg, std::uint64_t seed) {
    const MetricParams m = metricFor(d, spec);
    const BallRegion br = ballRegion(d, ball, m, cfg, seed);
    BallEvaluation ev;
    ev.nodes = br.region.size();
    ev.measure = br.region.measure();
    if (br.region.empty()) return ev;
    if (insideKind(spec.kind) && (br.region.size() != br.ballNodeCount || !extremesInside(d, ball, m))) return ev;
    ev.admissible = true;

    const auto& nodes = br.region.nodes;
    const auto& w = br.region.weights;
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
    const double p = spec.p;
    const double measure = ev.measure;
    const double denom = norm == Normalization::RPower ? powGamma(ball.radius, spec.lambda * m.criticalExponent())
                                                       : powGamma(measure, spec.lambda);

    double mean = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) mean += w[i] * v[i];
    mean /= measure;

    double integral = 0.0;
    double sumSq = 0.0;
    if (spec.kind == SeminormKind::CampanatoSymmetric) {
        double avg = 0.0;
        if (v.size() <= kFullPairLimit) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t j = 0; j < v.size(); ++j) avg += w[i] * w[j] * powGamma(std::abs(v[i] - v[j]), p);
            }
            avg /= measure * measure;
        } else {
            ev.fullPairAverage = false;
            Rng rng(deriveSeed(seed, kTagPairs));
            const auto n = static_cast<std::uint64_t>(v.size());
            for (int s = 0; s < cfg.pairSampleCount; ++s) {
                avg += powGamma(std::abs(v[rng.below(n)] - v[rng.below(n)]), p);
            }
            avg /= cfg.pairSampleCount;
        }
        ev.value = powGamma(measure * avg / denom, 1.0 / p);
        return ev;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double g = spec.kind == SeminormKind::Morrey ? v[i] : v[i] - mean;
        const double c = powGamma(std::abs(g), p);
        integral += w[i] * c;
        sumSq += c * c;
    }
    if (insideKind(spec.kind)) {
        ev.value = powGamma(integral / measure, 1.0 / p);
    } else {
        ev.value = powGamma(integral / denom, 1.0 / p);
    }
    if (br.stochastic && br.ballNodeCount > 1 && integral > 0.0) {
        const auto n = static_cast<double>(br.ballNodeCount);
        const double meanC = integral / br.ballVolume;
        const double var = std::max(0.0, sumSq / n - meanC * meanC);
        const double seIntegral = br.ballVolume * std::sqrt(var / n);
        ev.standardError = ev.value * seIntegral / (p * integral);
    }
    return ev;
}

SeminormReport runRound(const Prepared& pr, Normalization norm, const SamplerConfig& cfg, double diam) {
    const Domain& d = *pr.domain;
    const auto centers = sampleCenters(d, cfg, false, kTagSeminormCenters);
    const auto radii = cfg.radiusLadder.radii(diam);
    const std::size_t nr = radii.size();
    std::vector<BallEvaluation> evals(centers.size() * nr);
    parallelFor(evals.size(), [&](std::size_t idx) {
        const std::size_t i = idx / nr;
        const std::size_t j = idx % nr;
        evals[idx] = evaluatePrepared(pr.f, d, pr.spec, norm, AnisoBall{centers[i], radii[j]}, cfg, ballSeed(cfg, i, j));
    });

    SeminormReport rep;
    rep.normalization = norm;
    rep.estimate = -1.0;
    rep.ballsEvaluated = evals.size();
    for (std::size_t j = 0; j < nr; ++j) {
        double best = -1.0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const auto& ev = evals[i * nr + j];
            if (!ev.admissible) continue;
            ++rep.ballsAdmissible;
            rep.fullPairAverage = rep.fullPairAverage && ev.fullPairAverage;
            best = std::max(best, ev.value);
            if (ev.value > rep.estimate) {
                rep.estimate = ev.value;
                rep.witnessBall = AnisoBall{centers[i], radii[j]};
                rep.standardErrorAtWitness = ev.standardError;
            }
        }
        if (best >= 0.0) rep.perRadiusTrace.emplace_back(radii[j], best);
    }
    if (rep.ballsAdmissible == 0) {
        throw EmptyCandidateError("seminorm: no admissible candidate balls (" + toString(pr.spec.kind) + ")");
    }
    return rep;
}

}  // namespace

std::string toString(SeminormKind k) {
    switch (k) {
        case SeminormKind::Campanato: return "campanato";
        case SeminormKind::CampanatoSymmetric: return "campanatoSymmetric";
        case SeminormKind::Morrey: return "morrey";
        case SeminormKind::BmoClassicInside: return "bmoClassicInside";
        case SeminormKind::BmoGammaInside: return "bmoGammaInside";
        case SeminormKind::RotatedCampanato: return "rotatedCampanato";
    }
    return "unknown";
}

std::string toString(Normalization n) {
    return n == Normalization::RPower ? "rPower" : "measureOfIntersection";
}

SeminormKind parseSeminormKind(const std::string& s) {
    for (auto k : {SeminormKind::Campanato, SeminormKind::CampanatoSymmetric, SeminormKind::Morrey,
                   SeminormKind::BmoClassicInside, SeminormKind::BmoGammaInside, SeminormKind::RotatedCampanato}) {
        if (toString(k) == s) return k;
    }
    throw InvalidInput("unknown seminorm kind '" + s + "'");
}

Normalization parseNormalization(const std::string& s) {
    if (s == "rPower") return Normalization::RPower;
    if (s == "measureOfIntersection") return Normalization::MeasureOfIntersection;
    throw InvalidInput("unknown normalization '" + s + "' (expected rPower or measureOfIntersection)");
}

void SeminormSpec::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("seminorm: lambda must be positive");
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("seminorm: p must be >= 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidInput("seminorm: gamma must lie in (0, 1]");
    if (kind == SeminormKind::RotatedCampanato && !rotation) {
        throw InvalidInput("seminorm: rotatedCampanato requires a rotation");
    }
}

Normalization SeminormSpec::resolvedNormalization(const Domain& d) const {
    if (normalization) return *normalization;
    return d.hasPropertyA() ? Normalization::RPower : Normalization::MeasureOfIntersection;
}

std::optional<double> meanOscillation(std::span<const double> values, std::span<const double> weights, double p) {
    if (values.empty()) return std::nullopt;
    if (values.size() != weights.size()) throw InvalidInput("meanOscillation: values/weights length mismatch");
    double mass = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        mass += weights[i];
        mean += weights[i] * values[i];
    }
    if (!(mass > 0.0)) return std::nullopt;
    mean /= mass;
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * powGamma(std::abs(values[i] - mean), p);
    return powGamma(s / mass, 1.0 / p);
}

std::optional<double> meanOscillation(const ScalarField& f, const RegionSample& region, double p) {
    std::vector<double> v(region.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(region.nodes[i]);
    return meanOscillation(v, region.weights, p);
}

std::uint64_t ballSeed(const SamplerConfig& cfg, std::size_t centerIdx, std::size_t radiusIdx) {
    return deriveSeed(cfg.seed, kTagBall, centerIdx, radiusIdx);
}

BallEvaluation evaluateBall(const ScalarField& f, const Domain& d, const SeminormSpec& spec, const AnisoBall& ball,
                            const SamplerConfig& cfg, std::uint64_t streamSeed) {
    const Prepared pr = prepare(f, d, spec);
    if (ball.center.dimension() != d.dimension()) throw InvalidInput("evaluateBall: center dimension mismatch");
    return evaluatePrepared(pr.f, *pr.domain, pr.spec, spec.resolvedNormalization(d), ball, cfg, streamSeed);
}

SeminormReport estimateSeminorm(const ScalarField& f, const Domain& d, const SeminormSpec& spec,
                                const SamplerConfig& cfg) {
    cfg.validate();
    const Prepared pr = prepare(f, d, spec);
    const Normalization norm = spec.resolvedNormalization(d);
    const double diam = diameter(*pr.domain, metricFor(*pr.domain, pr.spec), cfg).value;
    SeminormReport rep;
    std::vector<double> rounds;
    for (int round = 0; round <= cfg.refinementRounds; ++round) {
        rep = runRound(pr, norm, cfg.refined(round), diam);
        rounds.push_back(rep.estimate);
    }
    rep.rounds = std::move(rounds);
    rep.kind = toString(spec.kind);
    return rep;
}

SeminormReport estimateSymmetricSeminorm(const ScalarField& f, const Domain& d, SeminormSpec spec,
                                         const SamplerConfig& cfg) {
    spec.kind = SeminormKind::CampanatoSymmetric;
    return estimateSeminorm(f, d, spec, cfg);
}

double lpNorm(const ScalarField& f, const Domain& d, double p, const SamplerConfig& cfg) {
    if (!(p >= 1.0)) throw InvalidInput("lpNorm: p must be >= 1");
    const std::optional<Box> box = cfg.centerWindow ? cfg.centerWindow : d.boundingBox();
    if (!box) throw InvalidInput("lpNorm: unbounded domain requires a centerWindow");
    const int n = d.dimension();
    double sum = 0.0;
    double weight = 0.0;
    Point x(n);
    if (cfg.quadrature == QuadratureMode::Tensor) {
        const int k = cfg.tensorNodesPerAxis;
        std::size_t total = 1;
        for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(k);
        weight = box->volume() / static_cast<double>(total);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int a = 0; a < n; ++a) {
                const auto ai = static_cast<std::size_t>(a);
                const double idx = static_cast<double>(rem % static_cast<std::size_t>(k)) + 0.5;
                rem /= static_cast<std::size_t>(k);
                x[a] = box->lo[ai] + (box->hi[ai] - box->lo[ai]) * idx / k;
            }
            if (d.contains(x)) sum += powGamma(std::abs(f(x)), p);
        }
    } else {
        const int count = std::max(cfg.pairSampleCount, 4096);
        weight = box->volume() / count;
        Rng rng(deriveSeed(cfg.seed, kTagLp));
        for (int s = 0; s < count; ++s) {
            box->sample(rng, x.coords());
            if (d.contains(x)) sum += powGamma(std::abs(f(x)), p);
        }
    }
    return powGamma(sum * weight, 1.0 / p);
}

double sumSpaceNorm(const std::vector<SumSpaceTerm>& terms, const Domain& d, const SeminormSpec& spec,
                    const SamplerConfig& cfg) {
    if (terms.empty()) throw InvalidInput("sumSpaceNorm: empty decomposition");
    double total = 0.0;
    for (const auto& t : terms) {
        SeminormSpec s = spec;
        s.kind = SeminormKind::RotatedCampanato;
        s.rotation = t.rotation;
        total += lpNorm(t.f, d, spec.p, cfg) + estimateSeminorm(t.f, d, s, cfg).estimate;
    }
    return total;
}

DivergenceFit fitDivergenceRate(const Trace& trace) {
    if (trace.size() < 5) throw InvalidInput("fitDivergenceRate: need at least 5 trace points");
    const auto n = static_cast<double>(trace.size());
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [r, v] : trace) {
        if (!(r > 0.0) || !(v > 0.0)) throw InvalidInput("fitDivergenceRate: nonpositive trace value");
        sx += std::log(r);
        sy += std::log(v);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [r, v] : trace) {
        const double dx = std::log(r) - mx;
        const double dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw InvalidInput("fitDivergenceRate: radii must not all coincide");
    DivergenceFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace campanato
