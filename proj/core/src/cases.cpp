#include "campanato/cases.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "campanato/domain.hpp"
#include "campanato/error.hpp"
#include "campanato/extend.hpp"
#include "campanato/field.hpp"
#include "campanato/rng.hpp"
#include "campanato/seminorm.hpp"

namespace campanato {

std::string toString(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void CaseResult::check(const std::string& name, bool passed, double value, double bound, std::string detail) {
    assertions.push_back({name, passed, value, bound, std::move(detail)});
}

void CaseResult::finalize() {
    if (assertions.empty()) {
        verdict = Verdict::Inconclusive;
        return;
    }
    const bool ok = std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
    verdict = ok ? Verdict::Pass : Verdict::Fail;
}

namespace {

constexpr std::uint64_t kTagCase = 0x43415345ULL;

std::string radiusKey(const std::string& prefix, double r) {
    std::ostringstream os;
    os << prefix << "@r=" << r;
    return os.str();
}

SamplerConfig baseSampler(const CaseOptions& opts, std::uint64_t caseTag) {
    SamplerConfig cfg;
    cfg.seed = deriveSeed(opts.seed, kTagCase, caseTag);
    cfg.refinementRounds = opts.refine;
    return cfg;
}

bool relClose(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

std::shared_ptr<const Domain> cuspDomain(double gamma) { return makeDomain(CuspDomain{gamma}); }

// ---------------------------------------------------------------- log-zero-extension

/// Gauss–Legendre nodes on [a, b] split at the dyadic points a + (b-a)·2^{-j} towards a,
/// plus the optional breakpoint `kink`.
void appendGraded(RegionSample& out, double a, double b, int levels, std::optional<double> kink) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    std::vector<double> cuts{a};
    for (int j = levels; j >= 0; --j) cuts.push_back(a + (b - a) * std::ldexp(1.0, -j));
    if (kink && *kink > a && *kink < b) cuts.push_back(*kink);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        const double half = 0.5 * (cuts[s + 1] - cuts[s]);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (const double sgn : {-1.0, 1.0}) {
                if (xs[i] == 0.0 && sgn > 0) continue;
                out.nodes.push_back(Point{mid + sgn * half * xs[i]});
                out.weights.push_back(half * ws[i]);
            }
        }
    }
}

double weightedMean(const ScalarField& f, const RegionSample& s) {
    double num = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) num += s.weights[i] * f(s.nodes[i]);
    return num / s.measure();
}

CaseResult caseLogZeroExtension(const CaseOptions&) {
    CaseResult res;
    const ScalarField f0 = zeroExtend(builtinField("log", {}));
    constexpr double kMeanTol = 1e-6;
    res.tolerances["meanRelative"] = kMeanTol;
    res.tolerances["tailDominance"] = 2.0;

    const auto sampleFor = [&](double r, std::optional<double> kink) {
        RegionSample s;
        s.nodes.push_back(Point{-0.5 * r});
        s.weights.push_back(r);
        appendGraded(s, 0.0, r, 60, kink);
        return s;
    };

    for (const double r : {0.01, 1.0, 100.0}) {
        const double expected = 0.5 * (std::log(r) - 1.0);
        const RegionSample plain = sampleFor(r, std::nullopt);
        const double mean = weightedMean(f0, plain);
        res.metrics[radiusKey("mean", r)] = mean;
        res.check(radiusKey("mean", r), relClose(mean, expected, kMeanTol), mean, expected,
                  "interval mean of f0 over [-r, r]");
        const RegionSample split = sampleFor(r, std::exp(mean));
        const double osc = *meanOscillation(f0, split, 1.0);
        const double lower = std::abs(std::log(r) - 1.0) / 4.0;
        res.metrics[radiusKey("oscillation", r)] = osc;
        res.check(radiusKey("oscillationLowerBound", r), osc >= lower, osc, lower);
    }

    Trace trace;
    for (int e = -6; e <= 6; ++e) {
        const double r = std::pow(10.0, e);
        const RegionSample plain = sampleFor(r, std::nullopt);
        const double mean = weightedMean(f0, plain);
        trace.emplace_back(r, *meanOscillation(f0, sampleFor(r, std::exp(mean)), 1.0));
    }
    const double middle = trace[6].second;
    res.metrics["oscillationMiddle"] = middle;
    res.metrics["oscillationSmallTail"] = trace.front().second;
    res.metrics["oscillationLargeTail"] = trace.back().second;
    res.check("divergenceAsRToZero", trace.front().second > 2.0 * middle, trace.front().second, 2.0 * middle);
    res.check("divergenceAsRToInfinity", trace.back().second > 2.0 * middle, trace.back().second, 2.0 * middle);
    res.traces["oscillation"] = std::move(trace);
    return res;
}

// ---------------------------------------------------------------- strip-separation

CaseResult caseStripSeparation(const CaseOptions& opts) {
    CaseResult res;
    const auto strip = makeDomain(Strip{});
    const ScalarField f = builtinField("coordinate", {{"index", 1}, {"dimension", 2}});
    const MetricParams m(2, 1.0);
    constexpr double kOscTol = 1e-3;
    constexpr double kInsideBound = 1.1;
    constexpr double kSlopeTol = 0.05;
    res.tolerances["oscillationRelative"] = kOscTol;
    res.tolerances["insideBmoBound"] = kInsideBound;
    res.tolerances["slope"] = kSlopeTol;

    SamplerConfig tensor = baseSampler(opts, 2);
    tensor.quadrature = QuadratureMode::Tensor;
    tensor.tensorNodesPerAxis = 64;

    for (const double r : {2.0, 8.0, 32.0}) {
        const AnisoBall q{Point{0.0, 0.0}, r};
        const BallRegion br = ballRegion(*strip, q, m, tensor, 0);
        const double osc = *meanOscillation(f, br.region, 1.0);
        res.metrics[radiusKey("oscillation", r)] = osc;
        res.check(radiusKey("oscillation", r), relClose(osc, r / 2.0, kOscTol), osc, r / 2.0,
                  "mean oscillation of x1 over Q(0, r) intersected with the strip");
    }

    SeminormSpec camp;
    camp.kind = SeminormKind::Campanato;
    camp.normalization = Normalization::MeasureOfIntersection;
    SamplerConfig cfg = tensor;
    cfg.centerCount = 16;
    cfg.fixedCenters = {Point{0.0, 0.0}};
    cfg.centerWindow = Box{{-10.0, -1.0}, {10.0, 1.0}};
    cfg.radiusLadder = {64.0, 0.5, 7};
    const SeminormReport growth = estimateSeminorm(f, *strip, camp, cfg);
    const DivergenceFit fit = fitDivergenceRate(growth.perRadiusTrace);
    res.metrics["campanatoSlope"] = fit.slope;
    res.metrics["campanatoSlopeR2"] = fit.r2;
    res.metrics["campanatoEstimate"] = growth.estimate;
    res.check("campanatoGrowthSlope", std::abs(fit.slope - 1.0) <= kSlopeTol, fit.slope, 1.0);
    res.traces["campanato"] = growth.perRadiusTrace;

    SamplerConfig small = cfg;
    small.radiusLadder = {1.0, 0.5, 6};
    SeminormSpec inside;
    inside.kind = SeminormKind::BmoClassicInside;
    const SeminormReport bmo = estimateSeminorm(f, *strip, inside, small);
    res.metrics["insideBmoEstimate"] = bmo.estimate;
    res.metrics["insideBmoAdmissibleBalls"] = static_cast<double>(bmo.ballsAdmissible);
    res.check("insideBmoBounded", bmo.estimate <= kInsideBound, bmo.estimate, kInsideBound);
    res.traces["insideBmo"] = bmo.perRadiusTrace;

    // Shared candidates: every admissible inside ball is also a Campanato candidate.
    const SeminormReport campSmall = estimateSeminorm(f, *strip, camp, small);
    res.metrics["campanatoSmallEstimate"] = campSmall.estimate;
    res.check("insideBelowCampanato", bmo.estimate <= campSmall.estimate * (1.0 + 1e-12), bmo.estimate,
              campSmall.estimate, "classical inside estimate against lambda = 1 Campanato on the same balls");
    return res;
}

// ---------------------------------------------------------------- cusp-metric-separation

CaseResult caseCuspMetricSeparation(const CaseOptions& opts) {
    CaseResult res;
    constexpr double gamma = 0.5;
    constexpr double lambda = 1.25;
    const double alpha = (1.0 + 1.0 / gamma) * (lambda - 1.0);
    const double expectedSlope = (gamma - 1.0) * (lambda - 1.0);
    constexpr double kSlopeTol = 0.02;
    constexpr double kMeanTol = 1e-9;
    constexpr double kBoundedRatio = 2.0;
    res.tolerances["slope"] = kSlopeTol;
    res.tolerances["squareMeanRelative"] = kMeanTol;
    res.tolerances["anisotropicLastOverFirst"] = kBoundedRatio;
    res.metrics["alpha"] = alpha;
    res.metrics["expectedSlope"] = expectedSlope;

    const auto omega = cuspDomain(gamma);
    const ScalarField f =
        builtinField("signedPower", {{"index", 1}, {"exponent", gamma * alpha}, {"dimension", 2}}, omega);

    SamplerConfig tensor = baseSampler(opts, 3);
    tensor.quadrature = QuadratureMode::Tensor;
    tensor.tensorNodesPerAxis = 200;

    SeminormSpec euclid;
    euclid.kind = SeminormKind::Campanato;
    euclid.lambda = lambda;
    euclid.gamma = 1.0;
    euclid.normalization = Normalization::MeasureOfIntersection;
    const MetricParams m1(2, 1.0);

    Trace squares;
    double worstMean = 0.0;
    for (int k = 4; k <= 12; ++k) {
        const double r = std::ldexp(1.0, -k);
        const AnisoBall q{Point{0.0, r}, r};
        const BallEvaluation ev = evaluateBall(f, *omega, euclid, q, tensor, 0);
        squares.emplace_back(r, ev.value);
        const BallRegion br = ballRegion(*omega, q, m1, tensor, 0);
        double mean = 0.0;
        double absMean = 0.0;
        for (std::size_t i = 0; i < br.region.size(); ++i) {
            const double v = f(br.region.nodes[i]);
            mean += br.region.weights[i] * v;
            absMean += br.region.weights[i] * std::abs(v);
        }
        worstMean = std::max(worstMean, std::abs(mean) / absMean);
    }
    const DivergenceFit fit = fitDivergenceRate(squares);
    res.metrics["euclideanSlope"] = fit.slope;
    res.metrics["euclideanSlopeR2"] = fit.r2;
    res.metrics["squareMeanRelative"] = worstMean;
    res.check("euclideanSlope", std::abs(fit.slope - expectedSlope) <= kSlopeTol, fit.slope, expectedSlope);
    res.check("squareMeanZero", worstMean <= kMeanTol, worstMean, kMeanTol, "|f_Q| / mean |f| on each square");
    res.traces["euclideanSquares"] = std::move(squares);

    SeminormSpec aniso;
    aniso.kind = SeminormKind::Campanato;
    aniso.lambda = lambda;
    aniso.gamma = gamma;
    SamplerConfig cfg = baseSampler(opts, 4);
    cfg.quadrature = QuadratureMode::Tensor;
    cfg.tensorNodesPerAxis = 64;
    cfg.centerCount = 16;
    cfg.fixedCenters = {Point{0.0, 0.5}, Point{0.0, 0.25}};
    cfg.radiusLadder = {std::ldexp(1.0, -4), 0.5, 9};
    const SeminormReport rep = estimateSeminorm(f, *omega, aniso, cfg);
    const double first = rep.perRadiusTrace.front().second;
    const double last = rep.perRadiusTrace.back().second;
    res.metrics["anisotropicFirst"] = first;
    res.metrics["anisotropicLast"] = last;
    res.metrics["anisotropicEstimate"] = rep.estimate;
    res.metrics["anisotropicNormalizationRPower"] = rep.normalization == Normalization::RPower ? 1.0 : 0.0;
    res.check("anisotropicBounded", last / first <= kBoundedRatio, last / first, kBoundedRatio);
    res.traces["anisotropic"] = rep.perRadiusTrace;
    return res;
}

// ---------------------------------------------------------------- seminorm-sandwich

CaseResult caseSeminormSandwich(const CaseOptions& opts) {
    CaseResult res;
    constexpr int kPairs = 200;
    constexpr double kTol = 1e-9;
    res.tolerances["sandwich"] = kTol;
    const auto omega = makeDomain(CuboidDomain{Isometry::identity(2), Box::cube(2, -1.0, 1.0)});
    SamplerConfig cfg = baseSampler(opts, 5);
    cfg.quadratureNodesPerBall = 256;
    Rng rng(cfg.seed);

    const auto fieldFor = [&](std::uint64_t which, double gamma) {
        switch (which) {
            case 0: return builtinField("coordinate", {{"index", 1}, {"dimension", 2}}, omega);
            case 1: return builtinField("coordinate", {{"index", 2}, {"dimension", 2}}, omega);
            case 2: return builtinField("signedPower", {{"index", 1}, {"exponent", 0.4}, {"dimension", 2}}, omega);
            case 3:
                return builtinField("polynomial", {{"dimension", 2}, {"x1x2", 1.0}, {"x2x2", -0.5}, {"c", 0.2}},
                                    omega);
            default:
                return builtinField("distLogToPoint",
                                    {{"dimension", 2}, {"gamma", gamma}, {"p1", 0.0}, {"p2", -1.0}}, omega);
        }
    };

    int violations = 0;
    int evaluated = 0;
    double minRatio = kInfinity;
    double maxRatio = 0.0;
    Trace ratios;
    for (int s = 0; s < kPairs; ++s) {
        const std::uint64_t which = rng.below(5);
        SeminormSpec spec;
        spec.gamma = rng.uniform(0.3, 1.0);
        spec.lambda = rng.uniform(0.5, 1.5);
        spec.p = rng.uniform(1.0, 3.0);
        spec.normalization = rng.uniform() < 0.5 ? Normalization::RPower : Normalization::MeasureOfIntersection;
        const AnisoBall ball{Point{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.05, 1.0)};
        const ScalarField f = fieldFor(which, spec.gamma);
        const std::uint64_t seed = deriveSeed(cfg.seed, static_cast<std::uint64_t>(s));
        spec.kind = SeminormKind::Campanato;
        const BallEvaluation single = evaluateBall(f, *omega, spec, ball, cfg, seed);
        spec.kind = SeminormKind::CampanatoSymmetric;
        const BallEvaluation sym = evaluateBall(f, *omega, spec, ball, cfg, seed);
        if (!single.admissible || !sym.admissible) continue;
        ++evaluated;
        const double scale = std::max(1.0, sym.value);
        const bool lowerOk = single.value <= sym.value + kTol * scale;
        const bool upperOk = sym.value <= 2.0 * single.value + kTol * scale;
        if (!lowerOk || !upperOk || !sym.fullPairAverage) ++violations;
        if (single.value > 0.0) {
            const double ratio = sym.value / single.value;
            minRatio = std::min(minRatio, ratio);
            maxRatio = std::max(maxRatio, ratio);
            ratios.emplace_back(static_cast<double>(s), ratio);
        }
    }
    res.metrics["pairsEvaluated"] = evaluated;
    res.metrics["violations"] = violations;
    res.metrics["minSymmetricOverSingle"] = minRatio;
    res.metrics["maxSymmetricOverSingle"] = maxRatio;
    res.check("sandwichViolations", violations == 0, violations, 0.0);
    res.check("sandwichPairsEvaluated", evaluated >= kPairs / 2, evaluated, kPairs / 2.0,
              "balls with empty intersection are skipped");
    res.traces["symmetricOverSingle"] = std::move(ratios);
    return res;
}

// ---------------------------------------------------------------- property-A-cusp

CaseResult casePropertyACusp(const CaseOptions& opts) {
    CaseResult res;
    constexpr double gamma = 0.5;
    constexpr double kStabilityLo = 0.5;
    constexpr double kStabilityHi = 2.0;
    res.tolerances["stabilityLow"] = kStabilityLo;
    res.tolerances["stabilityHigh"] = kStabilityHi;
    const auto omega = cuspDomain(gamma);
    const MetricParams m(2, gamma);
    SamplerConfig cfg = baseSampler(opts, 6);
    cfg.refinementRounds = 1 + opts.refine;
    cfg.radiusLadder = {0.0, 0.5, 10};
    const PropertyAReport rep = checkPropertyA(*omega, m, cfg);
    res.metrics["cEstimate"] = rep.cEstimate;
    res.metrics["witnessRadius"] = rep.witnessRadius;
    res.metrics["witnessX1"] = rep.witnessCenter[0];
    res.metrics["witnessX2"] = rep.witnessCenter[1];
    Trace rounds;
    for (std::size_t k = 0; k < rep.rounds.size(); ++k) {
        rounds.emplace_back(static_cast<double>(k), rep.rounds[k]);
        res.metrics["round" + std::to_string(k)] = rep.rounds[k];
    }
    const std::size_t n = rep.rounds.size();
    const double stability = rep.rounds[n - 1] / rep.rounds[n - 2];
    res.metrics["stability"] = stability;
    res.check("cEstimatePositive", rep.cEstimate > 0.0, rep.cEstimate, 0.0);
    res.check("stabilityAcrossRefinement", stability >= kStabilityLo && stability <= kStabilityHi, stability,
              kStabilityHi, "ratio of the last two refinement rounds");
    res.traces["perRadius"] = rep.perRadius;
    res.traces["rounds"] = std::move(rounds);

    // Ratio at the corner (1, 0) where the base meets the graph; a wedge of
    // fixed angle meets the ball in area ~ r^{2/γ} rather than r^{N_γ}.
    SamplerConfig tensor = cfg;
    tensor.quadrature = QuadratureMode::Tensor;
    tensor.tensorNodesPerAxis = 2048;
    Trace corner;
    for (int k = 1; k <= 7; ++k) {
        const double r = std::ldexp(1.0, -k);
        const MeasureEstimate est = intersectionMeasure(*omega, AnisoBall{Point{1.0, 0.0}, r}, m, tensor, 0);
        corner.emplace_back(r, est.estimate / std::pow(r, m.criticalExponent()));
    }
    const DivergenceFit cornerFit = fitDivergenceRate(corner);
    res.metrics["cornerRatioSlope"] = cornerFit.slope;
    res.metrics["cornerRatioSmallest"] = corner.back().second;
    res.traces["cornerRatio"] = std::move(corner);
    res.notes.push_back("cornerRatio: |B(x, r) ∩ Ω| / r^N_gamma at x = (1, 0); a positive slope means the "
                        "infimum over the closure is 0 and refinement keeps lowering cEstimate");
    return res;
}

// ---------------------------------------------------------------- reflection-bound

CaseResult caseReflectionBound(const CaseOptions& opts) {
    CaseResult res;
    constexpr double gamma = 0.5;
    constexpr double lambda = 1.0;
    constexpr double p = 1.0;
    constexpr double M = 1.0;
    const MetricParams m(2, gamma);
    const double ng = m.criticalExponent();
    const double c = std::pow(4.0 * (1.0 + std::pow(2.0, gamma) * M), ng);
    const double cCase1 = std::pow(2.0, p) * std::pow(1.0 + 2.0 * M, ng * (1.0 + lambda));
    const double cProof = 4.0 * std::pow(c, 1.0 + lambda);
    res.metrics["constantCase1"] = cCase1;
    res.metrics["constantCase2"] = cProof;
    res.tolerances["cProof"] = cProof;

    const Box w{{-1.0}, {1.0}};
    BoundaryFunction phi = makeBoundaryFunction("power", {{"offset", 0.0}, {"scale", 1.0}, {"exponent", gamma}});
    const auto omega = makeDomain(ElementaryDomain{2, gamma, phi, M, w});
    const auto reflected = makeDomain(
        ElementaryDomain{2, gamma, makeBoundaryFunction("constant", {{"value", 3.0}}), 0.0, w});

    SeminormSpec spec;
    spec.kind = SeminormKind::Campanato;
    spec.lambda = lambda;
    spec.p = p;
    spec.gamma = gamma;
    spec.normalization = Normalization::MeasureOfIntersection;
    SamplerConfig cfg = baseSampler(opts, 7);
    cfg.centerCount = 64;
    cfg.quadratureNodesPerBall = 1024;
    cfg.centerWindow = Box{{-1.0, -2.0}, {1.0, 2.0}};
    cfg.radiusLadder = {1.0, 0.5, 10};

    const std::vector<std::pair<std::string, std::map<std::string, double>>> catalog{
        {"coordinate", {{"index", 1}, {"dimension", 2}}},
        {"coordinate", {{"index", 2}, {"dimension", 2}}},
        {"signedPower", {{"index", 1}, {"exponent", 0.5}, {"dimension", 2}}},
        {"polynomial", {{"dimension", 2}, {"x1x2", 1.0}, {"x2x2", 0.5}}},
        {"distLogToPoint", {{"dimension", 2}, {"gamma", gamma}, {"p1", 0.0}, {"p2", 0.0}}},
    };
    Trace ratios;
    double worst = 0.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const ScalarField f = builtinField(catalog[i].first, catalog[i].second, omega);
        const ScalarField ft = restrictTo(reflectExtend(f), reflected);
        SamplerConfig local = cfg;
        local.seed = deriveSeed(cfg.seed, i);
        const double onOmega = estimateSeminorm(f, *omega, spec, local).estimate;
        const double extended = estimateSeminorm(ft, *reflected, spec, local).estimate;
        const double ratio = extended / onOmega;
        const std::string key = "field" + std::to_string(i + 1) + "." + catalog[i].first;
        res.metrics[key + ".seminorm"] = onOmega;
        res.metrics[key + ".reflectedSeminorm"] = extended;
        res.metrics[key + ".ratio"] = ratio;
        ratios.emplace_back(static_cast<double>(i + 1), ratio);
        worst = std::max(worst, ratio);
        res.check(key, onOmega > 0.0 && ratio <= cProof, ratio, cProof);
    }
    res.metrics["worstRatio"] = worst;
    res.traces["ratios"] = std::move(ratios);
    res.notes.push_back("C_proof = 4 C^(1+lambda), C = (4(1 + 2^gamma M))^(N_gamma)");
    res.notes.push_back("reflected field estimated on {x1 in W, x2 < 3}");
    return res;
}

// ---------------------------------------------------------------- mcshane-preservation

CaseResult caseMcShanePreservation(const CaseOptions& opts) {
    CaseResult res;
    constexpr double gamma = 0.5;
    constexpr double L = 1.0;
    constexpr double kRel = 1e-4;
    constexpr int kPairs = 10000;
    res.tolerances["lipschitzRelative"] = kRel;
    const Box w{{-1.0}, {1.0}};
    const auto phi = [](std::span<const double> x) { return std::sqrt(std::abs(x[0])); };
    SamplerConfig cfg = baseSampler(opts, 8);
    const McShaneExtension ext = mcshaneExtend(phi, w, gamma, L, cfg);

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < ext.gridSize(); ++i) {
        const std::vector<double> y = ext.gridNode(i);
        if (ext(y) != phi(y)) ++mismatches;
    }
    res.metrics["gridNodes"] = static_cast<double>(ext.gridSize());
    res.metrics["gridMismatches"] = static_cast<double>(mismatches);
    res.check("exactOnGrid", mismatches == 0, static_cast<double>(mismatches), 0.0);

    const double lipPhi = holderSeminorm(phi, w, gamma, cfg);
    res.metrics["sampledLipPhi"] = lipPhi;
    res.metrics["declaredLipPhi"] = L;

    Rng rng(deriveSeed(cfg.seed, 1));
    double worst = 0.0;
    int mixed = 0;
    for (int s = 0; s < kPairs; ++s) {
        // One point in W, one anywhere in [-3, 3]; every fourth pair is two outside points.
        double a = rng.uniform(-1.0, 1.0);
        double b = rng.uniform(-3.0, 3.0);
        if (s % 4 == 3) {
            a = rng.uniform() < 0.5 ? rng.uniform(-3.0, -1.0) : rng.uniform(1.0, 3.0);
            b = rng.uniform() < 0.5 ? rng.uniform(-3.0, -1.0) : rng.uniform(1.0, 3.0);
        }
        if (a == b) continue;
        if ((std::abs(a) < 1.0) != (std::abs(b) < 1.0)) ++mixed;
        const double q = std::abs(ext(std::span<const double>(&a, 1)) - ext(std::span<const double>(&b, 1))) /
                         std::pow(std::abs(a - b), gamma);
        worst = std::max(worst, q);
    }
    Trace profile;
    for (int i = 0; i <= 60; ++i) {
        const double t = -3.0 + 0.1 * i;
        profile.emplace_back(t, ext(std::span<const double>(&t, 1)));
    }
    res.traces["extensionProfile"] = std::move(profile);
    const double bound = L * (1.0 + kRel);
    res.metrics["sampledLipExtension"] = worst;
    res.metrics["mixedPairs"] = mixed;
    res.metrics["pairs"] = kPairs;
    res.check("holderPreserved", worst <= bound, worst, bound, "Lip_gamma(phi) = 1 in closed form");
    return res;
}

// ---------------------------------------------------------------- john-nirenberg-probe

CaseResult caseJohnNirenberg(const CaseOptions& opts) {
    CaseResult res;
    constexpr double gamma = 0.5;
    constexpr double kR2 = 0.9;
    res.tolerances["fitR2"] = kR2;
    const auto omega = cuspDomain(gamma);
    const MetricParams m(2, gamma);
    const ScalarField f =
        builtinField("distLogToPoint", {{"dimension", 2}, {"gamma", gamma}, {"p1", 0.0}, {"p2", 1.0}}, omega);
    SamplerConfig cfg = baseSampler(opts, 9);
    cfg.quadratureNodesPerBall = 400000;
    const AnisoBall ball{Point{0.0, 1.0}, 0.5};
    const BallRegion br = ballRegion(*omega, ball, m, cfg, cfg.seed);
    const RegionSample& s = br.region;
    std::vector<double> values(s.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        values[i] = f(s.nodes[i]);
        mean += s.weights[i] * values[i];
    }
    const double measure = s.measure();
    mean /= measure;
    Trace tail;
    for (int k = 0; k <= 8; ++k) {
        const double t = 0.5 + 0.25 * k;
        double mass = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(values[i] - mean) > t) mass += s.weights[i];
        }
        tail.emplace_back(t, mass / measure);
    }
    // log(fraction) against t: feed e^t as abscissa to the log-log fit.
    Trace expT;
    for (const auto& [t, v] : tail) expT.emplace_back(std::exp(t), v);
    const DivergenceFit fit = fitDivergenceRate(expT);
    res.metrics["ballNodesInDomain"] = static_cast<double>(s.size());
    res.metrics["meanOnBall"] = mean;
    res.metrics["tailSlope"] = fit.slope;
    res.metrics["tailIntercept"] = fit.intercept;
    res.metrics["fitR2"] = fit.r2;
    res.check("tailDecays", fit.slope < 0.0, fit.slope, 0.0);
    res.check("logLinearTail", fit.r2 >= kR2, fit.r2, kR2);
    res.traces["tail"] = std::move(tail);
    res.notes.push_back("only log-linearity is asserted; c1 and c2 are not computed");
    return res;
}

// ---------------------------------------------------------------- gamma1-collapse

CaseResult caseGamma1Collapse(const CaseOptions& opts) {
    CaseResult res;
    constexpr double kFactor = 4.0;
    res.tolerances["ratioFactor"] = kFactor;
    const auto omega = makeDomain(CuboidDomain{Isometry::identity(2), Box{{0.0, 0.0}, {2.0, 1.0}}});
    const ScalarField f = builtinField("polynomial", {{"dimension", 2}, {"x1x2", 1.0}, {"x1", 1.0}}, omega);
    SamplerConfig cfg = baseSampler(opts, 10);
    cfg.radiusLadder = {1.0, 0.5, 8};
    SeminormSpec spec;
    spec.kind = SeminormKind::RotatedCampanato;
    spec.gamma = 1.0;
    spec.rotation = Isometry::identity(2);
    const SeminormReport a = estimateSeminorm(f, *omega, spec, cfg);
    spec.rotation = Isometry::planeRotation(2, 0, 1, std::numbers::pi / 2.0);
    const SeminormReport b = estimateSeminorm(f, *omega, spec, cfg);
    Trace ratio;
    double worst = 1.0;
    for (std::size_t j = 0; j < a.perRadiusTrace.size(); ++j) {
        const double va = a.perRadiusTrace[j].second;
        const double vb = b.perRadiusTrace[j].second;
        const double q = std::max(va / vb, vb / va);
        ratio.emplace_back(a.perRadiusTrace[j].first, q);
        worst = std::max(worst, q);
    }
    res.metrics["identityEstimate"] = a.estimate;
    res.metrics["rotatedEstimate"] = b.estimate;
    res.metrics["worstRatio"] = worst;
    res.check("ratioBounded", worst <= kFactor, worst, kFactor, "engineering threshold for this fixture");
    res.traces["identity"] = a.perRadiusTrace;
    res.traces["rotated90"] = b.perRadiusTrace;
    res.traces["ratio"] = std::move(ratio);
    return res;
}

// ---------------------------------------------------------------- atlas-roundtrip

std::shared_ptr<const Atlas> diamondAtlas() {
    auto atlas = std::make_shared<Atlas>();
    atlas->dimension = 2;
    atlas->gamma = 1.0;
    atlas->delta = 0.1;
    const BoundaryFunction phi =
        makeBoundaryFunction("power", {{"offset", 1.0}, {"scale", -1.0}, {"exponent", 1.0}});
    for (int k = 0; k < 4; ++k) {
        AtlasPatch patch;
        patch.toChart = Isometry::planeRotation(2, 0, 1, k * std::numbers::pi / 2.0);
        patch.box = Box{{-0.75, -0.2}, {0.75, 1.2}};
        patch.phi = phi;
        patch.holderConstant = 1.0;
        atlas->patches.push_back(patch);
    }
    return atlas;
}

CaseResult caseAtlasRoundtrip(const CaseOptions& opts) {
    CaseResult res;
    constexpr double kRestrictTol = 1e-8;
    constexpr double kLinearTol = 1e-9;
    constexpr int kPoints = 10000;
    res.tolerances["restriction"] = kRestrictTol;
    res.tolerances["linearity"] = kLinearTol;
    const auto atlas = diamondAtlas();
    const double s = 1.0 / std::sqrt(2.0);
    const auto omega = makeDomain(
        CuboidDomain{Isometry::planeRotation(2, 0, 1, std::numbers::pi / 4.0), Box{{-s, -s}, {s, s}}});
    SamplerConfig cfg = baseSampler(opts, 11);
    cfg.pairSampleCount = kPoints;

    const AtlasReport check = validateAtlas(*atlas, *omega, cfg);
    for (const auto& c : check.conditions) {
        res.check("atlas." + c.name, c.passed, c.passed ? 1.0 : 0.0, 1.0, c.detail);
    }

    const PartitionOfUnity pu = makePartitionOfUnity(atlas, omega.get(), cfg);
    const ScalarField f =
        builtinField("polynomial", {{"dimension", 2}, {"x1", 1.0}, {"x2x2", 1.0}, {"x1x2", 0.5}, {"c", 0.3}}, omega);
    const ScalarField g = builtinField("polynomial", {{"dimension", 2}, {"x2", -2.0}, {"x1x1", 0.75}}, omega);
    const auto partsOf = [&](const ScalarField& h) {
        std::vector<AtlasPart> parts;
        for (std::size_t k = 0; k < pu.size(); ++k) parts.push_back({multiply(h, pu.field(k)), k});
        return parts;
    };
    const AtlasExtensionResult ef = atlasExtend(partsOf(f), atlas, *omega, cfg);
    const AtlasExtensionResult eg = atlasExtend(partsOf(g), atlas, *omega, cfg);
    constexpr double a = 1.5;
    constexpr double b = -0.25;
    const AtlasExtensionResult ec = atlasExtend(partsOf(linearCombination(a, f, b, g)), atlas, *omega, cfg);
    for (const auto& line : ef.provenance) res.notes.push_back(line);

    Rng rng(deriveSeed(cfg.seed, 1));
    double restriction = 0.0;
    double linearity = 0.0;
    const Box wide = Box::cube(2, -1.5, 1.5);
    Point x(2);
    for (int i = 0; i < kPoints; ++i) {
        const Point y = omega->sampleInterior(rng, std::nullopt);
        restriction = std::max(restriction, std::abs(ef.F(y) - f(y)));
        wide.sample(rng, x.coords());
        linearity = std::max(linearity, std::abs(ec.F(x) - (a * ef.F(x) + b * eg.F(x))));
    }
    res.metrics["checkedPoints"] = kPoints;
    res.metrics["restrictionError"] = restriction;
    res.metrics["linearityError"] = linearity;
    res.check("restriction", restriction <= kRestrictTol, restriction, kRestrictTol);
    res.check("linearity", linearity <= kLinearTol, linearity, kLinearTol);

    SeminormSpec spec;
    spec.kind = SeminormKind::RotatedCampanato;
    spec.gamma = atlas->gamma;
    SamplerConfig normCfg = cfg;
    normCfg.centerCount = 32;
    normCfg.radiusLadder = {1.0, 0.5, 8};
    SamplerConfig fullCfg = normCfg;
    fullCfg.centerWindow = wide;
    const auto full = makeDomain(FullSpace{2});
    const std::vector<AtlasPart> parts = partsOf(f);
    double sumF = 0.0;
    double sumf = 0.0;
    Trace perPatch;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        spec.rotation = atlas->patches[k].toChart;
        const double nf = lpNorm(parts[k].f, *omega, spec.p, normCfg) +
                          estimateSeminorm(parts[k].f, *omega, spec, normCfg).estimate;
        const double nF = lpNorm(ef.components[k], *full, spec.p, fullCfg) +
                          estimateSeminorm(ef.components[k], *full, spec, fullCfg).estimate;
        sumf += nf;
        sumF += nF;
        perPatch.emplace_back(static_cast<double>(k), nF / nf);
    }
    const double ratio = sumF / sumf;
    res.metrics["sumNormParts"] = sumf;
    res.metrics["sumNormExtended"] = sumF;
    res.metrics["normRatio"] = ratio;
    res.check("extendedNormFinite", std::isfinite(ratio) && ratio > 0.0, ratio, 0.0, "ratio logged, not bounded");
    res.traces["normRatioPerPatch"] = std::move(perPatch);
    return res;
}

using CaseFn = std::function<CaseResult(const CaseOptions&)>;

const std::vector<std::pair<std::string, CaseFn>>& registry() {
    static const std::vector<std::pair<std::string, CaseFn>> r{
        {"log-zero-extension", caseLogZeroExtension},
        {"strip-separation", caseStripSeparation},
        {"cusp-metric-separation", caseCuspMetricSeparation},
        {"seminorm-sandwich", caseSeminormSandwich},
        {"property-A-cusp", casePropertyACusp},
        {"reflection-bound", caseReflectionBound},
        {"mcshane-preservation", caseMcShanePreservation},
        {"john-nirenberg-probe", caseJohnNirenberg},
        {"gamma1-collapse", caseGamma1Collapse},
        {"atlas-roundtrip", caseAtlasRoundtrip},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& caseCatalog() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : registry()) v.push_back(id);
        return v;
    }();
    return ids;
}

CaseResult runCase(const std::string& caseId, const CaseOptions& opts) {
    for (const auto& [id, fn] : registry()) {
        if (id != caseId) continue;
        CaseResult res = fn(opts);
        res.caseId = id;
        res.seed = opts.seed;
        res.finalize();
        return res;
    }
    throw InvalidInput("unknown case id '" + caseId + "'");
}

}  // namespace campanato
