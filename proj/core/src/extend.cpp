#include "campanato/extend.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "campanato/error.hpp"

namespace campanato {
namespace {

constexpr std::uint64_t kTagSupport = 0x53555050ULL;
constexpr std::uint64_t kTagRestrict = 0x52455354ULL;
constexpr std::uint64_t kTagCompact = 0x434f4d50ULL;
constexpr double kGolden = 0.6180339887498949;

int defaultNodes(int k) {
    if (k == 1) return (1 << 12) + 1;
    if (k == 2) return 257;
    return 33;
}

bool closedContains(const Box& b, std::span<const double> x) {
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        if (!(x[i] >= b.lo[i] && x[i] <= b.hi[i])) return false;
    }
    return true;
}

std::string formatPoint(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < p.dimension(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

}  // namespace

ScalarField reflectExtend(const ScalarField& f, const BoundaryFunction& phi, const std::optional<Box>& window) {
    if (!phi.eval) throw InvalidInput("reflectExtend: missing boundary function");
    const int n = f.dimension();
    if (n < 2) throw InvalidInput("reflectExtend: requires N >= 2");
    if (window && window->dimension() != n - 1) throw InvalidInput("reflectExtend: window dimension must be N-1");
    return {n,
            [f, phi, window](const Point& x) {
                if (window && !closedContains(*window, x.head())) {
                    throw DomainViolation("reflected field evaluated outside the graph window");
                }
                const double g = phi(x.head());
                if (x.last() <= g) return f.evaluateUnchecked(x);
                Point y = x;
                y.last() = 2.0 * g - x.last();
                return f.evaluateUnchecked(y);
            },
            nullptr, "reflect(" + f.label() + ")"};
}

ScalarField reflectExtend(const ScalarField& f) {
    const auto& dom = f.definedOn();
    const auto* e = dom ? std::get_if<ElementaryDomain>(&dom->variant()) : nullptr;
    if (!e) throw InvalidInput("reflectExtend: field must be defined on an elementary domain");
    if (!std::isfinite(e->holderConstant)) throw InvalidInput("reflectExtend: Holder constant must be finite");
    return reflectExtend(f, e->phi, e->window);
}

McShaneExtension::McShaneExtension(std::function<double(std::span<const double>)> phi, Box window, double gamma,
                                   double constant, const McShaneOptions& opts)
    : phi_(std::move(phi)), window_(std::move(window)), gamma_(gamma), constant_(constant), refine_(opts.refine) {
    window_.validate();
    if (!(gamma_ > 0.0 && gamma_ <= 1.0)) throw InvalidInput("mcshane: gamma must lie in (0, 1]");
    if (!(constant_ >= 0.0) || !std::isfinite(constant_)) throw InvalidInput("mcshane: constant must be finite, >= 0");
    const int k = window_.dimension();
    perAxis_ = opts.nodesPerAxis > 0 ? opts.nodesPerAxis : defaultNodes(k);
    if (perAxis_ < 2) throw InvalidInput("mcshane: need at least 2 nodes per axis");
    std::size_t total = 1;
    for (int a = 0; a < k; ++a) total *= static_cast<std::size_t>(perAxis_);
    values_.resize(total);
    for (std::size_t i = 0; i < total; ++i) values_[i] = phi_(gridNode(i));
}

std::vector<double> McShaneExtension::gridNode(std::size_t flat) const {
    const int k = window_.dimension();
    std::vector<double> y(static_cast<std::size_t>(k));
    for (int a = k - 1; a >= 0; --a) {
        const auto ai = static_cast<std::size_t>(a);
        const auto idx = static_cast<double>(flat % static_cast<std::size_t>(perAxis_));
        flat /= static_cast<std::size_t>(perAxis_);
        y[ai] = idx == perAxis_ - 1 ? window_.hi[ai]
                                    : window_.lo[ai] + (window_.hi[ai] - window_.lo[ai]) * idx / (perAxis_ - 1);
    }
    return y;
}

double McShaneExtension::objective(std::span<const double> x, std::span<const double> y) const {
    double d2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
    return phi_(y) + constant_ * powGamma(std::sqrt(d2), gamma_);
}

double McShaneExtension::operator()(std::span<const double> x) const {
    const auto k = static_cast<std::size_t>(window_.dimension());
    if (x.size() != k) throw InvalidInput("mcshane: argument dimension mismatch");
    if (closedContains(window_, x)) return phi_(x);
    std::size_t best = 0;
    double bestValue = kInfinity;
    std::vector<double> y;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        y = gridNode(i);
        double d2 = 0.0;
        for (std::size_t a = 0; a < k; ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
        const double v = values_[i] + constant_ * powGamma(std::sqrt(d2), gamma_);
        if (v < bestValue) {
            bestValue = v;
            best = i;
        }
    }
    if (!refine_) return bestValue;
    // Coordinate-wise golden-section search in the cells around the grid argmin.
    y = gridNode(best);
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (std::size_t a = 0; a < k; ++a) {
            const double h = (window_.hi[a] - window_.lo[a]) / (perAxis_ - 1);
            double lo = std::max(window_.lo[a], y[a] - h);
            double hi = std::min(window_.hi[a], y[a] + h);
            std::vector<double> trial = y;
            auto at = [&](double t) {
                trial[a] = t;
                return objective(x, trial);
            };
            double c = hi - kGolden * (hi - lo);
            double d = lo + kGolden * (hi - lo);
            double fc = at(c);
            double fd = at(d);
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                if (fc < fd) {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - kGolden * (hi - lo);
                    fc = at(c);
                } else {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + kGolden * (hi - lo);
                    fd = at(d);
                }
            }
            const double t = fc < fd ? c : d;
            const double v = std::min(fc, fd);
            if (v < bestValue) {
                bestValue = v;
                y[a] = t;
            }
        }
    }
    return bestValue;
}

BoundaryFunction McShaneExtension::asBoundaryFunction() const {
    BoundaryFunction f;
    f.name = "mcshane";
    auto self = std::make_shared<const McShaneExtension>(*this);
    f.eval = [self](std::span<const double> x) { return (*self)(x); };
    f.holderConstant = constant_;
    f.holderExponent = gamma_;
    return f;
}

McShaneExtension mcshaneExtend(const std::function<double(std::span<const double>)>& phi, const Box& window,
                               double gamma, std::optional<double> constant, const SamplerConfig& cfg,
                               const McShaneOptions& opts) {
    if (!phi) throw InvalidInput("mcshane: missing function");
    window.validate();
    double L = 0.0;
    if (constant) {
        L = *constant;
        if (L == 0.0 && holderSeminorm(phi, window, gamma, cfg) > 0.0) {
            throw ConsistencyError("mcshane: declared constant 0 but the sampled function is not constant");
        }
    } else {
        L = 1.01 * holderSeminorm(phi, window, gamma, cfg);
    }
    return {phi, window, gamma, L, opts};
}

AtlasExtensionResult atlasExtend(const std::vector<AtlasPart>& parts, const std::shared_ptr<const Atlas>& atlas,
                                 const Domain& omega, const SamplerConfig& cfg, const McShaneOptions& opts) {
    if (!atlas) throw InvalidInput("atlasExtend: missing atlas");
    atlas->validateStructure();
    if (parts.empty()) throw InvalidInput("atlasExtend: no parts");
    const int n = atlas->dimension;
    const double delta = atlas->delta;
    const int samples = std::max(1, std::min(cfg.pairSampleCount, 10000));

    // Support condition: every part vanishes on Ω outside (V_k)_{δ/2}.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        if (part.patch >= atlas->patches.size()) throw InvalidInput("atlasExtend: patch index out of range");
        if (part.f.dimension() != n) throw InvalidInput("atlasExtend: part dimension mismatch");
        const auto& patch = atlas->patches[part.patch];
        for (int s = 0; s < samples; ++s) {
            Rng rng(deriveSeed(cfg.seed, kTagSupport, i, static_cast<std::uint64_t>(s)));
            const Point x = omega.sampleInterior(rng, std::nullopt);
            if (!patch.inShrunk(x, 0.5 * delta) && part.f.evaluateUnchecked(x) != 0.0) {
                throw PreconditionError("atlasExtend: part " + std::to_string(i) + " is nonzero at " +
                                        formatPoint(x) + ", outside (V_k)_{delta/2}");
            }
        }
    }

    AtlasExtensionResult res;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        const auto& patch = atlas->patches[part.patch];
        const ScalarField fk = part.f;
        const Isometry rk = patch.toChart;
        std::ostringstream log;
        log << "part " << i << " on patch " << part.patch << ": ";
        if (!patch.isBoundaryPatch()) {
            auto dom = std::make_shared<const Domain>(omega);
            res.components.emplace_back(
                n, [fk, dom](const Point& x) { return dom->contains(x) ? fk.evaluateUnchecked(x) : 0.0; }, nullptr,
                "G" + std::to_string(i));
            log << "interior cuboid; zero extension of a compactly supported part";
        } else {
            const BoundaryFunction phi = *patch.phi;
            std::optional<double> L;
            if (patch.holderConstant > 0.0) L = patch.holderConstant;
            else if (phi.holderConstant && phi.holderExponent && *phi.holderExponent == atlas->gamma) L = *phi.holderConstant;
            const auto ext = std::make_shared<const McShaneExtension>(
                mcshaneExtend(phi.eval, patch.window(), atlas->gamma, L, cfg, opts));
            const Box box = patch.box;
            const SmoothCutoff cut = makeCutoff(Isometry::identity(n), box, 0.25 * delta, 0.5 * delta);
            // Zero extension of f_k ∘ R_k^{-1} from R_k(Ω ∩ V_k) to the subgraph of φ̃_k.
            auto g0 = [fk, rk, box, phi](const Point& y) {
                for (std::size_t a = 0; a < box.lo.size(); ++a) {
                    const double t = y[static_cast<int>(a)];
                    if (!(t > box.lo[a] && t < box.hi[a])) return 0.0;
                }
                if (!(y.last() < phi(y.head()))) return 0.0;
                return fk.evaluateUnchecked(rk.applyInverse(y));
            };
            res.components.emplace_back(
                n,
                [g0, ext, cut, rk](const Point& x) {
                    const Point y = rk.apply(x);
                    const double c = cut.inChart(y);
                    if (c == 0.0) return 0.0;
                    const double g = (*ext)(y.head());
                    if (y.last() <= g) return c * g0(y);
                    Point z = y;
                    z.last() = 2.0 * g - y.last();
                    return c * g0(z);
                },
                nullptr, "G" + std::to_string(i));
            log << "boundary cuboid; Holder extension of the graph (L = " << ext->constant()
                << "), zero extension to its subgraph, even reflection across the graph, cutoff 1 on (V_k)_{delta/2} "
                   "and 0 outside (V_k)_{delta/4}";
        }
        res.provenance.push_back(log.str());
    }

    auto comps = res.components;
    res.F = ScalarField(
        n,
        [comps](const Point& x) {
            double s = 0.0;
            for (const auto& c : comps) s += c.evaluateUnchecked(x);
            return s;
        },
        nullptr, "T(f)");

    for (int s = 0; s < samples; ++s) {
        Rng rng(deriveSeed(cfg.seed, kTagRestrict, static_cast<std::uint64_t>(s)));
        const Point x = omega.sampleInterior(rng, std::nullopt);
        double expected = 0.0;
        for (const auto& part : parts) expected += part.f.evaluateUnchecked(x);
        res.restrictionError = std::max(res.restrictionError, std::abs(res.F.evaluateUnchecked(x) - expected));
        ++res.checkedPoints;
    }
    if (res.restrictionError > 1e-8) {
        throw ConsistencyError("atlasExtend: extension differs from the input on the domain by " +
                               std::to_string(res.restrictionError));
    }
    return res;
}

CompactExtensionResult compactZeroExtend(const ScalarField& f, const Domain& d, const SeminormSpec& spec,
                                         const SamplerConfig& cfg) {
    spec.validate();
    cfg.validate();
    const int n = d.dimension();
    const MetricParams m(n, spec.gamma);
    const auto bbox = d.boundingBox();
    if (!bbox) throw InvalidInput("compactZeroExtend: domain must be bounded");
    const int samples = std::max(1, std::min(cfg.pairSampleCount, 2000));

    std::vector<Point> support;
    std::vector<Point> boundary;
    for (int s = 0; s < samples; ++s) {
        Rng rng(deriveSeed(cfg.seed, kTagCompact, 1, static_cast<std::uint64_t>(s)));
        const Point x = d.sampleInterior(rng, std::nullopt);
        if (f(x) != 0.0) support.push_back(x);
        if (auto b = d.sampleBoundary(rng, std::nullopt)) boundary.push_back(*b);
    }
    CompactExtensionResult res;
    res.extended = zeroExtend(f);
    if (support.empty()) return res;

    const double diam = diameter(d, m, cfg).value;
    res.supportDistance = kInfinity;
    for (const auto& x : support) {
        for (const auto& b : boundary) res.supportDistance = std::min(res.supportDistance, dist(x, b, m));
    }
    if (!(res.supportDistance > 1e-3 * std::max(1.0, diam))) {
        throw PreconditionError("compactZeroExtend: support of the field touches the boundary");
    }
    res.rBar = 0.99 * res.supportDistance / 4.0;

    SeminormSpec onOmega = spec;
    onOmega.kind = SeminormKind::Campanato;
    onOmega.normalization = Normalization::MeasureOfIntersection;
    res.seminormOnOmega = estimateSeminorm(f, d, onOmega, cfg).estimate;
    res.lpNormOnOmega = lpNorm(f, d, spec.p, cfg);

    SamplerConfig wide = cfg;
    Box window = *bbox;
    for (std::size_t a = 0; a < window.lo.size(); ++a) {
        window.lo[a] -= 0.25 * diam;
        window.hi[a] += 0.25 * diam;
    }
    wide.centerWindow = window;
    wide.radiusLadder.rMax = cfg.radiusLadder.rMax > 0.0 ? cfg.radiusLadder.rMax : 2.0 * diam;
    const Domain space{FullSpace{n}};
    res.estimateExtended = estimateSeminorm(res.extended, space, onOmega, wide).estimate;
    const double denom = res.seminormOnOmega + res.lpNormOnOmega;
    res.ratio = denom > 0.0 ? res.estimateExtended / denom : 0.0;

    const double bound = powGamma(2.0, spec.p) * powGamma(res.lpNormOnOmega, spec.p) /
                         powGamma(ballVolume(res.rBar, m), spec.lambda);
    const auto centers = sampleCenters(space, wide, false, kTagCompact);
    const auto radii = wide.radiusLadder.radii(kInfinity);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = 0; j < radii.size(); ++j) {
            if (radii[j] < res.rBar) continue;
            const auto ev = evaluateBall(res.extended, space, onOmega, AnisoBall{centers[i], radii[j]}, wide,
                                         ballSeed(wide, i, j));
            if (!ev.admissible) continue;
            ++res.bigBallsChecked;
            const double r = powGamma(ev.value, spec.p) / bound;
            res.worstBigBallRatio = std::max(res.worstBigBallRatio, r);
        }
    }
    // Quadrature of ‖f‖_p and of the per-ball integrals use different nodes.
    res.bigBallBoundHolds = res.worstBigBallRatio <= 1.05;
    return res;
}

}  // namespace campanato
