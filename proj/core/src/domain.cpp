#include "campanato/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "campanato/error.hpp"
#include "campanato/parallel.hpp"

namespace campanato {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::uint64_t kTagCenters = 0x43454e54ULL;
constexpr std::uint64_t kTagPropertyA = 0x50524f50ULL;
constexpr std::uint64_t kTagCusp = 0x43555350ULL;
constexpr std::uint64_t kTagHolder = 0x484f4c44ULL;
constexpr std::uint64_t kTagDiameter = 0x4449414dULL;
constexpr int kMaxRejections = 1'000'000;

bool openBoxContains(const Box& b, std::span<const double> x) {
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
    }
    return true;
}

int variantDimension(const DomainVariant& v) {
    return std::visit(Overloaded{
                          [](const HalfLine&) { return 1; },
                          [](const Strip&) { return 2; },
                          [](const CuspDomain&) { return 2; },
                          [](const ElementaryDomain& e) { return e.dimension; },
                          [](const CuboidDomain& c) { return c.box.dimension(); },
                          [](const FullSpace& f) { return f.dimension; },
                          [](const AtlasDomain& a) { return a.atlas ? a.atlas->dimension : 0; },
                          [](const MappedDomain& m) { return m.base ? m.base->dimension() : 0; },
                      },
                      v);
}

Box boxOfPoints(const std::vector<Point>& pts) {
    const int n = pts.front().dimension();
    Box b = Box::cube(n, kInfinity, -kInfinity);
    for (const auto& p : pts) {
        for (int i = 0; i < n; ++i) {
            b.lo[static_cast<std::size_t>(i)] = std::min(b.lo[static_cast<std::size_t>(i)], p[i]);
            b.hi[static_cast<std::size_t>(i)] = std::max(b.hi[static_cast<std::size_t>(i)], p[i]);
        }
    }
    return b;
}

std::vector<Point> boxCorners(const Box& box) {
    const int n = box.dimension();
    std::vector<Point> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Point p(n);
        for (int i = 0; i < n; ++i) {
            p[i] = (mask >> i) & 1 ? box.hi[static_cast<std::size_t>(i)] : box.lo[static_cast<std::size_t>(i)];
        }
        out.push_back(p);
    }
    return out;
}

std::vector<Point> mappedCorners(const Box& chartBox, const Isometry& toChart) {
    auto corners = boxCorners(chartBox);
    for (auto& c : corners) c = toChart.applyInverse(c);
    return corners;
}

Box headWindow(int dimension, const std::optional<Box>& preferred, const std::optional<Box>& fallback) {
    const auto k = static_cast<std::size_t>(dimension - 1);
    const std::optional<Box>& src = preferred ? preferred : fallback;
    if (src) {
        if (static_cast<std::size_t>(src->dimension()) == k) return *src;
        return Box{std::vector<double>(src->lo.begin(), src->lo.begin() + static_cast<long>(k)),
                   std::vector<double>(src->hi.begin(), src->hi.begin() + static_cast<long>(k))};
    }
    return Box::cube(dimension - 1, -1.0, 1.0);
}

}  // namespace

Domain::Domain(DomainVariant v) : v_(std::move(v)), dimension_(variantDimension(v_)) {
    if (dimension_ < 1 || dimension_ > kMaxDimension) throw InvalidInput("domain: invalid dimension");
    std::visit(Overloaded{
                   [](const ElementaryDomain& e) {
                       if (!e.phi.eval) throw InvalidInput("elementary domain: missing boundary function");
                       if (e.window && e.window->dimension() != e.dimension - 1) {
                           throw InvalidInput("elementary domain: window must have dimension N-1");
                       }
                       if (e.window) e.window->validate();
                       if (!(e.gamma > 0.0 && e.gamma <= 1.0)) throw InvalidInput("elementary domain: gamma in (0,1]");
                   },
                   [](const CuboidDomain& c) {
                       c.box.validate();
                       if (c.toChart.dimension() != c.box.dimension()) {
                           throw InvalidInput("cuboid: isometry and box dimensions differ");
                       }
                   },
                   [](const CuspDomain& c) {
                       if (!(c.gamma > 0.0 && c.gamma <= 1.0)) throw InvalidInput("cusp domain: gamma in (0,1]");
                   },
                   [](const AtlasDomain& a) {
                       if (!a.atlas) throw InvalidInput("atlas domain: missing atlas");
                       a.atlas->validateStructure();
                   },
                   [](const MappedDomain& m) {
                       if (!m.base) throw InvalidInput("mapped domain: missing base");
                       if (m.map.dimension() != m.base->dimension()) throw InvalidInput("mapped domain: dimension");
                   },
                   [](const auto&) {},
               },
               v_);
}

std::shared_ptr<const Domain> makeDomain(DomainVariant v) { return std::make_shared<const Domain>(std::move(v)); }
std::shared_ptr<const Domain> makeDomain(Domain d) { return std::make_shared<const Domain>(std::move(d)); }

std::string Domain::kind() const {
    return std::visit(Overloaded{
                          [](const HalfLine&) { return std::string("halfLine"); },
                          [](const Strip&) { return std::string("strip"); },
                          [](const CuspDomain&) { return std::string("cusp"); },
                          [](const ElementaryDomain&) { return std::string("elementary"); },
                          [](const CuboidDomain&) { return std::string("cuboid"); },
                          [](const FullSpace&) { return std::string("fullSpace"); },
                          [](const AtlasDomain&) { return std::string("atlas"); },
                          [](const MappedDomain& m) { return "mapped(" + m.base->kind() + ")"; },
                      },
                      v_);
}

bool Domain::contains(const Point& x) const {
    if (x.dimension() != dimension_) {
        throw InvalidInput("contains: point of dimension " + std::to_string(x.dimension()) +
                           " tested against domain of dimension " + std::to_string(dimension_));
    }
    return std::visit(Overloaded{
                          [&](const HalfLine&) { return x[0] > 0.0; },
                          [&](const Strip&) { return std::abs(x[1]) < 1.0; },
                          [&](const CuspDomain& c) {
                              return x[1] > 0.0 && x[1] < 1.0 - powGamma(std::abs(x[0]), c.gamma);
                          },
                          [&](const ElementaryDomain& e) {
                              if (e.window && !openBoxContains(*e.window, x.head())) return false;
                              return x.last() < e.phi(x.head());
                          },
                          [&](const CuboidDomain& c) { return openBoxContains(c.box, c.toChart.apply(x).coords()); },
                          [&](const FullSpace&) { return true; },
                          [&](const AtlasDomain& a) {
                              return std::any_of(a.atlas->patches.begin(), a.atlas->patches.end(),
                                                 [&](const AtlasPatch& p) { return p.containsInPatch(x); });
                          },
                          [&](const MappedDomain& m) { return m.base->contains(m.map.applyInverse(x)); },
                      },
                      v_);
}

std::optional<Box> Domain::boundingBox() const {
    return std::visit(Overloaded{
                          [](const CuspDomain&) -> std::optional<Box> { return Box{{-1.0, 0.0}, {1.0, 1.0}}; },
                          [](const CuboidDomain& c) -> std::optional<Box> {
                              return boxOfPoints(mappedCorners(c.box, c.toChart));
                          },
                          [](const AtlasDomain& a) -> std::optional<Box> {
                              std::vector<Point> pts;
                              for (const auto& p : a.atlas->patches) {
                                  auto c = mappedCorners(p.box, p.toChart);
                                  pts.insert(pts.end(), c.begin(), c.end());
                              }
                              return boxOfPoints(pts);
                          },
                          [](const MappedDomain& m) -> std::optional<Box> {
                              auto b = m.base->boundingBox();
                              if (!b) return std::nullopt;
                              auto corners = boxCorners(*b);
                              for (auto& c : corners) c = m.map.apply(c);
                              return boxOfPoints(corners);
                          },
                          [](const auto&) -> std::optional<Box> { return std::nullopt; },
                      },
                      v_);
}

std::optional<double> Domain::knownVolume() const {
    return std::visit(Overloaded{
                          [](const CuspDomain& c) -> std::optional<double> { return 2.0 - 2.0 / (c.gamma + 1.0); },
                          [](const CuboidDomain& c) -> std::optional<double> { return c.box.volume(); },
                          [](const MappedDomain& m) -> std::optional<double> { return m.base->knownVolume(); },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      v_);
}

bool Domain::hasPropertyA() const {
    return std::visit(Overloaded{
                          [](const Strip&) { return false; },
                          [](const MappedDomain& m) { return m.base->hasPropertyA(); },
                          [](const auto&) { return true; },
                      },
                      v_);
}

Point Domain::sampleInterior(Rng& rng, const std::optional<Box>& window) const {
    std::optional<Box> w = window ? window : boundingBox();
    if (!w) throw InvalidInput("sampling " + kind() + ": unbounded domain requires a centerWindow");
    if (w->dimension() != dimension_) throw InvalidInput("sampling: window dimension mismatch");
    Point p(dimension_);
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        w->sample(rng, p.coords());
        if (contains(p)) return p;
    }
    throw InvalidInput("sampling " + kind() + ": window does not intersect the domain");
}

std::optional<Point> Domain::sampleBoundary(Rng& rng, const std::optional<Box>& window) const {
    return std::visit(
        Overloaded{
            [&](const HalfLine&) -> std::optional<Point> { return Point{0.0}; },
            [&](const Strip&) -> std::optional<Point> {
                const Box h = headWindow(2, window, std::nullopt);
                return Point{rng.uniform(h.lo[0], h.hi[0]), rng.uniform() < 0.5 ? -1.0 : 1.0};
            },
            [&](const CuspDomain& c) -> std::optional<Point> {
                const double x1 = rng.uniform(-1.0, 1.0);
                if (rng.uniform() < 0.5) return Point{x1, 0.0};
                return Point{x1, 1.0 - powGamma(std::abs(x1), c.gamma)};
            },
            [&](const ElementaryDomain& e) -> std::optional<Point> {
                const Box h = headWindow(e.dimension, e.window, window);
                Point p(e.dimension);
                h.sample(rng, p.coords().first(static_cast<std::size_t>(e.dimension - 1)));
                p.last() = e.phi(p.head());
                return p;
            },
            [&](const CuboidDomain& c) -> std::optional<Point> {
                const int n = c.box.dimension();
                Point y(n);
                c.box.sample(rng, y.coords());
                const auto axis = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                y[axis] = rng.uniform() < 0.5 ? c.box.lo[static_cast<std::size_t>(axis)]
                                              : c.box.hi[static_cast<std::size_t>(axis)];
                return c.toChart.applyInverse(y);
            },
            [&](const FullSpace&) -> std::optional<Point> { return std::nullopt; },
            [&](const AtlasDomain& a) -> std::optional<Point> {
                std::vector<const AtlasPatch*> bp;
                for (const auto& p : a.atlas->patches) {
                    if (p.isBoundaryPatch()) bp.push_back(&p);
                }
                if (bp.empty()) return std::nullopt;
                const AtlasPatch& patch = *bp[rng.below(bp.size())];
                const Box w = patch.window();
                Point y(a.atlas->dimension);
                w.sample(rng, y.coords().first(static_cast<std::size_t>(a.atlas->dimension - 1)));
                y.last() = (*patch.phi)(y.head());
                return patch.toChart.applyInverse(y);
            },
            [&](const MappedDomain& m) -> std::optional<Point> {
                auto p = m.base->sampleBoundary(rng, std::nullopt);
                if (!p) return std::nullopt;
                return m.map.apply(*p);
            },
        },
        v_);
}

DiameterEstimate diameter(const Domain& d, const MetricParams& m, const SamplerConfig& cfg) {
    if (m.dimension() != d.dimension()) throw InvalidInput("diameter: metric/domain dimension mismatch");
    const auto& v = d.variant();
    if (std::holds_alternative<CuspDomain>(v)) return {std::max(powGamma(2.0, m.gamma()), 1.0), true};
    if (const auto* c = std::get_if<CuboidDomain>(&v)) {
        const auto corners = mappedCorners(c->box, c->toChart);
        return {diameter(corners, m), true};
    }
    if (const auto* mp = std::get_if<MappedDomain>(&v)) {
        // Translations preserve δ_γ.
        const auto& q = mp->map.linear();
        bool pureTranslation = true;
        for (int i = 0; i < d.dimension(); ++i) {
            for (int j = 0; j < d.dimension(); ++j) {
                pureTranslation = pureTranslation && q[static_cast<std::size_t>(i * d.dimension() + j)] == (i == j ? 1.0 : 0.0);
            }
        }
        if (pureTranslation) return diameter(*mp->base, m, cfg);
        if (const auto* c = std::get_if<CuboidDomain>(&mp->base->variant())) {
            auto corners = mappedCorners(c->box, c->toChart);
            for (auto& p : corners) p = mp->map.apply(p);
            return {diameter(corners, m), true};
        }
    }
    if (!d.bounded()) return {kInfinity, true};
    // Sampled lower bound from boundary and interior points.
    Rng rng(deriveSeed(cfg.seed, kTagDiameter));
    std::vector<Point> pts;
    for (int i = 0; i < 256; ++i) {
        auto b = d.sampleBoundary(rng, std::nullopt);
        pts.push_back(b ? *b : d.sampleInterior(rng, std::nullopt));
        pts.push_back(d.sampleInterior(rng, std::nullopt));
    }
    return {diameter(pts, m), false};
}

BallRegion ballRegion(const Domain& d, const AnisoBall& ball, const MetricParams& m, const SamplerConfig& cfg,
                      std::uint64_t streamSeed) {
    if (!(ball.radius > 0.0)) throw InvalidInput("ball radius must be positive");
    BallQuadrature q = sampleBall(ball, m, cfg, streamSeed);
    BallRegion out;
    out.ballNodeCount = q.nodes.size();
    out.stochastic = q.stochastic;
    out.ballVolume = ballVolume(ball.radius, m);
    out.region.nodes.reserve(q.nodes.size());
    for (const auto& y : q.nodes) {
        if (d.contains(y)) {
            out.region.nodes.push_back(y);
            out.region.weights.push_back(q.weight);
        }
    }
    return out;
}

MeasureEstimate intersectionMeasure(const Domain& d, const AnisoBall& ball, const MetricParams& m,
                                    const SamplerConfig& cfg, std::uint64_t streamSeed) {
    if (cfg.quadratureNodesPerBall <= 0 || cfg.tensorNodesPerAxis <= 0) {
        throw InvalidInput("intersectionMeasure: zero sample count");
    }
    const BallRegion br = ballRegion(d, ball, m, cfg, streamSeed);
    MeasureEstimate e;
    if (br.region.empty()) return e;
    const double p = static_cast<double>(br.region.size()) / static_cast<double>(br.ballNodeCount);
    e.estimate = br.stochastic ? br.ballVolume * p : br.region.weights.front() * static_cast<double>(br.region.size());
    if (br.stochastic) {
        e.standardError = br.ballVolume * std::sqrt(p * (1.0 - p) / static_cast<double>(br.ballNodeCount));
    }
    return e;
}

MeasureEstimate intersectionMeasure(const Domain& d, const AnisoBall& ball, const MetricParams& m,
                                    const SamplerConfig& cfg) {
    return intersectionMeasure(d, ball, m, cfg, deriveSeed(cfg.seed, 0x4d454153ULL));
}

std::vector<Point> sampleCenters(const Domain& d, const SamplerConfig& cfg, bool boundaryBiased,
                                 std::uint64_t streamTag) {
    std::vector<Point> centers;
    for (const auto& c : cfg.fixedCenters) {
        if (c.dimension() != d.dimension()) throw InvalidInput("fixed center dimension mismatch");
        centers.push_back(c);
    }
    for (int i = 0; i < cfg.centerCount; ++i) {
        Rng rng(deriveSeed(cfg.seed, kTagCenters, streamTag, static_cast<std::uint64_t>(i)));
        if (boundaryBiased && rng.uniform() < cfg.boundaryFraction) {
            if (auto b = d.sampleBoundary(rng, cfg.centerWindow)) {
                centers.push_back(*b);
                continue;
            }
        }
        centers.push_back(d.sampleInterior(rng, cfg.centerWindow));
    }
    return centers;
}

namespace {

PropertyAReport propertyARound(const Domain& d, const MetricParams& m, const SamplerConfig& cfg, double diam) {
    const auto centers = sampleCenters(d, cfg, true, kTagPropertyA);
    const auto radii = cfg.radiusLadder.radii(diam);
    if (centers.empty()) throw InvalidInput("checkPropertyA: no valid samples");
    const std::size_t nr = radii.size();
    std::vector<double> ratio(centers.size() * nr);
    parallelFor(centers.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < nr; ++j) {
            const AnisoBall ball{centers[i], radii[j]};
            const auto est = intersectionMeasure(d, ball, m, cfg, deriveSeed(cfg.seed, kTagPropertyA, i, j));
            ratio[i * nr + j] = est.estimate / powGamma(radii[j], m.criticalExponent());
        }
    });
    PropertyAReport rep;
    rep.cEstimate = kInfinity;
    for (std::size_t j = 0; j < nr; ++j) {
        double best = kInfinity;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double v = ratio[i * nr + j];
            best = std::min(best, v);
            if (v < rep.cEstimate) {
                rep.cEstimate = v;
                rep.witnessCenter = centers[i];
                rep.witnessRadius = radii[j];
            }
        }
        rep.perRadius.emplace_back(radii[j], best);
    }
    return rep;
}

}  // namespace

PropertyAReport checkPropertyA(const Domain& d, const MetricParams& m, const SamplerConfig& cfg) {
    cfg.validate();
    const double diam = diameter(d, m, cfg).value;
    PropertyAReport rep;
    std::vector<double> rounds;
    for (int round = 0; round <= cfg.refinementRounds; ++round) {
        rep = propertyARound(d, m, cfg.refined(round), diam);
        rounds.push_back(rep.cEstimate);
    }
    rep.rounds = std::move(rounds);
    return rep;
}

CuspInclusionReport cuspInclusion(const ElementaryDomain& e, const SamplerConfig& cfg) {
    const Domain dom{e};
    const int n = e.dimension;
    const auto k = static_cast<std::size_t>(n - 1);
    const Box head = headWindow(n, e.window, cfg.centerWindow);
    const int perVertex = std::max(1, std::min(cfg.quadratureNodesPerBall, 256));
    CuspInclusionReport rep;
    for (int i = 0; i < std::max(1, cfg.centerCount); ++i) {
        Rng rng(deriveSeed(cfg.seed, kTagCusp, static_cast<std::uint64_t>(i)));
        Point x(n);
        head.sample(rng, x.coords().first(k));
        x.last() = e.phi(x.head());
        if (i % 2 == 1) x.last() -= rng.uniform();
        double scale = 0.0;
        for (std::size_t a = 0; a < k; ++a) scale = std::max(scale, head.hi[a] - head.lo[a]);
        for (int s = 0; s < perVertex; ++s) {
            Point y(n);
            double norm = 0.0;
            std::array<double, kMaxDimension> dir{};
            for (std::size_t a = 0; a < k; ++a) {
                dir[a] = rng.normal();
                norm += dir[a] * dir[a];
            }
            norm = std::sqrt(norm);
            const double rad = scale * rng.uniform();
            double off = 0.0;
            for (std::size_t a = 0; a < k; ++a) {
                const double step = norm > 0.0 ? rad * dir[a] / norm : 0.0;
                y[static_cast<int>(a)] = x[static_cast<int>(a)] + step;
                off += step * step;
            }
            off = std::sqrt(off);
            if (e.window && !openBoxContains(*e.window, y.head())) continue;
            // Depth below the cusp surface, mixing tiny and unit offsets.
            const double depth = (1.0 - rng.uniform()) * (s % 2 == 0 ? 1e-6 : 1.0);
            y.last() = x.last() - e.holderConstant * powGamma(off, e.gamma) - depth;
            ++rep.checked;
            if (!dom.contains(y)) {
                rep.holds = false;
                rep.vertex = x;
                rep.violation = y;
                return rep;
            }
        }
    }
    return rep;
}

double holderSeminorm(const std::function<double(std::span<const double>)>& phi, const Box& window, double gamma,
                      const SamplerConfig& cfg) {
    window.validate();
    if (!(window.volume() > 0.0)) throw InvalidInput("holderSeminorm: degenerate window");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidInput("holderSeminorm: gamma must lie in (0, 1]");
    const int k = window.dimension();
    const double budget = std::sqrt(2.0 * static_cast<double>(cfg.pairSampleCount));
    int level = 1;
    while (std::pow(std::pow(2.0, level + 1) + 1.0, k) <= budget) ++level;
    const int perAxis = (1 << level) + 1;
    std::size_t total = 1;
    for (int a = 0; a < k; ++a) total *= static_cast<std::size_t>(perAxis);

    std::vector<std::vector<double>> nodes(total, std::vector<double>(static_cast<std::size_t>(k)));
    std::vector<double> values(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int a = k - 1; a >= 0; --a) {
            const auto ai = static_cast<std::size_t>(a);
            const auto idx = static_cast<double>(rem % static_cast<std::size_t>(perAxis));
            rem /= static_cast<std::size_t>(perAxis);
            nodes[flat][ai] = window.lo[ai] + (window.hi[ai] - window.lo[ai]) * idx / (perAxis - 1);
        }
        values[flat] = phi(nodes[flat]);
    }
    auto quotient = [&](std::span<const double> x, double fx, std::span<const double> y, double fy) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
        if (d2 == 0.0) return 0.0;
        return std::abs(fx - fy) / powGamma(std::sqrt(d2), gamma);
    };
    double best = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = i + 1; j < total; ++j) best = std::max(best, quotient(nodes[i], values[i], nodes[j], values[j]));
    }
    Rng rng(deriveSeed(cfg.seed, kTagHolder));
    std::vector<double> x(static_cast<std::size_t>(k));
    std::vector<double> y(static_cast<std::size_t>(k));
    for (int s = 0; s < cfg.pairSampleCount; ++s) {
        window.sample(rng, x);
        window.sample(rng, y);
        best = std::max(best, quotient(x, phi(x), y, phi(y)));
    }
    return best;
}

}  // namespace campanato
