#include "campanato/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "campanato/domain.hpp"
#include "campanato/error.hpp"

namespace campanato {
namespace {

constexpr std::uint64_t kTagAtlas = 0x41544c53ULL;

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void rejectUnknown(const std::string& name, const std::map<std::string, double>& p,
                   std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
            throw InvalidInput("boundary function '" + name + "': unknown parameter '" + k + "'");
        }
        if (!std::isfinite(v)) throw InvalidInput("boundary function '" + name + "': parameter '" + k + "' not finite");
    }
}

bool openContains(const Box& b, std::span<const double> x) {
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
    }
    return true;
}

std::string describe(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < p.dimension(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

}  // namespace

BoundaryFunction makeBoundaryFunction(const std::string& name, const std::map<std::string, double>& params) {
    BoundaryFunction f;
    f.name = name;
    f.params = params;
    if (name == "constant") {
        rejectUnknown(name, params, {"value"});
        const double v = param(params, "value", 0.0);
        f.eval = [v](std::span<const double>) { return v; };
        f.holderConstant = 0.0;
        f.holderExponent = 1.0;
    } else if (name == "power") {
        rejectUnknown(name, params, {"offset", "scale", "exponent"});
        const double offset = param(params, "offset", 0.0);
        const double scale = param(params, "scale", 1.0);
        const double e = param(params, "exponent", 1.0);
        if (!(e > 0.0)) throw InvalidInput("boundary function 'power': exponent must be positive");
        f.eval = [=](std::span<const double> x) { return offset + scale * powGamma(euclideanNorm(x), e); };
        if (e <= 1.0) {
            f.holderConstant = std::abs(scale);
            f.holderExponent = e;
        }
    } else if (name == "sine") {
        rejectUnknown(name, params, {"offset", "amplitude", "frequency"});
        const double offset = param(params, "offset", 0.0);
        const double amp = param(params, "amplitude", 1.0);
        const double freq = param(params, "frequency", 1.0);
        f.eval = [=](std::span<const double> x) { return offset + amp * std::sin(freq * x[0]); };
        f.holderConstant = std::abs(amp * freq);
        f.holderExponent = 1.0;
    } else {
        throw InvalidInput("unknown boundary function '" + name + "' (expected constant, power or sine)");
    }
    return f;
}

Box AtlasPatch::shrunk(double margin) const {
    Box b = box;
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        b.lo[i] += margin;
        b.hi[i] -= margin;
    }
    return b;
}

Box AtlasPatch::window() const {
    const auto k = box.lo.size() - 1;
    return Box{std::vector<double>(box.lo.begin(), box.lo.begin() + static_cast<long>(k)),
               std::vector<double>(box.hi.begin(), box.hi.begin() + static_cast<long>(k))};
}

bool AtlasPatch::inCuboid(const Point& x) const { return openContains(box, toChart.apply(x).coords()); }

bool AtlasPatch::inShrunk(const Point& x, double margin) const {
    return openContains(shrunk(margin), toChart.apply(x).coords());
}

bool AtlasPatch::containsInPatch(const Point& x) const {
    const Point y = toChart.apply(x);
    if (!openContains(box, y.coords())) return false;
    return !phi || y.last() < (*phi)(y.head());
}

void Atlas::validateStructure() const {
    if (dimension < 2 || dimension > kMaxDimension) throw InvalidInput("atlas: dimension must lie in [2, 4]");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidInput("atlas: gamma must lie in (0, 1]");
    if (!(delta > 0.0)) throw InvalidInput("atlas: delta must be positive");
    if (patches.empty()) throw InvalidInput("atlas: no patches");
    for (std::size_t k = 0; k < patches.size(); ++k) {
        const auto& p = patches[k];
        const std::string tag = "atlas patch " + std::to_string(k) + ": ";
        if (p.box.dimension() != dimension || p.toChart.dimension() != dimension) {
            throw InvalidInput(tag + "dimension mismatch");
        }
        p.box.validate();
        const double aN = p.box.lo.back();
        const double bN = p.box.hi.back();
        if (!(aN + delta < bN - delta)) throw InvalidInput(tag + "requires a_N + delta < b_N - delta");
        if (p.phi && !p.phi->eval) throw InvalidInput(tag + "boundary function without evaluator");
        if (p.holderConstant < 0.0) throw InvalidInput(tag + "negative Holder constant");
    }
}

bool AtlasReport::allPassed() const noexcept {
    return std::all_of(conditions.begin(), conditions.end(), [](const AtlasCondition& c) { return c.passed; });
}

AtlasReport validateAtlas(const Atlas& atlas, const Domain& omega, const SamplerConfig& cfg) {
    AtlasReport rep;
    const int n = atlas.dimension;
    const double delta = atlas.delta;
    const int samples = std::max(1, std::min(cfg.pairSampleCount, 20000));

    // (i) every shrunk cuboid meets Omega.
    AtlasCondition meet{"patch-meets-domain", true, std::nullopt, ""};
    for (std::size_t k = 0; k < atlas.patches.size() && meet.passed; ++k) {
        const auto& p = atlas.patches[k];
        const Box inner = p.shrunk(delta);
        Rng rng(deriveSeed(cfg.seed, kTagAtlas, 1, k));
        bool found = false;
        Point y(n);
        for (int s = 0; s < samples && !found; ++s) {
            inner.sample(rng, y.coords());
            found = omega.contains(p.toChart.applyInverse(y));
        }
        if (!found) {
            meet.passed = false;
            meet.witness = p.toChart.applyInverse(y);
            meet.detail = "no sampled point of (V_" + std::to_string(k) + ")_delta lies in the domain";
        }
    }
    rep.conditions.push_back(meet);

    // (ii) sampled domain points are covered by the union of shrunk cuboids.
    AtlasCondition cover{"coverage", true, std::nullopt, ""};
    try {
        for (int s = 0; s < samples; ++s) {
            Rng rng(deriveSeed(cfg.seed, kTagAtlas, 2, static_cast<std::uint64_t>(s)));
            const Point x = omega.sampleInterior(rng, cfg.centerWindow);
            const bool covered = std::any_of(atlas.patches.begin(), atlas.patches.end(),
                                             [&](const AtlasPatch& p) { return p.inShrunk(x, delta); });
            if (!covered) {
                cover.passed = false;
                cover.witness = x;
                cover.detail = "domain point " + describe(x) + " outside every (V_k)_delta";
                break;
            }
        }
    } catch (const InvalidInput& e) {
        cover.passed = false;
        cover.detail = e.what();
    }
    rep.conditions.push_back(cover);

    // (iii) patch shape: a_N + delta < phi < b_N - delta on W.
    AtlasCondition shape{"patch-shape", true, std::nullopt, ""};
    for (std::size_t k = 0; k < atlas.patches.size() && shape.passed; ++k) {
        const auto& p = atlas.patches[k];
        if (!p.phi) continue;
        const Box w = p.window();
        const double lo = p.box.lo.back() + delta;
        const double hi = p.box.hi.back() - delta;
        Rng rng(deriveSeed(cfg.seed, kTagAtlas, 3, k));
        Point y(n);
        for (int s = 0; s < samples; ++s) {
            w.sample(rng, y.coords().first(static_cast<std::size_t>(n - 1)));
            y.last() = (*p.phi)(y.head());
            if (!(y.last() > lo && y.last() < hi)) {
                shape.passed = false;
                shape.witness = p.toChart.applyInverse(y);
                shape.detail = "patch " + std::to_string(k) + ": boundary value " + std::to_string(y.last()) +
                               " outside (a_N + delta, b_N - delta)";
                break;
            }
        }
    }
    rep.conditions.push_back(shape);

    // Chart description agrees with Omega inside each cuboid.
    AtlasCondition chart{"chart-consistency", true, std::nullopt, ""};
    for (std::size_t k = 0; k < atlas.patches.size() && chart.passed; ++k) {
        const auto& p = atlas.patches[k];
        Rng rng(deriveSeed(cfg.seed, kTagAtlas, 4, k));
        Point y(n);
        for (int s = 0; s < samples; ++s) {
            p.box.sample(rng, y.coords());
            const Point x = p.toChart.applyInverse(y);
            const bool inChart = !p.phi || y.last() < (*p.phi)(y.head());
            if (!p.inCuboid(x)) continue;
            if (inChart != omega.contains(x)) {
                chart.passed = false;
                chart.witness = x;
                chart.detail = "patch " + std::to_string(k) + " disagrees with the domain at " + describe(x);
                break;
            }
        }
    }
    rep.conditions.push_back(chart);
    return rep;
}

}  // namespace campanato
