#include "campanato/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "campanato/error.hpp"

namespace campanato {
namespace {

constexpr std::uint64_t kTagPartition = 0x50415254ULL;

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

int intParam(const std::map<std::string, double>& p, const std::string& key, int fallback) {
    const double v = param(p, key, fallback);
    if (v != std::floor(v)) throw InvalidInput("field parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

void allowOnly(const std::string& field, const std::map<std::string, double>& p,
               std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : p) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
            throw InvalidInput("field '" + field + "': unknown parameter '" + k + "'");
        }
    }
}

int checkedDimension(const std::string& field, int n, const std::shared_ptr<const Domain>& on) {
    if (on) {
        if (n != 0 && n != on->dimension()) throw InvalidInput("field '" + field + "': dimension differs from domain");
        return on->dimension();
    }
    if (n < 1 || n > kMaxDimension) throw InvalidInput("field '" + field + "': dimension must lie in [1, 4]");
    return n;
}

int checkedIndex(const std::string& field, int index, int n) {
    if (index < 1 || index > n) throw InvalidInput("field '" + field + "': index out of range");
    return index - 1;
}

/// Parses "x1x2x2" into per-axis exponents; "c" is the constant monomial.
std::array<int, kMaxDimension> parseMonomial(const std::string& key, int n) {
    std::array<int, kMaxDimension> e{};
    if (key == "c") return e;
    std::size_t i = 0;
    while (i < key.size()) {
        if (key[i] != 'x' || i + 1 >= key.size() || key[i + 1] < '1' || key[i + 1] > '0' + n) {
            throw InvalidInput("polynomial: malformed monomial '" + key + "'");
        }
        ++e[static_cast<std::size_t>(key[i + 1] - '1')];
        i += 2;
    }
    if (key.empty()) throw InvalidInput("polynomial: empty monomial");
    return e;
}

}  // namespace

ScalarField::ScalarField(int dimension, Evaluator eval, std::shared_ptr<const Domain> definedOn, std::string label)
    : dimension_(dimension), eval_(std::move(eval)), definedOn_(std::move(definedOn)), label_(std::move(label)) {
    if (dimension_ < 1 || dimension_ > kMaxDimension) throw InvalidInput("field: dimension must lie in [1, 4]");
    if (!eval_) throw InvalidInput("field: missing evaluator");
    if (definedOn_ && definedOn_->dimension() != dimension_) throw InvalidInput("field: domain dimension mismatch");
}

double ScalarField::operator()(const Point& x) const {
    if (x.dimension() != dimension_) throw InvalidInput("field '" + label_ + "': point dimension mismatch");
    if (definedOn_ && !definedOn_->contains(x)) {
        throw DomainViolation("field '" + label_ + "' evaluated outside its domain");
    }
    return eval_(x);
}

ScalarField builtinField(const std::string& name, const std::map<std::string, double>& params,
                         std::shared_ptr<const Domain> on) {
    if (name == "log") {
        allowOnly(name, params, {});
        if (!on) on = makeDomain(HalfLine{});
        if (on->dimension() != 1) throw InvalidInput("field 'log': requires a one-dimensional domain");
        return {1,
                [](const Point& x) {
                    if (!(x[0] > 0.0)) throw DomainViolation("log evaluated at a nonpositive point");
                    return std::log(x[0]);
                },
                on, "log"};
    }
    if (name == "coordinate") {
        allowOnly(name, params, {"index", "dimension"});
        const int n = checkedDimension(name, intParam(params, "dimension", on ? 0 : 2), on);
        const int i = checkedIndex(name, intParam(params, "index", 1), n);
        return {n, [i](const Point& x) { return x[i]; }, on, "x" + std::to_string(i + 1)};
    }
    if (name == "signedPower") {
        allowOnly(name, params, {"index", "exponent", "dimension"});
        const int n = checkedDimension(name, intParam(params, "dimension", on ? 0 : 2), on);
        const int i = checkedIndex(name, intParam(params, "index", 1), n);
        const double e = param(params, "exponent", 1.0);
        if (!(e > 0.0)) throw InvalidInput("field 'signedPower': exponent must be positive");
        return {n,
                [i, e](const Point& x) {
                    const double t = x[i];
                    return t == 0.0 ? 0.0 : std::copysign(powGamma(std::abs(t), e), t);
                },
                on, "signedPower"};
    }
    if (name == "constant") {
        allowOnly(name, params, {"value", "dimension"});
        const int n = checkedDimension(name, intParam(params, "dimension", on ? 0 : 2), on);
        const double v = param(params, "value", 0.0);
        return {n, [v](const Point&) { return v; }, on, "constant"};
    }
    if (name == "polynomial") {
        const int n = checkedDimension(name, intParam(params, "dimension", on ? 0 : 2), on);
        std::vector<std::pair<std::array<int, kMaxDimension>, double>> terms;
        for (const auto& [k, c] : params) {
            if (k == "dimension") continue;
            terms.emplace_back(parseMonomial(k, n), c);
        }
        return {n,
                [terms, n](const Point& x) {
                    double s = 0.0;
                    for (const auto& [e, c] : terms) {
                        double t = c;
                        for (int a = 0; a < n; ++a) {
                            for (int r = 0; r < e[static_cast<std::size_t>(a)]; ++r) t *= x[a];
                        }
                        s += t;
                    }
                    return s;
                },
                on, "polynomial"};
    }
    if (name == "distLogToPoint") {
        const int n = checkedDimension(name, intParam(params, "dimension", on ? 0 : 2), on);
        std::vector<const char*> keys{"dimension", "gamma", "p1", "p2", "p3", "p4"};
        for (const auto& [k, v] : params) {
            const bool known = std::any_of(keys.begin(), keys.begin() + 2 + n, [&](const char* a) { return k == a; });
            if (!known) throw InvalidInput("field 'distLogToPoint': unknown parameter '" + k + "'");
        }
        const MetricParams m(n, param(params, "gamma", 1.0));
        Point p(n);
        for (int a = 0; a < n; ++a) p[a] = param(params, "p" + std::to_string(a + 1), 0.0);
        return {n,
                [m, p](const Point& x) {
                    const double d = dist(x, p, m);
                    if (!(d > 0.0)) throw DomainViolation("distLogToPoint evaluated at its singular point");
                    return std::log(d);
                },
                on, "distLogToPoint"};
    }
    throw InvalidInput("unknown field '" + name +
                       "' (expected log, coordinate, signedPower, constant, polynomial or distLogToPoint)");
}

ScalarField zeroExtend(const ScalarField& f) {
    auto dom = f.definedOn();
    return {f.dimension(),
            [f, dom](const Point& x) { return !dom || dom->contains(x) ? f.evaluateUnchecked(x) : 0.0; },
            nullptr, f.label() + "_0"};
}

ScalarField restrictTo(const ScalarField& f, std::shared_ptr<const Domain> sub) {
    if (!sub) return f;
    return {f.dimension(), [f](const Point& x) { return f(x); }, std::move(sub), f.label() + "|"};
}

ScalarField composeWithIsometry(const ScalarField& f, const Isometry& r) {
    if (r.dimension() != f.dimension()) throw InvalidInput("composeWithIsometry: dimension mismatch");
    std::shared_ptr<const Domain> mapped;
    if (f.definedOn()) mapped = makeDomain(MappedDomain{f.definedOn(), r});
    return {f.dimension(), [f, r](const Point& y) { return f.evaluateUnchecked(r.applyInverse(y)); }, mapped,
            f.label() + "∘R^-1"};
}

ScalarField linearCombination(double a, const ScalarField& f, double b, const ScalarField& g) {
    if (f.dimension() != g.dimension()) throw InvalidInput("linearCombination: dimension mismatch");
    auto dom = f.definedOn() ? f.definedOn() : g.definedOn();
    return {f.dimension(), [=](const Point& x) { return a * f(x) + b * g(x); }, dom,
            "(" + f.label() + "+" + g.label() + ")"};
}

ScalarField multiply(const ScalarField& f, const ScalarField& g) {
    if (f.dimension() != g.dimension()) throw InvalidInput("multiply: dimension mismatch");
    return {f.dimension(), [f, g](const Point& x) { return f.evaluateUnchecked(x) * g(x); }, f.definedOn(),
            f.label() + "*" + g.label()};
}

ScalarField scaled(const ScalarField& f, double c) {
    return {f.dimension(), [f, c](const Point& x) { return c * f.evaluateUnchecked(x); }, f.definedOn(),
            std::to_string(c) + "*" + f.label()};
}

double smoothRamp(double t) noexcept {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

SmoothCutoff::SmoothCutoff(Isometry toChart, Box box, double innerMargin, double outerMargin)
    : toChart_(std::move(toChart)), box_(std::move(box)), inner_(innerMargin), outer_(outerMargin) {
    box_.validate();
    if (toChart_.dimension() != box_.dimension()) throw InvalidInput("cutoff: isometry/box dimension mismatch");
    if (!(innerMargin > 0.0 && innerMargin < outerMargin)) {
        throw InvalidInput("cutoff: margins must satisfy 0 < innerMargin < outerMargin");
    }
    for (std::size_t i = 0; i < box_.lo.size(); ++i) {
        if (!(box_.hi[i] - box_.lo[i] > 2.0 * outerMargin)) throw InvalidInput("cutoff: margins do not fit in box");
    }
}

double SmoothCutoff::inChart(const Point& y) const {
    const double w = outer_ - inner_;
    double v = 1.0;
    for (std::size_t i = 0; i < box_.lo.size() && v > 0.0; ++i) {
        const double t = y[static_cast<int>(i)];
        v *= smoothRamp((t - box_.lo[i] - inner_) / w) * smoothRamp((box_.hi[i] - inner_ - t) / w);
    }
    return v;
}

double SmoothCutoff::operator()(const Point& x) const { return inChart(toChart_.apply(x)); }

ScalarField SmoothCutoff::asField() const {
    SmoothCutoff self = *this;
    return {box_.dimension(), [self](const Point& x) { return self(x); }, nullptr, "cutoff"};
}

SmoothCutoff makeCutoff(const Isometry& toChart, const Box& box, double innerMargin, double outerMargin) {
    return {toChart, box, innerMargin, outerMargin};
}

PartitionOfUnity::PartitionOfUnity(std::shared_ptr<const Atlas> atlas) : atlas_(std::move(atlas)) {
    if (!atlas_) throw InvalidInput("partition of unity: missing atlas");
    atlas_->validateStructure();
    const double d = atlas_->delta;
    for (const auto& p : atlas_->patches) bumps_.emplace_back(p.toChart, p.box, 0.5 * d, d);
}

double PartitionOfUnity::denominator(const Point& x) const {
    double s = 0.0;
    for (const auto& b : bumps_) s += b(x);
    return s;
}

std::vector<double> PartitionOfUnity::values(const Point& x) const {
    std::vector<double> v(bumps_.size());
    double s = 0.0;
    for (std::size_t k = 0; k < bumps_.size(); ++k) {
        v[k] = bumps_[k](x);
        s += v[k];
    }
    if (s > 0.0) {
        for (auto& e : v) e /= s;
    }
    return v;
}

double PartitionOfUnity::psi(std::size_t k, const Point& x) const {
    if (k >= bumps_.size()) throw InvalidInput("partition of unity: patch index out of range");
    const double own = bumps_[k](x);
    if (own == 0.0) return 0.0;
    return own / denominator(x);
}

ScalarField PartitionOfUnity::field(std::size_t k) const {
    if (k >= bumps_.size()) throw InvalidInput("partition of unity: patch index out of range");
    PartitionOfUnity self = *this;
    return {atlas_->dimension, [self, k](const Point& x) { return self.psi(k, x); }, nullptr,
            "psi" + std::to_string(k + 1)};
}

PartitionOfUnity makePartitionOfUnity(std::shared_ptr<const Atlas> atlas, const Domain* omega,
                                      const SamplerConfig& cfg) {
    PartitionOfUnity pu(std::move(atlas));
    if (omega) {
        const int samples = std::max(1, std::min(cfg.pairSampleCount, 10000));
        for (int s = 0; s < samples; ++s) {
            Rng rng(deriveSeed(cfg.seed, kTagPartition, static_cast<std::uint64_t>(s)));
            const Point x = omega->sampleInterior(rng, cfg.centerWindow);
            if (pu.denominator(x) < 1e-8) {
                std::string where;
                for (int i = 0; i < x.dimension(); ++i) where += (i ? ", " : "") + std::to_string(x[i]);
                throw PreconditionError("partition of unity: cuboids do not cover the domain near (" + where + ")");
            }
        }
    }
    return pu;
}

}  // namespace campanato
