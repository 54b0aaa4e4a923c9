#include "campanato/metric.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "campanato/error.hpp"

namespace campanato {

Point::Point(int dimension) : n_(dimension) {
    if (dimension < 1 || dimension > kMaxDimension) {
        throw InvalidInput("point dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                           std::to_string(dimension));
    }
}

Point::Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
    std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const double> coords) : Point(static_cast<int>(coords.size())) {
    std::copy(coords.begin(), coords.end(), c_.begin());
}

bool operator==(const Point& a, const Point& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

MetricParams::MetricParams(int dimension, double gamma) : n_(dimension), gamma_(gamma) {
    if (dimension < 1 || dimension > kMaxDimension) {
        throw InvalidInput("metric dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InvalidInput("gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
    criticalExponent_ = static_cast<double>(dimension - 1) / gamma + 1.0;
}

double powGamma(double t, double a) noexcept {
    if (t == 0.0) return 0.0;
    return std::exp(a * std::log(t));
}

double euclideanNorm(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double headDistance(const Point& x, const Point& y) noexcept {
    double s = 0.0;
    for (int i = 0; i + 1 < x.dimension(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double dist(const Point& x, const Point& y, const MetricParams& m) {
    if (x.dimension() != m.dimension() || y.dimension() != m.dimension()) {
        throw InvalidInput("dist: point dimension does not match metric dimension " + std::to_string(m.dimension()));
    }
    const double horizontal = powGamma(headDistance(x, y), m.gamma());
    const double vertical = std::abs(x.last() - y.last());
    return std::max(horizontal, vertical);
}

double lanczosGamma(double z) {
    static constexpr std::array<double, 9> kCoeff = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (!(z > 0.0)) throw InvalidInput("lanczosGamma: argument must be positive");
    if (z < 0.5) {
        // Reflection keeps the series in its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczosGamma(1.0 - z));
    }
    const double x = z - 1.0;
    double a = kCoeff[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kCoeff[static_cast<std::size_t>(i)] / (x + i);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double unitBallVolume(int k) {
    if (k < 0) throw InvalidInput("unitBallVolume: negative dimension");
    if (k == 0) return 1.0;
    const double half = 0.5 * k;
    return std::pow(std::numbers::pi, half) / lanczosGamma(half + 1.0);
}

double ballVolume(double r, const MetricParams& m) {
    if (!(r > 0.0)) throw InvalidInput("ballVolume: radius must be positive");
    return 2.0 * unitBallVolume(m.dimension() - 1) * powGamma(r, m.criticalExponent());
}

double AnisoBall::headRadius(const MetricParams& m) const noexcept { return powGamma(radius, 1.0 / m.gamma()); }

bool AnisoBall::contains(const Point& y, const MetricParams& m) const { return dist(center, y, m) < radius; }

bool AnisoBall::containsByProduct(const Point& y, const MetricParams& m) const {
    return headDistance(center, y) < headRadius(m) && std::abs(y.last() - center.last()) < radius;
}

double diameter(std::span<const Point> points, const MetricParams& m) {
    if (points.empty()) throw InvalidInput("diameter: empty point set");
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, dist(points[i], points[j], m));
    }
    return best;
}

Isometry::Isometry(int dimension, std::vector<double> linear, std::vector<double> translation)
    : n_(dimension), q_(std::move(linear)), t_(std::move(translation)) {
    const auto n = static_cast<std::size_t>(dimension);
    if (dimension < 1 || dimension > kMaxDimension || q_.size() != n * n || t_.size() != n) {
        throw InvalidInput("isometry: expected " + std::to_string(n * n) + " matrix entries and " +
                           std::to_string(n) + " translation entries");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q_[i * n + k] * q_[j * n + k];
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12) {
                throw InvalidInput("isometry: linear part is not orthogonal (Q Q^T deviates by " +
                                   std::to_string(std::abs(s - (i == j ? 1.0 : 0.0))) + ")");
            }
        }
    }
}

Isometry Isometry::identity(int dimension) {
    const auto n = static_cast<std::size_t>(dimension);
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
    return {dimension, std::move(q), std::vector<double>(n, 0.0)};
}

Isometry Isometry::translation(std::span<const double> t) {
    Isometry r = identity(static_cast<int>(t.size()));
    r.t_.assign(t.begin(), t.end());
    return r;
}

Isometry Isometry::planeRotation(int dimension, int i, int j, double radians) {
    if (i == j || i < 0 || j < 0 || i >= dimension || j >= dimension) {
        throw InvalidInput("planeRotation: invalid coordinate plane");
    }
    Isometry r = identity(dimension);
    const auto n = static_cast<std::size_t>(dimension);
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    r.q_[a * n + a] = c;
    r.q_[a * n + b] = -s;
    r.q_[b * n + a] = s;
    r.q_[b * n + b] = c;
    return r;
}

Point Isometry::apply(const Point& x) const {
    if (x.dimension() != n_) throw InvalidInput("isometry: dimension mismatch");
    Point y(n_);
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < n; ++i) {
        double s = t_[i];
        for (std::size_t k = 0; k < n; ++k) s += q_[i * n + k] * x[static_cast<int>(k)];
        y[static_cast<int>(i)] = s;
    }
    return y;
}

Point Isometry::applyInverse(const Point& y) const {
    if (y.dimension() != n_) throw InvalidInput("isometry: dimension mismatch");
    Point x(n_);
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += q_[k * n + i] * (y[static_cast<int>(k)] - t_[k]);
        x[static_cast<int>(i)] = s;
    }
    return x;
}

Isometry Isometry::inverse() const {
    const auto n = static_cast<std::size_t>(n_);
    std::vector<double> qt(n * n);
    std::vector<double> t(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) qt[i * n + k] = q_[k * n + i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) t[i] -= qt[i * n + k] * t_[k];
    }
    Isometry r;
    r.n_ = n_;
    r.q_ = std::move(qt);
    r.t_ = std::move(t);
    return r;
}

Isometry Isometry::compose(const Isometry& other) const {
    if (other.n_ != n_) throw InvalidInput("isometry compose: dimension mismatch");
    const auto n = static_cast<std::size_t>(n_);
    Isometry r;
    r.n_ = n_;
    r.q_.assign(n * n, 0.0);
    r.t_ = t_;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) r.q_[i * n + j] += q_[i * n + k] * other.q_[k * n + j];
        }
        for (std::size_t k = 0; k < n; ++k) r.t_[i] += q_[i * n + k] * other.t_[k];
    }
    return r;
}

bool Isometry::isIdentity() const noexcept {
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < n; ++i) {
        if (t_[i] != 0.0) return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (q_[i * n + j] != (i == j ? 1.0 : 0.0)) return false;
        }
    }
    return true;
}

double pullbackDist(const Point& x, const Point& y, const Isometry& r, const MetricParams& m) {
    return dist(r.apply(x), r.apply(y), m);
}

}  // namespace campanato
