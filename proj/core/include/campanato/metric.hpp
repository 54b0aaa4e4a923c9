#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace campanato {

inline constexpr int kMaxDimension = 4;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A point of R^N, N <= kMaxDimension, split as (x̄, x_N): the last
/// coordinate is the distinguished "vertical" direction.
class Point {
public:
    Point() = default;
    explicit Point(int dimension);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    [[nodiscard]] int dimension() const noexcept { return n_; }
    [[nodiscard]] double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(n_)}; }
    [[nodiscard]] std::span<double> coords() noexcept { return {c_.data(), static_cast<std::size_t>(n_)}; }
    /// x̄ = (x_1, ..., x_{N-1}).
    [[nodiscard]] std::span<const double> head() const noexcept { return {c_.data(), static_cast<std::size_t>(n_ - 1)}; }
    [[nodiscard]] double last() const noexcept { return c_[static_cast<std::size_t>(n_ - 1)]; }
    double& last() noexcept { return c_[static_cast<std::size_t>(n_ - 1)]; }

    [[nodiscard]] std::vector<double> toVector() const { return {c_.begin(), c_.begin() + n_}; }

    friend bool operator==(const Point& a, const Point& b) noexcept;

private:
    std::array<double, kMaxDimension> c_{};
    int n_ = 0;
};

/// Dimension and exponent of δ_γ; N_γ = (N-1)/γ + 1 is derived on construction.
class MetricParams {
public:
    MetricParams(int dimension, double gamma);

    [[nodiscard]] int dimension() const noexcept { return n_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double criticalExponent() const noexcept { return criticalExponent_; }

    friend bool operator==(const MetricParams&, const MetricParams&) = default;

private:
    int n_;
    double gamma_;
    double criticalExponent_;
};

/// t^a computed as exp(a log t), with t == 0 mapped to 0.
[[nodiscard]] double powGamma(double t, double a) noexcept;

[[nodiscard]] double euclideanNorm(std::span<const double> v) noexcept;
/// |x̄ - ȳ|, Euclidean norm of the difference of the first N-1 coordinates.
[[nodiscard]] double headDistance(const Point& x, const Point& y) noexcept;

/// δ_γ(x, y) = max(|x̄ - ȳ|^γ, |x_N - y_N|).
[[nodiscard]] double dist(const Point& x, const Point& y, const MetricParams& m);

/// Γ(z) for z > 0 via the Lanczos approximation (g = 7, 9 terms).
[[nodiscard]] double lanczosGamma(double z);
/// Lebesgue measure of the Euclidean unit ball in R^k (k = 0 gives 1).
[[nodiscard]] double unitBallVolume(int k);
/// |B_γ(x, r)| = 2 ω_{N-1} r^{N_γ}.
[[nodiscard]] double ballVolume(double r, const MetricParams& m);

struct AnisoBall {
    Point center;
    double radius = 0.0;

    /// Horizontal (x̄) radius r^{1/γ} of the product representation.
    [[nodiscard]] double headRadius(const MetricParams& m) const noexcept;
    [[nodiscard]] bool contains(const Point& y, const MetricParams& m) const;
    /// Same test through |ȳ-x̄| < r^{1/γ} and |y_N-x_N| < r.
    [[nodiscard]] bool containsByProduct(const Point& y, const MetricParams& m) const;
};

/// Exact δ_γ-diameter of a finite point set (max over pairs).
[[nodiscard]] double diameter(std::span<const Point> points, const MetricParams& m);

/// Rigid motion x ↦ Qx + t with Q orthogonal.
class Isometry {
public:
    Isometry() = default;
    /// `linear` is row-major N×N; throws InvalidInput unless Q Qᵀ = I within 1e-12.
    Isometry(int dimension, std::vector<double> linear, std::vector<double> translation);

    static Isometry identity(int dimension);
    static Isometry translation(std::span<const double> t);
    /// Rotation by `radians` in the (i, j) coordinate plane.
    static Isometry planeRotation(int dimension, int i, int j, double radians);

    [[nodiscard]] int dimension() const noexcept { return n_; }
    [[nodiscard]] Point apply(const Point& x) const;
    [[nodiscard]] Point applyInverse(const Point& y) const;
    [[nodiscard]] Isometry inverse() const;
    /// (this ∘ other)(x) = this(other(x)).
    [[nodiscard]] Isometry compose(const Isometry& other) const;
    [[nodiscard]] bool isIdentity() const noexcept;

    [[nodiscard]] const std::vector<double>& linear() const noexcept { return q_; }
    [[nodiscard]] const std::vector<double>& translationVector() const noexcept { return t_; }

private:
    int n_ = 0;
    std::vector<double> q_;
    std::vector<double> t_;
};

/// δ_γ(R(x), R(y)).
[[nodiscard]] double pullbackDist(const Point& x, const Point& y, const Isometry& r, const MetricParams& m);

}  // namespace campanato
