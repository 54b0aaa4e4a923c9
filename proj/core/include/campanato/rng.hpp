#pragma once

#include <cstdint>
#include <random>

namespace campanato {

/// splitmix64 finalizer; used to derive independent per-task streams.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream seed for task (a, b, c) under a root seed. Results depend only on
/// the arguments, never on evaluation order.
[[nodiscard]] std::uint64_t deriveSeed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                       std::uint64_t c = 0) noexcept;

/// mt19937_64 with distribution code that is identical on every platform
/// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept { return n == 0 ? 0 : engine_() % n; }
    /// Standard normal via Box–Muller.
    double normal() noexcept;

private:
    std::mt19937_64 engine_;
};

}  // namespace campanato
