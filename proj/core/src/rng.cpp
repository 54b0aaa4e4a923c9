#include "campanato/rng.hpp"

#include <cmath>
#include <numbers>

namespace campanato {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t root, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    return mix64(mix64(mix64(mix64(root) ^ a) ^ b) ^ c);
}

double Rng::normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace campanato
