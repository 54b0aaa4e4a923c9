#pragma once

#include <cstddef>
#include <functional>

namespace campanato {

/// Worker count from CAMPANATO_THREADS (0 or unset = hardware concurrency).
[[nodiscard]] unsigned threadCount();

/// Runs body(i) for i in [0, n) on up to threadCount() threads. Bodies must
/// write to disjoint slots; the first exception thrown is rethrown.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace campanato
