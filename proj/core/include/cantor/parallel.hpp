#pragma once

#include <cstdint>
#include <functional>

namespace cantor {

/// Hardware concurrency, at least 1.
unsigned default_threads() noexcept;

/// Calls fn(i) for every i in [begin, end) on up to `threads` workers pulling
/// indices from a shared counter. The first exception thrown by any call is
/// rethrown after all workers stop.
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace cantor
