#pragma once

// Deterministic parallel sweeps over an index range. Work is split into
// fixed chunks whose results are merged in chunk order, so the outcome never
// depends on the thread count or on scheduling.

#include <cstdint>
#include <functional>

namespace nilp {

/// Logical core count, at least 1.
int hardware_threads();

/// Calls fn(begin, end, chunk) for consecutive chunks covering [0, n).
/// threads <= 0 means hardware_threads(). Exceptions thrown by fn are
/// rethrown on the calling thread (the first by chunk order).
void parallel_chunks(std::uint64_t n, std::uint64_t chunk_size, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn);

/// Number of chunks parallel_chunks uses for n and chunk_size.
inline std::uint64_t chunk_count(std::uint64_t n, std::uint64_t chunk_size) {
  return (n + chunk_size - 1) / chunk_size;
}

}  // namespace nilp
