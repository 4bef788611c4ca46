#include "nilp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace nilp {

int hardware_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

void parallel_chunks(std::uint64_t n, std::uint64_t chunk_size, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
  if (n == 0) return;
  chunk_size = std::max<std::uint64_t>(chunk_size, 1);
  const std::uint64_t chunks = chunk_count(n, chunk_size);
  if (threads <= 0) threads = hardware_threads();
  const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), chunks));

  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      try {
        fn(c * chunk_size, std::min(n, (c + 1) * chunk_size), c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace nilp
