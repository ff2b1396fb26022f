#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace secgame {

/// Worker cap: SECGAME_THREADS (when set and >= 1) bounds the hardware
/// concurrency; always at least 1.
inline unsigned max_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SECGAME_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && static_cast<unsigned long>(v) < hw) hw = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // Unparsable value: ignore and keep the hardware default.
    }
  }
  return hw;
}

/// Runs fn(i) for every i in [0, n). Work items must be independent and write
/// only to their own slots, so the result is identical regardless of the
/// thread count. The first exception is rethrown on the caller.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(max_threads(), n == 0 ? 1 : n));
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace secgame
