#ifndef ZONAL_PARALLEL_HPP
#define ZONAL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace zonal::detail {

/// 0 means one worker per hardware thread.
inline unsigned resolve_threads(unsigned requested) {
  if (requested == 0) {
    requested = std::max(1U, std::thread::hardware_concurrency());
  }
  return requested;
}

/// Calls `job(index, state)` for every index in [0, count) on up to
/// `threads` workers, each owning one `make_state()` object. Indices are
/// handed out in increasing order through an atomic counter.
///
/// Results must be written to per-index slots; callers combine them in index
/// order, so the outcome does not depend on the thread count. Exceptions are
/// rethrown after all workers join, lowest index first.
template <class MakeState, class Job>
void for_each_partition(std::size_t count, unsigned threads, MakeState&& make_state, Job&& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    auto state = make_state();
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i, state);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::min<unsigned>(resolve_threads(threads),
                               static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace zonal::detail

#endif  // ZONAL_PARALLEL_HPP
