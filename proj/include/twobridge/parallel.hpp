#ifndef TWOBRIDGE_PARALLEL_HPP
#define TWOBRIDGE_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace twobridge {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(shard) for shard = 0..shards-1 on up to `workers` threads. The first
// exception thrown by any shard is rethrown on the caller's thread.
template <class Fn>
void run_shards(unsigned shards, unsigned workers, Fn&& fn) {
  workers = std::clamp(workers, 1u, std::max(1u, shards));
  if (workers == 1) {
    for (unsigned i = 0; i < shards; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (unsigned i = w; i < shards; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace twobridge

#endif
