#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "sepsim/errors.hpp"
#include "sepsim/rng.hpp"

namespace sepsim {

/// Run fn(replica_index, rng) for indices 0..count-1 across up to `threads`
/// worker threads. Replica r always draws from the r-th jump-ahead stream of
/// the master seed, so results are independent of the thread count and
/// returned in index order. The first exception thrown by any replica is
/// rethrown after all workers stop.
template <class T>
std::vector<T> run_replicas(int count, std::uint64_t master_seed, int threads,
                            const std::function<T(int, Rng&)>& fn) {
  if (count < 1) throw ConfigError("replica count must be >= 1");
  if (threads < 1) throw ConfigError("thread count must be >= 1");
  threads = std::min(threads, count);

  std::vector<T> results(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      if (failed.load()) return;
      const int r = next.fetch_add(1);
      if (r >= count) return;
      try {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        results[static_cast<std::size_t>(r)] = fn(r, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace sepsim
