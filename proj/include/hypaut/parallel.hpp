// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_PARALLEL_HPP
#define HYPAUT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

namespace hypaut {

inline int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs job(task) for every task in `order` on up to `threads` workers. Tasks are
/// claimed in list order; the first exception is rethrown after all workers stop.
template <class Job>
void run_tasks(std::span<const std::size_t> order, int threads, Job&& job) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), order.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= order.size()) return;
      try {
        job(order[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

template <class Job>
void run_tasks(std::size_t count, int threads, Job&& job) {
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  run_tasks(std::span<const std::size_t>(order), threads, std::forward<Job>(job));
}

/// Half-open range [begin, end) of shard s when `total` items are split into `shards`.
inline std::pair<std::size_t, std::size_t> shard_range(std::size_t total, std::size_t shards, std::size_t s) {
  return {total * s / shards, total * (s + 1) / shards};
}

}  // namespace hypaut

#endif  // HYPAUT_PARALLEL_HPP
