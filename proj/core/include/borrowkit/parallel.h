// Copyright 2025 The Borrowkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal data-parallel helper for per-record work. Results must be
// written by index so output order never depends on scheduling.

#ifndef BORROWKIT_PARALLEL_H_
#define BORROWKIT_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace borrowkit {

// Worker count: BORROWKIT_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t thread_width();

// Runs fn(i) for i in [0, n) on up to thread_width() threads. The first
// exception thrown by any invocation is rethrown on the caller's thread
// after all workers have joined.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t width = std::min(thread_width(), n);
  if (width <= 1) {
    for (std::size_t i = 0; i < n; i++) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(width);
  for (std::size_t w = 0; w < width; w++) {
    workers.emplace_back([&]() {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace borrowkit

#endif  // BORROWKIT_PARALLEL_H_
