// salign/parallel.h

// Copyright 2026  The salign authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SALIGN_PARALLEL_H_
#define SALIGN_PARALLEL_H_

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace salign {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Outputs must go to
// disjoint slots, which keeps results identical for any thread count.
// The first exception thrown by a worker is rethrown on the caller.
inline void parallel_for(size_t n, int threads,
                         const std::function<void(size_t, size_t)>& fn) {
  const int nt = std::min<size_t>(resolve_threads(threads), n == 0 ? 1 : n);
  if (n == 0) return;
  if (nt <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::exception_ptr error;
  std::mutex error_mutex;
  const size_t chunk = (n + nt - 1) / nt;
  for (int i = 0; i < nt; ++i) {
    const size_t begin = i * chunk;
    const size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace salign

#endif  // SALIGN_PARALLEL_H_
