// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace starkshell {

// Worker cap: STARK_SHELL_THREADS if set (>= 1), otherwise min(hardware, 8).
inline int thread_budget() {
  if (const char* env = std::getenv("STARK_SHELL_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

// Deterministic parallel loop: fixed block partition, body(i) must write only
// to slot i of a preallocated result array. Output is then independent of the
// worker count.
template <class Body>
void parallel_for(int n, Body&& body) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  int chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace starkshell
