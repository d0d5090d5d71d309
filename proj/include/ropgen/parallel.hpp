// Copyright 2026 The ropgen Authors.
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ropgen {

/// Applies `fn` to every item on up to `workers` threads. Results keep input
/// order, so output never depends on the worker count. The first exception
/// thrown by `fn` is rethrown after all threads join.
template <typename Out, typename In, typename Fn>
std::vector<Out> parallel_map(const std::vector<In>& items, int workers, Fn fn) {
  std::vector<Out> out(items.size());
  std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), items.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < items.size();) {
      try {
        out[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        cursor = items.size();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace ropgen
