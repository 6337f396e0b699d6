// Copyright 2026 The Percolab Authors
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
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "percolab/stats.hpp"

namespace percolab {

// Trials are grouped into fixed-size blocks. Work is handed out block by
// block, but every per-block result lands in a slot addressed by block index,
// so reductions never depend on scheduling.
inline constexpr std::uint64_t kTrialBlockSize = 1024;

// Calls body(block, first_trial, end_trial, scratch) once per block of
// [first, first + count). Each worker owns one scratch object from
// make_scratch(). The first exception thrown by any worker is rethrown.
template <class MakeScratch, class Body>
void for_each_trial_block(std::uint64_t first, std::uint64_t count, std::uint64_t block_size,
                          unsigned threads, MakeScratch&& make_scratch, Body&& body) {
  const std::uint64_t blocks = (count + block_size - 1) / block_size;
  if (blocks == 0) return;
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, blocks));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      auto scratch = make_scratch();
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t begin = first + b * block_size;
        const std::uint64_t end = first + std::min(count, (b + 1) * block_size);
        body(b, begin, end, scratch);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// Accumulates body(trial, scratch) -> double over [first, first + count).
template <class MakeScratch, class Body>
RunningStats accumulate_trials(std::uint64_t first, std::uint64_t count, unsigned threads,
                               MakeScratch&& make_scratch, Body&& body) {
  const std::uint64_t blocks = (count + kTrialBlockSize - 1) / kTrialBlockSize;
  std::vector<RunningStats> partial(blocks);
  for_each_trial_block(first, count, kTrialBlockSize, threads, make_scratch,
                       [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end, auto& scratch) {
                         RunningStats local;
                         for (std::uint64_t trial = begin; trial < end; ++trial) {
                           local.add(body(trial, scratch));
                         }
                         partial[b] = local;
                       });
  RunningStats total;
  for (const auto& block : partial) total.merge(block);
  return total;
}

// Collects body(trial, scratch) for trials [0, count) in trial order.
template <class T, class MakeScratch, class Body>
std::vector<T> collect_trials(std::uint64_t count, unsigned threads, MakeScratch&& make_scratch,
                              Body&& body) {
  std::vector<T> out(count);
  for_each_trial_block(0, count, 1, threads, make_scratch,
                       [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, auto& scratch) {
                         for (std::uint64_t trial = begin; trial < end; ++trial) {
                           out[trial] = body(trial, scratch);
                         }
                       });
  return out;
}

}  // namespace percolab
