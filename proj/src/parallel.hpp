// Copyright 2026 The QAOA Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qaoa::detail {

// Below this many elements kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;
// Reductions sum fixed-size chunks and then combine the chunk sums in order,
// so the result does not depend on the number of threads.
inline constexpr std::size_t kReductionChunk = std::size_t{1} << 12;

/// Calls body(begin, end) over contiguous blocks of [0, count); each block holds at least `grain` items.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body &&body, std::size_t grain = kParallelThreshold) {
    const std::size_t workers = std::min<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads),
                                                      count / std::max<std::size_t>(grain, 1) + 1);
    if (workers <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t block = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * block);
        const std::size_t end = std::min(count, begin + block);
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(std::size_t{0}, std::min(count, block));
}

/// Sum of term(i) for i in [0, count) with a thread-count independent reduction order.
template <typename Term>
double deterministic_sum(std::size_t count, int threads, Term &&term) {
    const std::size_t chunks = (count + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> partial(chunks, 0.0);
    parallel_for(
        chunks, threads,
        [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t lo = c * kReductionChunk;
            const std::size_t hi = std::min(count, lo + kReductionChunk);
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            partial[c] = s;
        }
    },
        kParallelThreshold / kReductionChunk);
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

}  // namespace qaoa::detail
