// Copyright 2026 The kraus Authors
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

#include <cstddef>
#include <functional>
#include <span>

namespace kraus {

// Work is always cut into fixed-size blocks, independent of the thread
// count; threads only decide who runs which block. Reductions combine the
// per-block partials in block order, so results are bit-identical for any
// thread count.
inline constexpr std::size_t kBlockSize = 2048;

std::size_t block_count(std::size_t n);

/// Calls body(begin, end, block) for every block of [0, n). threads == 0 means 1.
void parallel_blocks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)> &body);

/// Blocked sum with a fixed association order.
double blocked_sum(std::span<const double> values);

/// blocked_sum of f(i) for i in [0, n), evaluated in parallel.
double parallel_sum(std::size_t n, unsigned threads, const std::function<double(std::size_t)> &f);

}  // namespace kraus
