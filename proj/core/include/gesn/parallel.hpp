// Copyright 2026 The GESN Authors.
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

#ifndef GESN_PARALLEL_HPP_
#define GESN_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gesn {

// 0 means "use the hardware concurrency". Always returns at least 1.
unsigned resolve_workers(unsigned requested);

// Splits [0, count) into contiguous chunks of `grain` items and hands them to
// up to `workers` threads. Chunk boundaries depend only on `count` and
// `grain`, never on the worker count, so a body that writes disjoint output
// per index produces identical results for every worker count.
//
// If any chunk throws, the exception from the lowest-indexed failing chunk is
// rethrown after all threads have joined.
void parallel_for(std::size_t count, unsigned workers, std::size_t grain,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

// Dynamic work queue over independent tasks [0, count). Tasks are claimed
// from a shared atomic counter; results must be written to per-task slots.
void run_tasks(std::size_t count, unsigned workers,
               const std::function<void(std::size_t task)>& task);

}  // namespace gesn

#endif  // GESN_PARALLEL_HPP_
