// Copyright 2026 The ldpfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPFAIR_PARALLEL_H_
#define LDPFAIR_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ldpfair {

// Runs fn(i) for i in [0, n) on at most `jobs` worker threads. Each index is
// executed exactly once; callers write results into pre-sized slots so the
// merge order is independent of scheduling. jobs <= 1 runs inline.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace ldpfair

#endif  // LDPFAIR_PARALLEL_H_
