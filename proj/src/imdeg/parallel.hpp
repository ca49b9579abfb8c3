// Copyright 2026 the imdeg authors. All rights reserved.
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

#ifndef IMDEG_PARALLEL_HPP_
#define IMDEG_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace imdeg {

// Number of workers to use when the caller passes jobs <= 0 (hardware
// concurrency, at least 1).
int default_jobs();

// Runs fn(i) for every i in [0, n) on up to `jobs` threads.  fn must derive
// its output from i alone (no ordering guarantees are made), which is what
// keeps results identical at any worker count.  jobs <= 1 runs inline.  If a
// worker throws, the first exception is rethrown here after all workers
// stop picking up new indices.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace imdeg

#endif  // IMDEG_PARALLEL_HPP_
