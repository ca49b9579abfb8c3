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

#ifndef IMDEG_RNG_HPP_
#define IMDEG_RNG_HPP_

#include <cstdint>

namespace imdeg {

// Counter-based pseudo random stream (Philox4x32-10).  A stream is fully
// determined by (key, stream id): draws do not depend on thread scheduling
// and disjoint stream ids never collide, which is what makes parallel
// degradation runs bit-reproducible at any worker count.
class RngStream {
 public:
  // Key is the user-facing seed; stream selects an independent substream
  // (e.g. one per image per chain position).
  RngStream(std::uint64_t key, std::uint64_t stream = 0);

  // Uniform 32-bit word.
  std::uint32_t next_u32();

  // Uniform 64-bit word.
  std::uint64_t next_u64();

  // Uniform double in [0, 1).  53-bit resolution.
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [lo, hi] (inclusive), via rejection sampling so the
  // distribution is exact.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Standard normal deviate.  Marsaglia polar method: uses only sqrt/log,
  // whose correctly-rounded results are stable across platforms, unlike the
  // trigonometric Box-Muller variant.
  double gaussian();
  double gaussian(double mean, double stddev);

  // Poisson deviate.  Exact multiplication method for small means; for large
  // means a rounded normal approximation keeps the cost O(1) per draw.
  std::int64_t poisson(double mean);

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t counter_[4];
  std::uint32_t block_[4];
  int block_pos_;       // next unread word in block_, 4 = empty
  bool has_cached_gaussian_;
  double cached_gaussian_;
};

// Derives a substream id from string context (e.g. image id + chain
// position) with a 64-bit FNV-1a fold.  Stable across platforms and runs.
std::uint64_t derive_stream_id(const char* context, std::size_t len);
std::uint64_t derive_stream_id_u64(std::uint64_t a, std::uint64_t b);

}  // namespace imdeg

#endif  // IMDEG_RNG_HPP_
