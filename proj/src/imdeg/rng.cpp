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

#include "imdeg/rng.hpp"

#include <cmath>

#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"

namespace imdeg {
namespace {

// Philox4x32 round constants (Salmon et al. reference values).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr int kPhiloxRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

RngStream::RngStream(std::uint64_t key, std::uint64_t stream)
    : block_pos_(4), has_cached_gaussian_(false), cached_gaussian_(0.0) {
  key_[0] = static_cast<std::uint32_t>(key);
  key_[1] = static_cast<std::uint32_t>(key >> 32);
  // counter = (block index, stream id); refill() increments the block half.
  counter_[0] = 0;
  counter_[1] = 0;
  counter_[2] = static_cast<std::uint32_t>(stream);
  counter_[3] = static_cast<std::uint32_t>(stream >> 32);
}

void RngStream::refill() {
  std::uint32_t c0 = counter_[0], c1 = counter_[1], c2 = counter_[2], c3 = counter_[3];
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < kPhiloxRounds; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c0, hi0, lo0);
    mulhilo(kPhiloxM1, c2, hi1, lo1);
    std::uint32_t n0 = hi1 ^ c1 ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c3 ^ k1;
    std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  block_[0] = c0;
  block_[1] = c1;
  block_[2] = c2;
  block_[3] = c3;
  block_pos_ = 0;
  // Advance the 64-bit block index for the next refill.
  if (++counter_[0] == 0) ++counter_[1];
}

std::uint32_t RngStream::next_u32() {
  if (block_pos_ >= 4) refill();
  return block_[block_pos_++];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw_error(ErrorCode::kArgument, "uniform_int: empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  // Rejection sampling: draw from the largest multiple of `range` to keep
  // the distribution exactly uniform.
  std::uint64_t zone = (~std::uint64_t{0} / range) * range;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= zone);
  return lo + static_cast<std::int64_t>(r % range);
}

double RngStream::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_gaussian_ = v * f;
  has_cached_gaussian_ = true;
  return u * f;
}

double RngStream::gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

std::int64_t RngStream::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 15.0) {
    // Knuth multiplication method: exact, O(mean) uniforms per draw.
    double limit = std::exp(-mean);
    double p = 1.0;
    std::int64_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }
  // Large means: rounded normal approximation (error negligible next to the
  // shot noise being modeled, and O(1) per sample).
  double draw = gaussian(mean, std::sqrt(mean));
  return draw <= 0.0 ? 0 : static_cast<std::int64_t>(std::llround(draw));
}

std::uint64_t derive_stream_id(const char* context, std::size_t len) {
  return fnv1a64(context, len);
}

std::uint64_t derive_stream_id_u64(std::uint64_t a, std::uint64_t b) {
  std::uint8_t bytes[16];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<std::uint8_t>(a >> (8 * i));
  for (int i = 0; i < 8; ++i) bytes[8 + i] = static_cast<std::uint8_t>(b >> (8 * i));
  return fnv1a64(bytes, sizeof(bytes));
}

}  // namespace imdeg
