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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"

namespace {

using imdeg::RngStream;

TEST_CASE("philox4x32-10 zero key and counter matches the published reference vector") {
  // Known-answer vector from the Random123 distribution (Salmon et al.):
  // counter = (0,0,0,0), key = (0,0).
  RngStream rng(0, 0);
  CHECK(rng.next_u32() == 0x6627e8d5u);
  CHECK(rng.next_u32() == 0xe169c58du);
  CHECK(rng.next_u32() == 0xbc57ac4cu);
  CHECK(rng.next_u32() == 0x9b00dbd8u);
}

TEST_CASE("identical key and stream replay the identical sequence") {
  RngStream a(0x1234abcdu, 7);
  RngStream b(0x1234abcdu, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("mixed draw kinds replay identically too") {
  auto drive = [](RngStream& rng) {
    double acc = 0.0;
    for (int i = 0; i < 200; ++i) {
      acc += rng.uniform();
      acc += static_cast<double>(rng.uniform_int(-5, 17));
      acc += rng.gaussian();
      acc += static_cast<double>(rng.poisson(3.5));
      acc += static_cast<double>(rng.poisson(120.0));
    }
    return acc;
  };
  RngStream a(99, 3);
  RngStream b(99, 3);
  CHECK(drive(a) == drive(b));
}

TEST_CASE("different stream ids under one key give different sequences") {
  RngStream a(42, 0);
  RngStream b(42, 1);
  int differing = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u32() != b.next_u32()) ++differing;
  }
  CHECK(differing > 60);  // essentially all words should differ
}

TEST_CASE("different keys give different sequences") {
  RngStream a(1, 0);
  RngStream b(2, 0);
  int differing = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u32() != b.next_u32()) ++differing;
  }
  CHECK(differing > 60);
}

TEST_CASE("next_u64 assembles low word then high word") {
  RngStream a(77, 5);
  RngStream b(77, 5);
  std::uint64_t lo = a.next_u32();
  std::uint64_t hi = a.next_u32();
  CHECK(b.next_u64() == ((hi << 32) | lo));
}

TEST_CASE("uniform stays in [0,1) with the expected mean and variance") {
  RngStream rng(2026, 0);
  const int n = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  // sigma(mean) ~= 0.00029; allow ~7 sigma.
  CHECK(mean == doctest::Approx(0.5).epsilon(0.004));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("uniform(lo, hi) respects its bounds") {
  RngStream rng(7, 0);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform(-2.5, 4.0);
    CHECK(u >= -2.5);
    CHECK(u < 4.0);
  }
}

TEST_CASE("uniform_int covers every value of a small range uniformly") {
  RngStream rng(11, 0);
  std::map<std::int64_t, int> counts;
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    std::int64_t v = rng.uniform_int(-2, 3);  // six values
    CHECK(v >= -2);
    CHECK(v <= 3);
    ++counts[v];
  }
  CHECK(counts.size() == 6);
  for (const auto& [value, count] : counts) {
    (void)value;
    // expected 10000 per bin; sigma ~= 91, allow ~6 sigma.
    CHECK(count > 9400);
    CHECK(count < 10600);
  }
}

TEST_CASE("uniform_int handles a single-element range and rejects empty ones") {
  RngStream rng(1, 0);
  for (int i = 0; i < 10; ++i) CHECK(rng.uniform_int(9, 9) == 9);
  CHECK_THROWS_AS(rng.uniform_int(3, 2), imdeg::Error);
  try {
    rng.uniform_int(3, 2);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == imdeg::ErrorCode::kArgument);
  }
}

TEST_CASE("gaussian draws have standard-normal mean and variance") {
  RngStream rng(555, 0);
  const int n = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    sum += g;
    sum_sq += g * g;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);  // sigma(mean) = 0.001
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("gaussian(mean, stddev) shifts and scales") {
  RngStream rng(556, 0);
  const int n = 200'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian(10.0, 2.0);
    sum += g;
    sum_sq += g * g;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(10.0).epsilon(0.005));
  CHECK(var == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("poisson matches its mean in both sampling regimes") {
  RngStream rng(901, 0);
  const int n = 200'000;

  // Small-mean regime (exact multiplication method).
  double sum_small = 0.0;
  for (int i = 0; i < n; ++i) {
    std::int64_t k = rng.poisson(3.0);
    CHECK(k >= 0);
    sum_small += static_cast<double>(k);
  }
  // sigma(mean) = sqrt(3/n) ~= 0.0039; allow ~6 sigma.
  CHECK(sum_small / n == doctest::Approx(3.0).epsilon(0.01));

  // Large-mean regime (rounded normal approximation).
  double sum_large = 0.0, sum_sq_large = 0.0;
  for (int i = 0; i < n; ++i) {
    std::int64_t k = rng.poisson(60.0);
    CHECK(k >= 0);
    sum_large += static_cast<double>(k);
    sum_sq_large += static_cast<double>(k) * static_cast<double>(k);
  }
  double mean = sum_large / n;
  double var = sum_sq_large / n - mean * mean;
  CHECK(mean == doctest::Approx(60.0).epsilon(0.005));
  CHECK(var == doctest::Approx(60.0).epsilon(0.05));
}

TEST_CASE("poisson of a non-positive mean is zero") {
  RngStream rng(1, 0);
  CHECK(rng.poisson(0.0) == 0);
  CHECK(rng.poisson(-2.0) == 0);
}

TEST_CASE("derive_stream_id folds context bytes and is order sensitive") {
  std::uint64_t a = imdeg::derive_stream_id("img_0001:0", 10);
  std::uint64_t b = imdeg::derive_stream_id("img_0001:1", 10);
  std::uint64_t c = imdeg::derive_stream_id("0:img_0001", 10);
  CHECK(a != b);
  CHECK(a != c);
  // Equals the underlying 64-bit FNV-1a fold.
  CHECK(a == imdeg::fnv1a64("img_0001:0", 10));
}

TEST_CASE("derive_stream_id_u64 separates both operands") {
  std::uint64_t base = imdeg::derive_stream_id_u64(1, 2);
  CHECK(base != imdeg::derive_stream_id_u64(2, 1));
  CHECK(base != imdeg::derive_stream_id_u64(1, 3));
  CHECK(base == imdeg::derive_stream_id_u64(1, 2));
}

}  // namespace
