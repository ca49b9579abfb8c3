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

#ifndef IMDEG_TESTS_SUPPORT_IMAGES_HPP_
#define IMDEG_TESTS_SUPPORT_IMAGES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "imdeg/image.hpp"
#include "imdeg/rng.hpp"

namespace testsupport {

// Deterministic pseudo-random image with full-range samples.
inline imdeg::Image random_image(int width, int height, std::uint64_t seed) {
  imdeg::Image img(width, height);
  imdeg::RngStream rng(seed, 0xF00Du);
  for (auto& v : img.data) v = static_cast<float>(rng.uniform());
  return img;
}

// Deterministic structured image: smooth gradients plus a few hard-edged
// discs, so blur/noise/contrast all have visible structure to act on.
inline imdeg::Image structured_image(int width, int height, std::uint64_t seed) {
  imdeg::Image img(width, height);
  imdeg::RngStream rng(seed, 0xBEEFu);
  const double cx[3] = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
  const double cy[3] = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
  const double cr[3] = {rng.uniform(0.08, 0.2), rng.uniform(0.08, 0.2), rng.uniform(0.08, 0.2)};
  const double phase = rng.uniform(0.0, 6.28);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double fx = (x + 0.5) / width;
      double fy = (y + 0.5) / height;
      double base = 0.25 + 0.5 * fx;
      double wave = 0.15 * std::sin(12.0 * fy + phase);
      double r = base + wave;
      double g = 0.25 + 0.5 * fy + 0.15 * std::sin(10.0 * fx + phase);
      double b = 0.5 + 0.3 * std::sin(8.0 * (fx + fy) + phase);
      for (int k = 0; k < 3; ++k) {
        double dx = fx - cx[k], dy = fy - cy[k];
        if (dx * dx + dy * dy < cr[k] * cr[k]) {
          if (k == 0) r = 0.95;
          if (k == 1) g = 0.05;
          if (k == 2) b = 0.9;
        }
      }
      img.at(x, y, 0) = static_cast<float>(std::clamp(r, 0.0, 1.0));
      img.at(x, y, 1) = static_cast<float>(std::clamp(g, 0.0, 1.0));
      img.at(x, y, 2) = static_cast<float>(std::clamp(b, 0.0, 1.0));
    }
  }
  return img;
}

// Constant-color image.
inline imdeg::Image flat_image(int width, int height, float r, float g, float b) {
  imdeg::Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.at(x, y, 0) = r;
      img.at(x, y, 1) = g;
      img.at(x, y, 2) = b;
    }
  }
  return img;
}

// Snaps every sample to its 8-bit code, mirroring what a PNG save would keep.
// The scale matches the decoder exactly (code * (1/255), not code / 255): the
// two differ in the last float bit for some codes.
inline imdeg::Image quantized(imdeg::Image img) {
  for (auto& v : img.data) {
    v = static_cast<float>(imdeg::quantize8(v)) * (1.0f / 255.0f);
  }
  return img;
}

inline bool bitwise_equal(const imdeg::Image& a, const imdeg::Image& b) {
  return a.width == b.width && a.height == b.height && a.data == b.data;
}

}  // namespace testsupport

#endif  // IMDEG_TESTS_SUPPORT_IMAGES_HPP_
