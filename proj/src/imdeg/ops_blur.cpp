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

// Blur-family operators.

#include <algorithm>
#include <cmath>

#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {

Image hendrycks_gaussian_blur(const Image& img, const OpContext& ctx) {
  return gaussian_blur_image(img, ctx.params[0]);
}

// Circular-aperture defocus: uniform disk kernel with a touch of Gaussian
// smoothing on the disk edge.
Image hendrycks_defocus_blur(const Image& img, const OpContext& ctx) {
  return tap_convolve(img, disk_taps(ctx.params[0], ctx.params[1]));
}

// One-sided Gaussian-weighted streak at a random angle in [-45, 45] degrees
// (streak length 2*radius + 1).
Image hendrycks_motion_blur(const Image& img, const OpContext& ctx) {
  int radius = static_cast<int>(ctx.params[0]);
  double sigma = ctx.params[1];
  double angle = ctx.rng.uniform(-45.0, 45.0);
  return tap_convolve(img, motion_taps(2 * radius + 1, sigma, angle));
}

// Average of progressively zoomed-in views: factors 1, 1+step, ... < max.
Image hendrycks_zoom_blur(const Image& img, const OpContext& ctx) {
  double max_zoom = ctx.params[0];
  double step = ctx.params[1];
  Image acc = img;  // the unzoomed view participates once more below
  int count = 1;
  for (double z = 1.0; z < max_zoom - 1e-12; z += step) {
    Image zoomed = zoom_center(img, z);
    for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += zoomed.data[i];
    ++count;
  }
  float inv = 1.0f / static_cast<float>(count);
  for (float& v : acc.data) v *= inv;
  return acc;
}

// Frosted glass: Gaussian blur, several rounds of random local pixel swaps,
// Gaussian blur again.
Image hendrycks_glass_blur(const Image& img, const OpContext& ctx) {
  double sigma = ctx.params[0];
  int max_delta = static_cast<int>(ctx.params[1]);
  int iterations = static_cast<int>(ctx.params[2]);

  Image out = gaussian_blur_image(img, sigma);
  int w = img.width, h = img.height;
  for (int it = 0; it < iterations; ++it) {
    for (int y = h - max_delta - 1; y >= max_delta; --y) {
      for (int x = w - max_delta - 1; x >= max_delta; --x) {
        int dx = static_cast<int>(ctx.rng.uniform_int(-max_delta, max_delta));
        int dy = static_cast<int>(ctx.rng.uniform_int(-max_delta, max_delta));
        int sx = x + dx, sy = y + dy;
        for (int c = 0; c < 3; ++c) std::swap(out.at(x, y, c), out.at(sx, sy, c));
      }
    }
  }
  return gaussian_blur_image(out, sigma);
}

Image arniqa_gaublur(const Image& img, const OpContext& ctx) {
  return gaussian_blur_image(img, ctx.params[0]);
}

Image arniqa_lensblur(const Image& img, const OpContext& ctx) {
  return tap_convolve(img, disk_taps(ctx.params[0], 0.5));
}

// Streak of the scheduled length at a uniformly random orientation.
Image arniqa_motionblur(const Image& img, const OpContext& ctx) {
  int length = static_cast<int>(ctx.params[0]);
  double angle = ctx.rng.uniform(0.0, 180.0);
  if (length <= 1) return img;
  return tap_convolve(img, motion_taps(length, length / 2.0, angle));
}

// Focus motor stuck off target: fixed circular defocus.
Image liu_focus_motor_damage(const Image& img, const OpContext& ctx) {
  return tap_convolve(img, disk_taps(ctx.params[0], 0.5));
}

}  // namespace ops
}  // namespace imdeg
