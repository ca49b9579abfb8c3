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

// Sampling, compression, and geometry operators.

#include <algorithm>
#include <cmath>

#include "imdeg/error.hpp"
#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {
namespace {

// Box-downscale to a fraction of the original size, then nearest-neighbor
// upscale back: hard pixel blocks.
Image pixelate_common(const Image& img, double factor) {
  int dw = std::max(1, static_cast<int>(std::lround(img.width * factor)));
  int dh = std::max(1, static_cast<int>(std::lround(img.height * factor)));
  if (dw >= img.width && dh >= img.height) return img;
  return resize_nearest(resize_box(img, dw, dh), img.width, img.height);
}

}  // namespace

Image hendrycks_pixelate(const Image& img, const OpContext& ctx) {
  return pixelate_common(img, ctx.params[0]);
}

Image arniqa_pixelate(const Image& img, const OpContext& ctx) {
  return pixelate_common(img, ctx.params[0]);
}

Image hendrycks_jpeg(const Image& img, const OpContext& ctx) {
  return jpeg_roundtrip(img, static_cast<int>(ctx.params[0]));
}

Image arniqa_jpeg(const Image& img, const OpContext& ctx) {
  return jpeg_roundtrip(img, static_cast<int>(ctx.params[0]));
}

Image arniqa_jpeg2000(const Image& img, const OpContext& ctx) {
  (void)img;
  (void)ctx;
  // Availability gating rejects this operator before dispatch; reaching here
  // means the gate was bypassed.
  throw_error(ErrorCode::kUnavailableFeature, "no JPEG 2000 codec is linked into this build");
}

// Random elastic deformation: a jittered-triangle affine warp followed by a
// Gaussian-smoothed random displacement field.  Schedule parameters are
// fractions of the shorter image side.
Image hendrycks_elastic_transform(const Image& img, const OpContext& ctx) {
  int w = img.width, h = img.height;
  double shorter = std::min(w, h);
  double alpha = ctx.params[0] * shorter;
  double sigma = ctx.params[1] * shorter;
  double affine_disp = ctx.params[2] * shorter;

  // Affine stage: three corners of a centered triangle, each displaced
  // uniformly.
  float cx = static_cast<float>(w) / 2.0f;
  float cy = static_cast<float>(h) / 2.0f;
  float square = static_cast<float>(std::min(w, h)) / 3.0f;
  const float src_pts[3][2] = {
      {cx + square, cy + square}, {cx + square, cy - square}, {cx - square, cy + square}};
  float dst_pts[3][2];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      dst_pts[i][j] =
          src_pts[i][j] + static_cast<float>(ctx.rng.uniform(-affine_disp, affine_disp));
    }
  }
  double m[6];
  Image warped = img;
  if (affine_from_points(src_pts, dst_pts, m)) warped = warp_affine(img, m);

  // Displacement stage: white noise in [-1, 1] smoothed to sigma, scaled by
  // alpha.
  std::vector<float> dx(img.pixel_count()), dy(img.pixel_count());
  for (float& v : dx) v = static_cast<float>(ctx.rng.uniform(-1.0, 1.0));
  for (float& v : dy) v = static_cast<float>(ctx.rng.uniform(-1.0, 1.0));
  dx = gaussian_blur_plane(dx, w, h, sigma);
  dy = gaussian_blur_plane(dy, w, h, sigma);
  for (float& v : dx) v *= static_cast<float>(alpha);
  for (float& v : dy) v *= static_cast<float>(alpha);
  return displace_bilinear(warped, dx, dy);
}

// Per-pixel sampling jitter: every output pixel reads from a uniformly
// displaced position within the scheduled radius.
Image arniqa_jitter(const Image& img, const OpContext& ctx) {
  double d = ctx.params[0];
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    float* dst = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      float sx = static_cast<float>(x + ctx.rng.uniform(-d, d));
      float sy = static_cast<float>(y + ctx.rng.uniform(-d, d));
      for (int c = 0; c < 3; ++c) dst[x * 3 + c] = sample_bilinear(img, sx, sy, c);
    }
  }
  return out;
}

// Patch relocation: square patches copied to nearby random positions, the
// eccentricity-breaking distortion.
Image arniqa_noneccpatch(const Image& img, const OpContext& ctx) {
  int patch = std::max(2, static_cast<int>(std::lround(ctx.params[0] * std::min(img.width, img.height))));
  int count = static_cast<int>(ctx.params[1]);
  if (img.width <= 2 * patch || img.height <= 2 * patch) return img;
  Image out = img;
  for (int i = 0; i < count; ++i) {
    int sx = static_cast<int>(ctx.rng.uniform_int(0, img.width - patch - 1));
    int sy = static_cast<int>(ctx.rng.uniform_int(0, img.height - patch - 1));
    int dx = std::clamp(sx + static_cast<int>(ctx.rng.uniform_int(-patch, patch)), 0,
                        img.width - patch - 1);
    int dyy = std::clamp(sy + static_cast<int>(ctx.rng.uniform_int(-patch, patch)), 0,
                         img.height - patch - 1);
    for (int y = 0; y < patch; ++y) {
      const float* src = img.row(sy + y) + sx * 3;
      float* dst = out.row(dyy + y) + dx * 3;
      std::copy(src, src + static_cast<std::size_t>(patch) * 3, dst);
    }
  }
  return out;
}

// Uniform intensity quantization to the scheduled number of levels.
Image arniqa_quantization(const Image& img, const OpContext& ctx) {
  double levels = ctx.params[0];
  float steps = static_cast<float>(levels - 1.0);
  Image out = img;
  for (float& v : out.data) {
    v = std::round(std::clamp(v, 0.0f, 1.0f) * steps) / steps;
  }
  return out;
}

// Opaque solid-color squares dropped at random positions.
Image arniqa_colorblock(const Image& img, const OpContext& ctx) {
  int count = static_cast<int>(ctx.params[0]);
  int size = std::max(2, static_cast<int>(std::lround(ctx.params[1] * std::min(img.width, img.height))));
  Image out = img;
  for (int i = 0; i < count; ++i) {
    int x0 = static_cast<int>(ctx.rng.uniform_int(0, std::max(0, img.width - size)));
    int y0 = static_cast<int>(ctx.rng.uniform_int(0, std::max(0, img.height - size)));
    float color[3] = {static_cast<float>(ctx.rng.uniform()), static_cast<float>(ctx.rng.uniform()),
                      static_cast<float>(ctx.rng.uniform())};
    int x1 = std::min(img.width, x0 + size);
    int y1 = std::min(img.height, y0 + size);
    for (int y = y0; y < y1; ++y) {
      float* row = out.row(y);
      for (int x = x0; x < x1; ++x) {
        row[x * 3 + 0] = color[0];
        row[x * 3 + 1] = color[1];
        row[x * 3 + 2] = color[2];
      }
    }
  }
  return out;
}

// Broken demosaicing: the image is resampled onto a Bayer mosaic and
// reconstructed by nearest-site interpolation, once per scheduled round,
// with the mosaic phase shifting every round to compound the fringing.
Image liu_cfa_interpolation_damage(const Image& img, const OpContext& ctx) {
  int rounds = static_cast<int>(ctx.params[0]);
  Image cur = img;
  for (int r = 0; r < rounds; ++r) {
    int phase = r % 2;  // alternate RGGB / GRBG alignment
    Image mosaic(cur.width, cur.height);
    // Sample one channel per site.
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        int site = ((y + phase) % 2) * 2 + ((x + phase) % 2);
        // 0: R, 1: G, 2: G, 3: B
        int c = site == 0 ? 0 : (site == 3 ? 2 : 1);
        mosaic.at(x, y, 0) = static_cast<float>(c);  // channel index
        mosaic.at(x, y, 1) = cur.at(x, y, c);        // sampled value
      }
    }
    // Reconstruct every channel from the nearest site carrying it.
    Image next(cur.width, cur.height);
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        for (int c = 0; c < 3; ++c) {
          float value = 0.0f;
          bool found = false;
          // Search outward in a small fixed neighborhood; a 2x2 Bayer cell
          // always contains every channel within distance 2.
          for (int radius = 0; radius <= 2 && !found; ++radius) {
            for (int oy = -radius; oy <= radius && !found; ++oy) {
              for (int ox = -radius; ox <= radius && !found; ++ox) {
                int nx = std::clamp(x + ox, 0, cur.width - 1);
                int ny = std::clamp(y + oy, 0, cur.height - 1);
                if (static_cast<int>(mosaic.at(nx, ny, 0)) == c) {
                  value = mosaic.at(nx, ny, 1);
                  found = true;
                }
              }
            }
          }
          next.at(x, y, c) = value;
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace ops
}  // namespace imdeg
