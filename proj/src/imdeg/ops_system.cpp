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

// Board-level failure operators: still-image proxies for transport and
// memory faults.

#include <algorithm>
#include <cmath>
#include <cstring>

#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {

// A dead horizontal band, the classic signature of a cracked sensor or a
// severed readout region. Deterministic: the band location is fixed.
Image liu_sensor_broken(const Image& img, const OpContext& ctx) {
  double band_frac = ctx.params[0];
  int y0 = static_cast<int>(0.42 * img.height);
  int y1 = std::min(img.height, y0 + std::max(1, static_cast<int>(band_frac * img.height)));
  Image out = img;
  for (int y = y0; y < y1; ++y) {
    float* row = out.row(y);
    for (int x = 0; x < img.width * 3; ++x) row[x] = 0.02f;
  }
  return out;
}

// Corrupted framebuffer blocks: on a fixed block grid, each block may be
// flattened to a random gray, replaced by another block, or bit-crushed.
Image liu_memory_exceptions(const Image& img, const OpContext& ctx) {
  double block_frac = ctx.params[0];
  int block = static_cast<int>(ctx.params[1]);
  block = std::max(1, block);
  int bx_count = (img.width + block - 1) / block;
  int by_count = (img.height + block - 1) / block;

  Image out = img;
  for (int by = 0; by < by_count; ++by) {
    for (int bx = 0; bx < bx_count; ++bx) {
      if (ctx.rng.uniform() >= block_frac) continue;
      int x0 = bx * block, y0 = by * block;
      int x1 = std::min(img.width, x0 + block);
      int y1 = std::min(img.height, y0 + block);
      int mode = static_cast<int>(ctx.rng.uniform_int(0, 2));
      if (mode == 0) {
        // Stuck block: a single uniform value as if the DMA wrote garbage.
        float v = static_cast<float>(ctx.rng.uniform());
        for (int y = y0; y < y1; ++y) {
          float* row = out.row(y);
          for (int x = x0; x < x1; ++x) {
            row[x * 3] = v;
            row[x * 3 + 1] = v;
            row[x * 3 + 2] = v;
          }
        }
      } else if (mode == 1) {
        // Misrouted block: content copied from a random other grid cell of
        // the original image.
        int sx0 = static_cast<int>(ctx.rng.uniform_int(0, bx_count - 1)) * block;
        int sy0 = static_cast<int>(ctx.rng.uniform_int(0, by_count - 1)) * block;
        for (int y = y0; y < y1; ++y) {
          int sy = std::min(img.height - 1, sy0 + (y - y0));
          const float* src = img.row(sy);
          float* row = out.row(y);
          for (int x = x0; x < x1; ++x) {
            int sx = std::min(img.width - 1, sx0 + (x - x0));
            row[x * 3] = src[sx * 3];
            row[x * 3 + 1] = src[sx * 3 + 1];
            row[x * 3 + 2] = src[sx * 3 + 2];
          }
        }
      } else {
        // Bit-depth loss: quantize the block to 3 bits per channel.
        for (int y = y0; y < y1; ++y) {
          float* row = out.row(y);
          for (int x = x0 * 3; x < x1 * 3; ++x) {
            float v = std::clamp(row[x], 0.0f, 1.0f);
            row[x] = std::round(v * 7.0f) / 7.0f;
          }
        }
      }
    }
  }
  return out;
}

// Row tearing from an unreliable transfer link: affected rows land shifted
// sideways, with edge pixels replicated into the gap.
Image liu_transfer_harness_exceptions(const Image& img, const OpContext& ctx) {
  double row_frac = ctx.params[0];
  int max_shift = std::max(1, static_cast<int>(std::lround(ctx.params[1] * img.width)));

  Image out = img;
  for (int y = 0; y < img.height; ++y) {
    if (ctx.rng.uniform() >= row_frac) continue;
    int shift = static_cast<int>(ctx.rng.uniform_int(-max_shift, max_shift));
    if (shift == 0) continue;
    const float* src = img.row(y);
    float* dst = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      int sx = std::clamp(x - shift, 0, img.width - 1);
      dst[x * 3] = src[sx * 3];
      dst[x * 3 + 1] = src[sx * 3 + 1];
      dst[x * 3 + 2] = src[sx * 3 + 2];
    }
  }
  return out;
}

}  // namespace ops
}  // namespace imdeg
