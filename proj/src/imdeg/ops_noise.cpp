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

// Noise-family operators.  All stochastic operators draw in a fixed
// raster order so outputs depend only on (input, schedule, stream).

#include <algorithm>
#include <cmath>

#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {
namespace {

// Additive zero-mean Gaussian noise on every sample.
Image additive_gaussian(const Image& img, double sigma, RngStream& rng) {
  Image out = img;
  for (float& v : out.data) v = static_cast<float>(v + rng.gaussian(0.0, sigma));
  return out;
}

// Multiplicative (signal-proportional) Gaussian noise: x * (1 + n).
Image multiplicative_gaussian(const Image& img, double sigma, RngStream& rng) {
  Image out = img;
  for (float& v : out.data) v = static_cast<float>(v * (1.0 + rng.gaussian(0.0, sigma)));
  return out;
}

// Salt-and-pepper applied per sample: `amount` of all samples become 0 or 1
// with equal probability.
Image salt_and_pepper(const Image& img, double amount, RngStream& rng) {
  Image out = img;
  for (float& v : out.data) {
    double u = rng.uniform();
    if (u < amount * 0.5) {
      v = 0.0f;
    } else if (u < amount) {
      v = 1.0f;
    }
  }
  return out;
}

}  // namespace

Image hendrycks_gaussian_noise(const Image& img, const OpContext& ctx) {
  return additive_gaussian(img, ctx.params[0], ctx.rng);
}

// Photon-counting noise: each sample becomes Poisson(x * photons) / photons,
// so fewer photons mean stronger relative noise.
Image hendrycks_shot_noise(const Image& img, const OpContext& ctx) {
  double photons = ctx.params[0];
  Image out = img;
  for (float& v : out.data) {
    v = static_cast<float>(ctx.rng.poisson(static_cast<double>(v) * photons) / photons);
  }
  return out;
}

Image hendrycks_impulse_noise(const Image& img, const OpContext& ctx) {
  return salt_and_pepper(img, ctx.params[0], ctx.rng);
}

Image hendrycks_speckle_noise(const Image& img, const OpContext& ctx) {
  return multiplicative_gaussian(img, ctx.params[0], ctx.rng);
}

Image arniqa_whitenoise(const Image& img, const OpContext& ctx) {
  return additive_gaussian(img, ctx.params[0], ctx.rng);
}

// Noise confined to the chroma components: luma stays clean.
Image arniqa_whitenoisecc(const Image& img, const OpContext& ctx) {
  double sigma = ctx.params[0];
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    float y, cb, cr;
    rgb_to_ycbcr(img.data[i], img.data[i + 1], img.data[i + 2], y, cb, cr);
    cb = static_cast<float>(cb + ctx.rng.gaussian(0.0, sigma));
    cr = static_cast<float>(cr + ctx.rng.gaussian(0.0, sigma));
    ycbcr_to_rgb(y, cb, cr, out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

Image arniqa_impulsenoise(const Image& img, const OpContext& ctx) {
  return salt_and_pepper(img, ctx.params[0], ctx.rng);
}

Image arniqa_multnoise(const Image& img, const OpContext& ctx) {
  return multiplicative_gaussian(img, ctx.params[0], ctx.rng);
}

// Damaged CCD: grain everywhere plus defective readout columns that are
// either dead (darkened) or hot (brightened).
Image liu_ccd_sensor_damage(const Image& img, const OpContext& ctx) {
  double sigma = ctx.params[0];
  double column_frac = ctx.params[1];
  Image out = additive_gaussian(img, sigma, ctx.rng);
  for (int x = 0; x < img.width; ++x) {
    if (ctx.rng.uniform() >= column_frac) continue;
    bool dead = ctx.rng.uniform() < 0.5;
    for (int y = 0; y < img.height; ++y) {
      for (int c = 0; c < 3; ++c) {
        float& v = out.at(x, y, c);
        v = dead ? v * 0.25f : v + 0.35f;
      }
    }
  }
  return out;
}

// Damaged CMOS: grain plus horizontal banding from per-band readout offsets.
Image liu_cmos_sensor_damage(const Image& img, const OpContext& ctx) {
  double sigma = ctx.params[0];
  double amplitude = ctx.params[1];
  Image out = additive_gaussian(img, sigma, ctx.rng);
  constexpr int kBandRows = 8;
  for (int y0 = 0; y0 < img.height; y0 += kBandRows) {
    float offset = static_cast<float>(ctx.rng.uniform(-amplitude, amplitude));
    int y1 = std::min(img.height, y0 + kBandRows);
    for (int y = y0; y < y1; ++y) {
      float* row = out.row(y);
      for (int i = 0; i < img.width * 3; ++i) row[i] += offset;
    }
  }
  return out;
}

// Broken bad-pixel correction: small clusters of stuck-dark/stuck-bright
// pixels survive into the output.
Image liu_bad_pixel_correction(const Image& img, const OpContext& ctx) {
  double density = ctx.params[0];
  Image out = img;
  // Clusters average ~2.5 pixels; scale the count so the expected fraction
  // of affected pixels tracks the schedule's density.
  std::size_t clusters =
      static_cast<std::size_t>(density * img.pixel_count() / 2.5);
  for (std::size_t i = 0; i < clusters; ++i) {
    int cx = static_cast<int>(ctx.rng.uniform_int(0, img.width - 1));
    int cy = static_cast<int>(ctx.rng.uniform_int(0, img.height - 1));
    float value = ctx.rng.uniform() < 0.5 ? 0.0f : 1.0f;
    int size = static_cast<int>(ctx.rng.uniform_int(1, 4));
    int x = cx, y = cy;
    for (int p = 0; p < size; ++p) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = value;
      // Short random walk to grow an irregular cluster.
      x = std::clamp(x + static_cast<int>(ctx.rng.uniform_int(-1, 1)), 0, img.width - 1);
      y = std::clamp(y + static_cast<int>(ctx.rng.uniform_int(-1, 1)), 0, img.height - 1);
    }
  }
  return out;
}

}  // namespace ops
}  // namespace imdeg
