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

// Color, tone, and contrast operators.

#include <algorithm>
#include <cmath>

#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {
namespace {

Image apply_per_pixel_hsv(const Image& img, float (*fs)(float, double), float (*fv)(float, double),
                          double p) {
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    float h, s, v;
    rgb_to_hsv(img.data[i], img.data[i + 1], img.data[i + 2], h, s, v);
    if (fs) s = std::clamp(fs(s, p), 0.0f, 1.0f);
    if (fv) v = std::clamp(fv(v, p), 0.0f, 1.0f);
    hsv_to_rgb(h, s, v, out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

}  // namespace

// Exposure lift: constant offset on the HSV value channel.
Image hendrycks_brightness(const Image& img, const OpContext& ctx) {
  return apply_per_pixel_hsv(
      img, nullptr, [](float v, double p) { return static_cast<float>(v + p); }, ctx.params[0]);
}

// Contraction toward the per-channel mean; factor < 1 flattens.
Image hendrycks_contrast(const Image& img, const OpContext& ctx) {
  double factor = ctx.params[0];
  double mean[3] = {0, 0, 0};
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    mean[0] += img.data[i];
    mean[1] += img.data[i + 1];
    mean[2] += img.data[i + 2];
  }
  double n = static_cast<double>(img.pixel_count());
  for (double& m : mean) m /= n;
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      out.data[i + c] = static_cast<float>((img.data[i + c] - mean[c]) * factor + mean[c]);
    }
  }
  return out;
}

// Saturation rescale: s * scale + offset on the HSV saturation channel.
Image hendrycks_saturate(const Image& img, const OpContext& ctx) {
  double scale = ctx.params[0];
  double offset = ctx.params[1];
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    float h, s, v;
    rgb_to_hsv(img.data[i], img.data[i + 1], img.data[i + 2], h, s, v);
    s = std::clamp(static_cast<float>(s * scale + offset), 0.0f, 1.0f);
    hsv_to_rgb(h, s, v, out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

// Blend toward white by the scheduled amount.
Image arniqa_brighten(const Image& img, const OpContext& ctx) {
  float amount = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v = v + amount * (1.0f - v);
  return out;
}

// Blend toward black by the scheduled amount.
Image arniqa_darken(const Image& img, const OpContext& ctx) {
  float keep = 1.0f - static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v = v * keep;
  return out;
}

// Constant intensity offset (positive or negative); offset 0 is an exact
// identity.
Image arniqa_meanshift(const Image& img, const OpContext& ctx) {
  float offset = static_cast<float>(ctx.params[0]);
  if (offset == 0.0f) return img;
  Image out = img;
  for (float& v : out.data) v += offset;
  return out;
}

// Chroma bleeding: Gaussian blur on the chroma planes only.
Image arniqa_colordiff(const Image& img, const OpContext& ctx) {
  double sigma = ctx.params[0];
  int w = img.width, h = img.height;
  std::vector<float> yp(img.pixel_count()), cb(img.pixel_count()), cr(img.pixel_count());
  for (std::size_t i = 0, p = 0; i < img.data.size(); i += 3, ++p) {
    rgb_to_ycbcr(img.data[i], img.data[i + 1], img.data[i + 2], yp[p], cb[p], cr[p]);
  }
  cb = gaussian_blur_plane(cb, w, h, sigma);
  cr = gaussian_blur_plane(cr, w, h, sigma);
  Image out(w, h);
  for (std::size_t i = 0, p = 0; i < out.data.size(); i += 3, ++p) {
    ycbcr_to_rgb(yp[p], cb[p], cr[p], out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

// Misregistered green channel: translated by the scheduled magnitude in a
// random direction.
Image arniqa_colorshift(const Image& img, const OpContext& ctx) {
  double magnitude = ctx.params[0];
  double angle = ctx.rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  int dx = static_cast<int>(std::lround(magnitude * std::cos(angle)));
  int dy = static_cast<int>(std::lround(magnitude * std::sin(angle)));
  if (dx == 0 && dy == 0) dx = static_cast<int>(std::lround(std::max(1.0, magnitude)));
  Image out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.at(x, y, 1) = sample_reflect(img, x + dx, y + dy, 1);
    }
  }
  return out;
}

// Desaturation: HSV saturation scaled down (factor 0 is grayscale).
Image arniqa_colorsat1(const Image& img, const OpContext& ctx) {
  return apply_per_pixel_hsv(
      img, [](float s, double p) { return static_cast<float>(s * p); }, nullptr, ctx.params[0]);
}

// Chroma over-amplification about the neutral axis; gain 1 is an exact
// identity.
Image arniqa_colorsat2(const Image& img, const OpContext& ctx) {
  float gain = static_cast<float>(ctx.params[0]);
  if (gain == 1.0f) return img;
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    float y, cb, cr;
    rgb_to_ycbcr(img.data[i], img.data[i + 1], img.data[i + 2], y, cb, cr);
    cb = 0.5f + gain * (cb - 0.5f);
    cr = 0.5f + gain * (cr - 0.5f);
    ycbcr_to_rgb(y, cb, cr, out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

// Unsharp masking pushed far beyond usefulness.
Image arniqa_highsharpen(const Image& img, const OpContext& ctx) {
  float amount = static_cast<float>(ctx.params[0]);
  double sigma = ctx.params[1];
  Image blurred = gaussian_blur_image(img, sigma);
  Image out = img;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = img.data[i] + amount * (img.data[i] - blurred.data[i]);
  }
  return out;
}

// Linear remap about mid-gray; slope < 1 flattens, slope > 1 clips.
Image arniqa_lincontrchange(const Image& img, const OpContext& ctx) {
  float slope = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v = 0.5f + slope * (v - 0.5f);
  return out;
}

// Gamma curve applied to all channels.
Image arniqa_nonlincontrchange(const Image& img, const OpContext& ctx) {
  float gamma = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v = std::pow(std::max(v, 0.0f), gamma);
  return out;
}

// Black level set too low: pedestal added, shadows washed out.
Image liu_black_level_insufficient(const Image& img, const OpContext& ctx) {
  float offset = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v += offset;
  return out;
}

// Black level set too high: pedestal subtracted, shadows crushed.
Image liu_black_level_excessive(const Image& img, const OpContext& ctx) {
  float offset = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v -= offset;
  return out;
}

// Broken lens-shading correction: radial gain falloff toward the corners
// (loss > 1 drives the far corners fully dark).
Image liu_lens_shading_damage(const Image& img, const OpContext& ctx) {
  double loss = ctx.params[0];
  double cx = (img.width - 1) / 2.0;
  double cy = (img.height - 1) / 2.0;
  double r_max2 = cx * cx + cy * cy;
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const float* src = img.row(y);
    float* dst = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      double r2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / r_max2;
      float gain = static_cast<float>(std::max(0.0, 1.0 - loss * r2));
      dst[x * 3 + 0] = src[x * 3 + 0] * gain;
      dst[x * 3 + 1] = src[x * 3 + 1] * gain;
      dst[x * 3 + 2] = src[x * 3 + 2] * gain;
    }
  }
  return out;
}

// Broken white balance: miscalibrated red/blue channel gains.
Image liu_awb_damage(const Image& img, const OpContext& ctx) {
  float r_gain = static_cast<float>(ctx.params[0]);
  float b_gain = static_cast<float>(ctx.params[1]);
  Image out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    out.data[i] *= r_gain;
    out.data[i + 2] *= b_gain;
  }
  return out;
}

// Wrong gamma applied by the tone stage.
Image liu_gamma_damage(const Image& img, const OpContext& ctx) {
  float gamma = static_cast<float>(ctx.params[0]);
  Image out = img;
  for (float& v : out.data) v = std::pow(std::max(v, 0.0f), gamma);
  return out;
}

// Corrupted color-space conversion: the chroma coefficients bleed into each
// other by the scheduled mix before conversion back to RGB.
Image liu_color_space_conversion_damage(const Image& img, const OpContext& ctx) {
  float mix = static_cast<float>(ctx.params[0]);
  Image out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    float y, cb, cr;
    rgb_to_ycbcr(img.data[i], img.data[i + 1], img.data[i + 2], y, cb, cr);
    float cb2 = (1.0f - mix) * cb + mix * cr;
    float cr2 = (1.0f - mix) * cr + mix * cb;
    ycbcr_to_rgb(y, cb2, cr2, out.data[i], out.data[i + 1], out.data[i + 2]);
  }
  return out;
}

}  // namespace ops
}  // namespace imdeg
