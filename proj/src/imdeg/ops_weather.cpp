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

// Weather, medium, and occlusion operators.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>

#include "imdeg/error.hpp"
#include "imdeg/imageops.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace ops {
namespace {

// Zooms a single plane by center-crop + bilinear, by routing it through the
// RGB helpers (planes are small and this path is not hot).
std::vector<float> zoom_plane(const std::vector<float>& plane, int w, int h, double factor) {
  Image tmp(w, h);
  for (std::size_t p = 0; p < plane.size(); ++p) {
    tmp.data[3 * p] = plane[p];
    tmp.data[3 * p + 1] = plane[p];
    tmp.data[3 * p + 2] = plane[p];
  }
  Image zoomed = zoom_center(tmp, factor);
  std::vector<float> out(plane.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = zoomed.data[3 * p];
  return out;
}

std::vector<float> motion_blur_plane(const std::vector<float>& plane, int w, int h,
                                     const std::vector<Tap>& taps) {
  std::vector<float> out(plane.size(), 0.0f);
  for (int y = 0; y < h; ++y) {
    for (const Tap& t : taps) {
      int sy = reflect_index(y + t.dy, h);
      const float* src = plane.data() + static_cast<std::size_t>(sy) * w;
      float* dst = out.data() + static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) dst[x] += t.weight * src[reflect_index(x + t.dx, w)];
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> frost_asset_files(const std::string& assets_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (assets_dir.empty()) return files;
  fs::path dir = fs::path(assets_dir) / "frost";
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Atmospheric haze: a cloud-like fractal field is added and the result is
// renormalized against the input's peak so highlights stay in range.
Image hendrycks_fog(const Image& img, const OpContext& ctx) {
  double intensity = ctx.params[0];
  double decay = ctx.params[1];
  std::vector<float> field = plasma_fractal(img.width, img.height, decay, ctx.rng);
  float max_val = 0.0f;
  for (float v : img.data) max_val = std::max(max_val, v);
  if (max_val <= 0.0f) max_val = 1.0f;
  float scale = static_cast<float>(max_val / (max_val + intensity));
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const float* src = img.row(y);
    float* dst = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      float f = static_cast<float>(intensity) * field[static_cast<std::size_t>(y) * img.width + x];
      dst[x * 3 + 0] = (src[x * 3 + 0] + f) * scale;
      dst[x * 3 + 1] = (src[x * 3 + 1] + f) * scale;
      dst[x * 3 + 2] = (src[x * 3 + 2] + f) * scale;
    }
  }
  return out;
}

// Frost overlay: a random crop of one of the frost textures under
// <assets>/frost, blended additively with the scheduled weights.
Image hendrycks_frost(const Image& img, const OpContext& ctx) {
  float image_scale = static_cast<float>(ctx.params[0]);
  float frost_scale = static_cast<float>(ctx.params[1]);
  std::vector<std::string> files = frost_asset_files(ctx.assets_dir);
  if (files.empty()) {
    throw_error(ErrorCode::kUnavailableFeature,
                "frost needs texture assets: set IMDEG_ASSETS to a directory containing "
                "frost/*.png");
  }
  std::size_t pick = static_cast<std::size_t>(
      ctx.rng.uniform_int(0, static_cast<std::int64_t>(files.size()) - 1));
  Image frost = load_image(files[pick]);
  // Ensure the texture covers the target with margin for a random crop.
  double cover = std::max(static_cast<double>(img.width + 1) / frost.width,
                          static_cast<double>(img.height + 1) / frost.height);
  if (cover > 1.0) {
    frost = resize_bilinear(frost, static_cast<int>(std::ceil(frost.width * cover)),
                            static_cast<int>(std::ceil(frost.height * cover)));
  }
  int max_x = frost.width - img.width;
  int max_y = frost.height - img.height;
  int ox = max_x > 0 ? static_cast<int>(ctx.rng.uniform_int(0, max_x)) : 0;
  int oy = max_y > 0 ? static_cast<int>(ctx.rng.uniform_int(0, max_y)) : 0;
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const float* src = img.row(y);
    const float* fr = frost.row(y + oy) + ox * 3;
    float* dst = out.row(y);
    for (int i = 0; i < img.width * 3; ++i) dst[i] = image_scale * src[i] + frost_scale * fr[i];
  }
  return out;
}

// Falling snow: a thresholded Gaussian flake field, zoomed and streaked at a
// random angle, laid over a brightened version of the scene in both the
// original and 180-degree-rotated orientation.
Image hendrycks_snow(const Image& img, const OpContext& ctx) {
  double flake_mean = ctx.params[0];
  double flake_sigma = ctx.params[1];
  double zoom = ctx.params[2];
  double threshold = ctx.params[3];
  int streak_radius = static_cast<int>(ctx.params[4]);
  double streak_sigma = ctx.params[5];
  float blend = static_cast<float>(ctx.params[6]);

  int w = img.width, h = img.height;
  std::vector<float> snow(img.pixel_count());
  for (float& v : snow) v = static_cast<float>(ctx.rng.gaussian(flake_mean, flake_sigma));
  snow = zoom_plane(snow, w, h, zoom);
  for (float& v : snow) {
    if (v < threshold) v = 0.0f;
  }
  double angle = ctx.rng.uniform(-135.0, -45.0);
  snow = motion_blur_plane(snow, w, h, motion_taps(2 * streak_radius + 1, streak_sigma, angle));

  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const float* src = img.row(y);
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      // Darken/gray the scene the way overcast snowfall does, then add the
      // flake layer twice (once rotated 180 degrees).
      float r = src[x * 3 + 0], g = src[x * 3 + 1], b = src[x * 3 + 2];
      float gray = std::min(1.0f, luma601(r, g, b) * 1.5f + 0.5f);
      float flakes = snow[static_cast<std::size_t>(y) * w + x] +
                     snow[static_cast<std::size_t>(h - 1 - y) * w + (w - 1 - x)];
      for (int c = 0; c < 3; ++c) {
        float base = blend * src[x * 3 + c] + (1.0f - blend) * std::max(src[x * 3 + c], gray);
        dst[x * 3 + c] = base + flakes;
      }
    }
  }
  return out;
}

// Liquid spatter: a blurred Gaussian field thresholded into droplets, laid
// over the image as translucent water (bluish lift) or opaque mud.
Image hendrycks_spatter(const Image& img, const OpContext& ctx) {
  double loc = ctx.params[0];
  double scale = ctx.params[1];
  double blur_sigma = ctx.params[2];
  double threshold = ctx.params[3];
  double spread = ctx.params[4];
  bool mud = ctx.params[5] != 0.0;

  int w = img.width, h = img.height;
  std::vector<float> field(img.pixel_count());
  for (float& v : field) v = static_cast<float>(ctx.rng.gaussian(loc, scale));
  field = gaussian_blur_plane(field, w, h, blur_sigma);
  for (float& v : field) v = v >= threshold ? 1.0f : 0.0f;
  // Soften droplet borders; `spread` controls how far the liquid smears.
  field = gaussian_blur_plane(field, w, h, spread);

  const float water[3] = {0.67f, 0.75f, 0.93f};
  const float mud_color[3] = {0.36f, 0.25f, 0.17f};
  const float* tint = mud ? mud_color : water;
  float opacity = mud ? 0.9f : 0.65f;

  Image out = img;
  for (int y = 0; y < h; ++y) {
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      float a = opacity * std::min(1.0f, field[static_cast<std::size_t>(y) * w + x]);
      if (a <= 0.0f) continue;
      for (int c = 0; c < 3; ++c) {
        dst[x * 3 + c] = (1.0f - a) * dst[x * 3 + c] + a * tint[c];
      }
    }
  }
  return out;
}

// Physically-styled haze: transmittance decays exponentially with a fractal
// depth proxy; airlight fills in what the scene loses.
Image liu_fog(const Image& img, const OpContext& ctx) {
  double beta = ctx.params[0];
  float airlight = static_cast<float>(ctx.params[1]);
  double decay = ctx.params[2];
  std::vector<float> depth = plasma_fractal(img.width, img.height, decay, ctx.rng);
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const float* src = img.row(y);
    float* dst = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      // Keep a floor under the depth proxy so no region stays perfectly
      // clear.
      double d = 0.2 + 0.8 * depth[static_cast<std::size_t>(y) * img.width + x];
      float t = static_cast<float>(std::exp(-beta * d));
      for (int c = 0; c < 3; ++c) {
        dst[x * 3 + c] = src[x * 3 + c] * t + airlight * (1.0f - t);
      }
    }
  }
  return out;
}

// Dark blobs on the lens: soft-edged circular occluders at random positions.
Image liu_lens_obstruction(const Image& img, const OpContext& ctx) {
  int count = static_cast<int>(ctx.params[0]);
  double radius_frac = ctx.params[1];
  float opacity = static_cast<float>(ctx.params[2]);
  double min_dim = std::min(img.width, img.height);

  Image out = img;
  for (int i = 0; i < count; ++i) {
    double cx = ctx.rng.uniform(0.0, img.width);
    double cy = ctx.rng.uniform(0.0, img.height);
    double radius = radius_frac * min_dim * ctx.rng.uniform(0.7, 1.3);
    double feather = std::max(1.0, radius * 0.3);
    int x0 = std::max(0, static_cast<int>(cx - radius - feather));
    int x1 = std::min(img.width, static_cast<int>(cx + radius + feather) + 1);
    int y0 = std::max(0, static_cast<int>(cy - radius - feather));
    int y1 = std::min(img.height, static_cast<int>(cy + radius + feather) + 1);
    for (int y = y0; y < y1; ++y) {
      float* row = out.row(y);
      for (int x = x0; x < x1; ++x) {
        double dist = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
        double fade = std::clamp((dist - radius) / feather, 0.0, 1.0);
        float a = opacity * static_cast<float>(1.0 - fade);
        if (a <= 0.0f) continue;
        for (int c = 0; c < 3; ++c) row[x * 3 + c] *= (1.0f - a);
      }
    }
  }
  return out;
}

}  // namespace ops
}  // namespace imdeg
