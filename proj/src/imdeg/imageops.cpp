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

#include "imdeg/imageops.hpp"

#include <algorithm>
#include <cmath>

#include "imdeg/error.hpp"

namespace imdeg {

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  int period = 2 * (n - 1);
  i = ((i % period) + period) % period;
  return i < n ? i : period - i;
}

float sample_reflect(const Image& img, int x, int y, int c) {
  return img.at(reflect_index(x, img.width), reflect_index(y, img.height), c);
}

float sample_bilinear(const Image& img, float x, float y, int c) {
  float fx = std::floor(x);
  float fy = std::floor(y);
  int x0 = static_cast<int>(fx);
  int y0 = static_cast<int>(fy);
  float tx = x - fx;
  float ty = y - fy;
  float v00 = sample_reflect(img, x0, y0, c);
  float v10 = sample_reflect(img, x0 + 1, y0, c);
  float v01 = sample_reflect(img, x0, y0 + 1, c);
  float v11 = sample_reflect(img, x0 + 1, y0 + 1, c);
  float top = v00 + (v10 - v00) * tx;
  float bot = v01 + (v11 - v01) * tx;
  return top + (bot - top) * ty;
}

std::vector<float> gaussian_taps(double sigma, int radius) {
  if (sigma <= 0.0) return {1.0f};
  if (radius < 0) radius = std::max(1, static_cast<int>(std::lround(4.0 * sigma)));
  std::vector<float> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    taps[i + radius] = static_cast<float>(w);
    sum += w;
  }
  for (float& t : taps) t = static_cast<float>(t / sum);
  return taps;
}

Image separable_convolve(const Image& img, const std::vector<float>& taps) {
  int radius = static_cast<int>(taps.size() / 2);
  if (radius == 0) return img;
  int w = img.width, h = img.height;
  Image tmp(w, h);

  // Horizontal pass.
  for (int y = 0; y < h; ++y) {
    const float* src = img.row(y);
    float* dst = tmp.row(y);
    for (int x = 0; x < w; ++x) {
      float acc[3] = {0, 0, 0};
      for (int k = -radius; k <= radius; ++k) {
        const float* px = src + reflect_index(x + k, w) * 3;
        float wgt = taps[k + radius];
        acc[0] += wgt * px[0];
        acc[1] += wgt * px[1];
        acc[2] += wgt * px[2];
      }
      dst[x * 3 + 0] = acc[0];
      dst[x * 3 + 1] = acc[1];
      dst[x * 3 + 2] = acc[2];
    }
  }
  // Vertical pass.
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    float* dst = out.row(y);
    for (int k = -radius; k <= radius; ++k) {
      const float* src = tmp.row(reflect_index(y + k, h));
      float wgt = taps[k + radius];
      for (int i = 0; i < w * 3; ++i) dst[i] += wgt * src[i];
    }
  }
  return out;
}

Image gaussian_blur_image(const Image& img, double sigma) {
  if (sigma <= 0.0) return img;
  return separable_convolve(img, gaussian_taps(sigma));
}

std::vector<float> gaussian_blur_plane(const std::vector<float>& plane, int w, int h,
                                       double sigma) {
  if (sigma <= 0.0) return plane;
  std::vector<float> taps = gaussian_taps(sigma);
  int radius = static_cast<int>(taps.size() / 2);
  std::vector<float> tmp(plane.size()), out(plane.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[k + radius] * plane[static_cast<std::size_t>(y) * w + reflect_index(x + k, w)];
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[k + radius] * tmp[static_cast<std::size_t>(reflect_index(y + k, h)) * w + x];
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

Image tap_convolve(const Image& img, const std::vector<Tap>& taps) {
  int w = img.width, h = img.height;
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    float* dst = out.row(y);
    for (const Tap& t : taps) {
      int sy = reflect_index(y + t.dy, h);
      const float* src = img.row(sy);
      // Interior columns need no reflection; handle margins separately so the
      // hot loop stays branch-free.
      int x_lo = std::max(0, -t.dx);
      int x_hi = std::min(w, w - t.dx);
      for (int x = x_lo; x < x_hi; ++x) {
        const float* px = src + (x + t.dx) * 3;
        float* d = dst + x * 3;
        d[0] += t.weight * px[0];
        d[1] += t.weight * px[1];
        d[2] += t.weight * px[2];
      }
      for (int x = 0; x < x_lo; ++x) {
        const float* px = src + reflect_index(x + t.dx, w) * 3;
        float* d = dst + x * 3;
        d[0] += t.weight * px[0];
        d[1] += t.weight * px[1];
        d[2] += t.weight * px[2];
      }
      for (int x = std::max(x_hi, 0); x < w; ++x) {
        const float* px = src + reflect_index(x + t.dx, w) * 3;
        float* d = dst + x * 3;
        d[0] += t.weight * px[0];
        d[1] += t.weight * px[1];
        d[2] += t.weight * px[2];
      }
    }
  }
  return out;
}

std::vector<Tap> disk_taps(double radius, double alias_sigma) {
  int r = std::max(1, static_cast<int>(std::ceil(radius)));
  int size = 2 * r + 1;
  std::vector<float> kernel(static_cast<std::size_t>(size) * size, 0.0f);
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      if (static_cast<double>(x) * x + static_cast<double>(y) * y <= radius * radius) {
        kernel[static_cast<std::size_t>(y + r) * size + (x + r)] = 1.0f;
      }
    }
  }
  // Smooth the hard disk edge a little (the anti-alias blur of the source
  // schedules), then renormalize.
  if (alias_sigma > 0.0) kernel = gaussian_blur_plane(kernel, size, size, alias_sigma);
  double sum = 0.0;
  for (float v : kernel) sum += v;
  std::vector<Tap> taps;
  taps.reserve(kernel.size());
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      float v = kernel[static_cast<std::size_t>(y + r) * size + (x + r)];
      if (v > 0.0f) taps.push_back({x, y, static_cast<float>(v / sum)});
    }
  }
  return taps;
}

std::vector<Tap> motion_taps(int length, double sigma, double angle_deg) {
  if (length <= 1) return {{0, 0, 1.0f}};
  double angle = angle_deg * 3.14159265358979323846 / 180.0;
  double dir_x = std::cos(angle);
  double dir_y = std::sin(angle);

  // Accumulate subpixel-positioned taps into a dense weight map keyed by
  // integer offset, distributing each position bilinearly.
  struct Key {
    int dx, dy;
  };
  std::vector<std::vector<float>> grid(static_cast<std::size_t>(2 * length + 1),
                                       std::vector<float>(2 * length + 1, 0.0f));
  auto deposit = [&](double px, double py, double w) {
    int x0 = static_cast<int>(std::floor(px));
    int y0 = static_cast<int>(std::floor(py));
    double tx = px - x0, ty = py - y0;
    const double w00 = w * (1 - tx) * (1 - ty);
    const double w10 = w * tx * (1 - ty);
    const double w01 = w * (1 - tx) * ty;
    const double w11 = w * tx * ty;
    grid[y0 + length][x0 + length] += static_cast<float>(w00);
    grid[y0 + length][x0 + 1 + length] += static_cast<float>(w10);
    grid[y0 + 1 + length][x0 + length] += static_cast<float>(w01);
    grid[y0 + 1 + length][x0 + 1 + length] += static_cast<float>(w11);
  };
  double s = sigma > 0 ? sigma : length / 2.0;
  for (int t = 0; t < length; ++t) {
    double w = std::exp(-(static_cast<double>(t) * t) / (2.0 * s * s));
    deposit(dir_x * t, dir_y * t, w);
  }
  double sum = 0.0;
  for (const auto& row : grid)
    for (float v : row) sum += v;
  std::vector<Tap> taps;
  for (int y = 0; y < 2 * length + 1; ++y) {
    for (int x = 0; x < 2 * length + 1; ++x) {
      float v = grid[y][x];
      if (v > 0.0f) taps.push_back({x - length, y - length, static_cast<float>(v / sum)});
    }
  }
  return taps;
}

Image resize_bilinear(const Image& img, int out_w, int out_h) {
  if (out_w <= 0 || out_h <= 0) throw_error(ErrorCode::kShape, "resize target must be positive");
  if (out_w == img.width && out_h == img.height) return img;
  Image out(out_w, out_h);
  float sx = static_cast<float>(img.width) / out_w;
  float sy = static_cast<float>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    float src_y = (y + 0.5f) * sy - 0.5f;
    float* dst = out.row(y);
    for (int x = 0; x < out_w; ++x) {
      float src_x = (x + 0.5f) * sx - 0.5f;
      for (int c = 0; c < 3; ++c) dst[x * 3 + c] = sample_bilinear(img, src_x, src_y, c);
    }
  }
  return out;
}

Image resize_nearest(const Image& img, int out_w, int out_h) {
  if (out_w <= 0 || out_h <= 0) throw_error(ErrorCode::kShape, "resize target must be positive");
  if (out_w == img.width && out_h == img.height) return img;
  Image out(out_w, out_h);
  float sx = static_cast<float>(img.width) / out_w;
  float sy = static_cast<float>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    int src_y = std::min(img.height - 1, static_cast<int>((y + 0.5f) * sy));
    const float* src = img.row(src_y);
    float* dst = out.row(y);
    for (int x = 0; x < out_w; ++x) {
      int src_x = std::min(img.width - 1, static_cast<int>((x + 0.5f) * sx));
      dst[x * 3 + 0] = src[src_x * 3 + 0];
      dst[x * 3 + 1] = src[src_x * 3 + 1];
      dst[x * 3 + 2] = src[src_x * 3 + 2];
    }
  }
  return out;
}

Image resize_box(const Image& img, int out_w, int out_h) {
  if (out_w <= 0 || out_h <= 0) throw_error(ErrorCode::kShape, "resize target must be positive");
  if (out_w >= img.width || out_h >= img.height) return resize_bilinear(img, out_w, out_h);
  Image out(out_w, out_h);
  double sx = static_cast<double>(img.width) / out_w;
  double sy = static_cast<double>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double y0 = y * sy, y1 = (y + 1) * sy;
    float* dst = out.row(y);
    for (int x = 0; x < out_w; ++x) {
      double x0 = x * sx, x1 = (x + 1) * sx;
      double acc[3] = {0, 0, 0};
      double area = 0.0;
      for (int iy = static_cast<int>(y0); iy < static_cast<int>(std::ceil(y1)); ++iy) {
        double cover_y = std::min<double>(iy + 1, y1) - std::max<double>(iy, y0);
        if (cover_y <= 0) continue;
        const float* src = img.row(std::min(iy, img.height - 1));
        for (int ix = static_cast<int>(x0); ix < static_cast<int>(std::ceil(x1)); ++ix) {
          double cover_x = std::min<double>(ix + 1, x1) - std::max<double>(ix, x0);
          if (cover_x <= 0) continue;
          double wgt = cover_x * cover_y;
          const float* px = src + std::min(ix, img.width - 1) * 3;
          acc[0] += wgt * px[0];
          acc[1] += wgt * px[1];
          acc[2] += wgt * px[2];
          area += wgt;
        }
      }
      dst[x * 3 + 0] = static_cast<float>(acc[0] / area);
      dst[x * 3 + 1] = static_cast<float>(acc[1] / area);
      dst[x * 3 + 2] = static_cast<float>(acc[2] / area);
    }
  }
  return out;
}

Image zoom_center(const Image& img, double factor) {
  if (factor <= 1.0) return img;
  int cw = std::max(1, static_cast<int>(std::lround(img.width / factor)));
  int ch = std::max(1, static_cast<int>(std::lround(img.height / factor)));
  int ox = (img.width - cw) / 2;
  int oy = (img.height - ch) / 2;
  Image crop(cw, ch);
  for (int y = 0; y < ch; ++y) {
    const float* src = img.row(y + oy) + ox * 3;
    std::copy(src, src + static_cast<std::size_t>(cw) * 3, crop.row(y));
  }
  return resize_bilinear(crop, img.width, img.height);
}

void rgb_to_hsv(float r, float g, float b, float& h, float& s, float& v) {
  float mx = std::max({r, g, b});
  float mn = std::min({r, g, b});
  v = mx;
  float d = mx - mn;
  s = mx <= 0.0f ? 0.0f : d / mx;
  if (d <= 0.0f) {
    h = 0.0f;
    return;
  }
  if (mx == r) {
    h = (g - b) / d;
  } else if (mx == g) {
    h = 2.0f + (b - r) / d;
  } else {
    h = 4.0f + (r - g) / d;
  }
  h /= 6.0f;
  if (h < 0.0f) h += 1.0f;
}

void hsv_to_rgb(float h, float s, float v, float& r, float& g, float& b) {
  if (s <= 0.0f) {
    r = g = b = v;
    return;
  }
  h = h - std::floor(h);
  float hh = h * 6.0f;
  int sector = std::min(5, static_cast<int>(hh));
  float f = hh - sector;
  float p = v * (1.0f - s);
  float q = v * (1.0f - s * f);
  float t = v * (1.0f - s * (1.0f - f));
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
}

void rgb_to_ycbcr(float r, float g, float b, float& y, float& cb, float& cr) {
  y = 0.299f * r + 0.587f * g + 0.114f * b;
  cb = 0.5f + (b - y) * 0.564f;
  cr = 0.5f + (r - y) * 0.713f;
}

void ycbcr_to_rgb(float y, float cb, float cr, float& r, float& g, float& b) {
  r = y + 1.403f * (cr - 0.5f);
  g = y - 0.344f * (cb - 0.5f) - 0.714f * (cr - 0.5f);
  b = y + 1.773f * (cb - 0.5f);
}

float luma601(float r, float g, float b) { return 0.299f * r + 0.587f * g + 0.114f * b; }

std::vector<float> plasma_fractal(int w, int h, double wibble_decay, RngStream& rng) {
  // Square power-of-two grid covering the image, generated diamond-square
  // with wraparound, then normalized to [0, 1] and cropped.
  int size = 1;
  while (size < std::max(w, h)) size <<= 1;
  std::vector<double> map(static_cast<std::size_t>(size) * size, 0.0);
  auto at = [&](int x, int y) -> double& {
    return map[static_cast<std::size_t>((y & (size - 1))) * size + (x & (size - 1))];
  };

  double wibble = 100.0;
  for (int step = size; step >= 2; step /= 2) {
    int half = step / 2;
    // Diamond: centers of squares get the average of the four corners.
    for (int y = 0; y < size; y += step) {
      for (int x = 0; x < size; x += step) {
        double avg = (at(x, y) + at(x + step, y) + at(x, y + step) + at(x + step, y + step)) / 4.0;
        at(x + half, y + half) = avg + rng.uniform(-wibble, wibble);
      }
    }
    // Square: edge midpoints get the average of their four diamond neighbors.
    for (int y = 0; y < size; y += step) {
      for (int x = 0; x < size; x += step) {
        double a = at(x + half, y + half);
        double b = at(x + half, y - half);
        double top = (at(x, y) + at(x + step, y) + a + b) / 4.0;
        at(x + half, y) = top + rng.uniform(-wibble, wibble);
        double c = at(x - half, y + half);
        double left = (at(x, y) + at(x, y + step) + a + c) / 4.0;
        at(x, y + half) = left + rng.uniform(-wibble, wibble);
      }
    }
    wibble /= wibble_decay;
  }

  double mn = map[0], mx = map[0];
  for (double v : map) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  double scale = mx > mn ? 1.0 / (mx - mn) : 0.0;
  std::vector<float> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out[static_cast<std::size_t>(y) * w + x] =
          static_cast<float>((map[static_cast<std::size_t>(y) * size + x] - mn) * scale);
    }
  }
  return out;
}

Image displace_bilinear(const Image& img, const std::vector<float>& dx,
                        const std::vector<float>& dy) {
  int w = img.width, h = img.height;
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      float sx = x + dx[i];
      float sy = y + dy[i];
      for (int c = 0; c < 3; ++c) dst[x * 3 + c] = sample_bilinear(img, sx, sy, c);
    }
  }
  return out;
}

Image warp_affine(const Image& img, const double m[6]) {
  int w = img.width, h = img.height;
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    float* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      float sx = static_cast<float>(m[0] * x + m[1] * y + m[2]);
      float sy = static_cast<float>(m[3] * x + m[4] * y + m[5]);
      for (int c = 0; c < 3; ++c) dst[x * 3 + c] = sample_bilinear(img, sx, sy, c);
    }
  }
  return out;
}

bool affine_from_points(const float src[3][2], const float dst[3][2], double m[6]) {
  // Solve [x y 1] * A = src for the three dst points, one output coordinate
  // at a time, by Cramer's rule on the shared 3x3 system.
  double mat[3][3] = {{dst[0][0], dst[0][1], 1.0},
                      {dst[1][0], dst[1][1], 1.0},
                      {dst[2][0], dst[2][1], 1.0}};
  auto det3 = [](const double t[3][3]) {
    return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
           t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
           t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
  };
  double det = det3(mat);
  if (std::abs(det) < 1e-9) return false;
  auto solve = [&](double b0, double b1, double b2, double& c0, double& c1, double& c2) {
    double rhs[3] = {b0, b1, b2};
    double* out[3] = {&c0, &c1, &c2};
    for (int col = 0; col < 3; ++col) {
      double t[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = (j == col) ? rhs[i] : mat[i][j];
      *out[col] = det3(t) / det;
    }
  };
  solve(src[0][0], src[1][0], src[2][0], m[0], m[1], m[2]);
  solve(src[0][1], src[1][1], src[2][1], m[3], m[4], m[5]);
  return true;
}

}  // namespace imdeg
