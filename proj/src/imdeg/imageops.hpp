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

#ifndef IMDEG_IMAGEOPS_HPP_
#define IMDEG_IMAGEOPS_HPP_

#include <vector>

#include "imdeg/image.hpp"
#include "imdeg/rng.hpp"

namespace imdeg {

// Shared primitives for the degradation operators.  Borders are handled in
// mirror-without-edge-repeat fashion throughout, matching the reference
// implementations the operator schedules were pinned against.

// Mirrored index into [0, n).
int reflect_index(int i, int n);

// Nearest-neighbor sample with mirrored border.
float sample_reflect(const Image& img, int x, int y, int c);

// Bilinear sample at fractional coordinates with mirrored border.
float sample_bilinear(const Image& img, float x, float y, int c);

// Normalized 1-D Gaussian taps for the given sigma.  radius < 0 selects
// round(4 * sigma) (at least 1), the truncation the schedules assume.
std::vector<float> gaussian_taps(double sigma, int radius = -1);

// Separable convolution with the same 1-D kernel horizontally and
// vertically; output has the input's shape.
Image separable_convolve(const Image& img, const std::vector<float>& taps);

// Gaussian blur; sigma <= 0 returns the input unchanged.
Image gaussian_blur_image(const Image& img, double sigma);

// Single-channel plane helpers (used for masks and displacement fields).
std::vector<float> gaussian_blur_plane(const std::vector<float>& plane, int w, int h, double sigma);

// A sparse 2-D kernel tap.
struct Tap {
  int dx;
  int dy;
  float weight;
};

// Dense convolution by a sparse tap list, mirrored border, normalized by the
// caller (taps should sum to 1).
Image tap_convolve(const Image& img, const std::vector<Tap>& taps);

// Uniform disk kernel of the given radius, smoothed by a small Gaussian to
// suppress aliasing, as used for defocus/lens blur.
std::vector<Tap> disk_taps(double radius, double alias_sigma);

// One-sided motion streak: `length` unit-spaced taps along `angle_deg`,
// Gaussian-weighted (heaviest at the start), subpixel positions distributed
// bilinearly onto integer offsets.
std::vector<Tap> motion_taps(int length, double sigma, double angle_deg);

// Resampling.
Image resize_bilinear(const Image& img, int out_w, int out_h);
Image resize_nearest(const Image& img, int out_w, int out_h);
// Area-averaging downscale (falls back to bilinear when upscaling).
Image resize_box(const Image& img, int out_w, int out_h);

// Center-crop by 1/factor and scale back to the original size (factor >= 1).
Image zoom_center(const Image& img, double factor);

// Color space conversions.  All components in [0, 1]; hue in [0, 1).
void rgb_to_hsv(float r, float g, float b, float& h, float& s, float& v);
void hsv_to_rgb(float h, float s, float v, float& r, float& g, float& b);
// Full-range BT.601; chroma centered at 0.5.
void rgb_to_ycbcr(float r, float g, float b, float& y, float& cb, float& cr);
void ycbcr_to_rgb(float y, float cb, float cr, float& r, float& g, float& b);
float luma601(float r, float g, float b);

// Cloud-like fractal heightfield in [0, 1] (diamond-square with wrapping,
// noise amplitude divided by wibble_decay per octave).  Used by the fog and
// weather operators.
std::vector<float> plasma_fractal(int w, int h, double wibble_decay, RngStream& rng);

// Warps img so out(x, y) = img(x + dx(x,y), y + dy(x,y)), bilinear with
// mirrored border.  dx/dy are w*h planes.
Image displace_bilinear(const Image& img, const std::vector<float>& dx,
                        const std::vector<float>& dy);

// 2x3 affine transform mapping output pixel coordinates to source
// coordinates: sx = m[0]*x + m[1]*y + m[2], sy = m[3]*x + m[4]*y + m[5].
Image warp_affine(const Image& img, const double m[6]);

// Solves the 2x3 affine that maps dst[i] -> src[i] for three point pairs.
// Returns false if the points are collinear.
bool affine_from_points(const float src[3][2], const float dst[3][2], double m[6]);

}  // namespace imdeg

#endif  // IMDEG_IMAGEOPS_HPP_
