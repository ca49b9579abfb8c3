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

#ifndef IMDEG_IMAGE_HPP_
#define IMDEG_IMAGE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace imdeg {

// Interleaved RGB image with float samples in [0, 1], row-major storage.
// All pipeline stages exchange this one representation; codecs quantize to
// 8 bits only at file boundaries.
struct Image {
  int width = 0;
  int height = 0;
  static constexpr int kChannels = 3;
  std::vector<float> data;  // size = width * height * kChannels

  Image() = default;
  Image(int w, int h);

  bool same_shape(const Image& other) const {
    return width == other.width && height == other.height;
  }
  std::size_t sample_count() const { return data.size(); }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  float* row(int y) { return data.data() + static_cast<std::size_t>(y) * width * kChannels; }
  const float* row(int y) const {
    return data.data() + static_cast<std::size_t>(y) * width * kChannels;
  }
  float& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * kChannels + c];
  }
  float at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * kChannels + c];
  }
};

// Clamps every sample to [0, 1] in place.
void clamp01(Image& img);

// Quantizes one sample to the 8-bit code it would receive on save:
// round(clamp(v, 0, 1) * 255).
std::uint8_t quantize8(float v);

// Decodes a PNG or JPEG file (sniffed by signature, not extension) into the
// float representation: code / 255.  Grayscale is replicated to three
// channels; an alpha channel, if present, is dropped.
Image load_image(const std::string& path);

// Encodes as 8-bit RGB PNG.  Lossless for already-quantized data: a
// save/load round trip reproduces quantize8 of every sample exactly.
void save_png(const Image& img, const std::string& path);

// Encodes as baseline JPEG with the given quality in [1, 100].
void save_jpeg(const Image& img, const std::string& path, int quality);

// In-memory baseline JPEG encode/decode round trip at the given quality.
// This is the compression degradation primitive; it never touches the
// filesystem.  Returns an image with the same shape as the input.
Image jpeg_roundtrip(const Image& img, int quality);

// Version string of the JPEG codec this build is linked against, recorded in
// manifests because JPEG encoders are not bit-compatible across libraries.
std::string jpeg_codec_version();

// Version string of the PNG codec (PNG output itself is lossless; recorded
// for completeness).
std::string png_codec_version();

}  // namespace imdeg

#endif  // IMDEG_IMAGE_HPP_
