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

#include "imdeg/image.hpp"

#include <algorithm>
#include <cmath>

#include "imdeg/error.hpp"

namespace imdeg {

Image::Image(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) {
    throw_error(ErrorCode::kShape, "image dimensions must be positive, got " +
                                       std::to_string(w) + "x" + std::to_string(h));
  }
  data.assign(static_cast<std::size_t>(w) * h * kChannels, 0.0f);
}

void clamp01(Image& img) {
  for (float& v : img.data) v = std::min(1.0f, std::max(0.0f, v));
}

std::uint8_t quantize8(float v) {
  float c = std::min(1.0f, std::max(0.0f, v));
  return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

}  // namespace imdeg
