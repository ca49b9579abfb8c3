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

#ifndef IMDEG_OPS_INTERNAL_HPP_
#define IMDEG_OPS_INTERNAL_HPP_

#include <string>
#include <vector>

#include "imdeg/image.hpp"
#include "imdeg/rng.hpp"

namespace imdeg {
namespace ops {

// Execution context handed to an operator: the schedule tuple for the
// requested severity, the (already stream-keyed) random stream, and the
// asset directory for texture-dependent operators.
struct OpContext {
  const std::vector<double>& params;
  RngStream& rng;
  const std::string& assets_dir;
};

using OpFn = Image (*)(const Image&, const OpContext&);

// ops_noise.cpp
Image hendrycks_gaussian_noise(const Image&, const OpContext&);
Image hendrycks_shot_noise(const Image&, const OpContext&);
Image hendrycks_impulse_noise(const Image&, const OpContext&);
Image hendrycks_speckle_noise(const Image&, const OpContext&);
Image arniqa_whitenoise(const Image&, const OpContext&);
Image arniqa_whitenoisecc(const Image&, const OpContext&);
Image arniqa_impulsenoise(const Image&, const OpContext&);
Image arniqa_multnoise(const Image&, const OpContext&);
Image liu_ccd_sensor_damage(const Image&, const OpContext&);
Image liu_cmos_sensor_damage(const Image&, const OpContext&);
Image liu_bad_pixel_correction(const Image&, const OpContext&);

// ops_blur.cpp
Image hendrycks_gaussian_blur(const Image&, const OpContext&);
Image hendrycks_defocus_blur(const Image&, const OpContext&);
Image hendrycks_motion_blur(const Image&, const OpContext&);
Image hendrycks_zoom_blur(const Image&, const OpContext&);
Image hendrycks_glass_blur(const Image&, const OpContext&);
Image arniqa_gaublur(const Image&, const OpContext&);
Image arniqa_lensblur(const Image&, const OpContext&);
Image arniqa_motionblur(const Image&, const OpContext&);
Image liu_focus_motor_damage(const Image&, const OpContext&);

// ops_color.cpp
Image hendrycks_brightness(const Image&, const OpContext&);
Image hendrycks_contrast(const Image&, const OpContext&);
Image hendrycks_saturate(const Image&, const OpContext&);
Image arniqa_brighten(const Image&, const OpContext&);
Image arniqa_darken(const Image&, const OpContext&);
Image arniqa_meanshift(const Image&, const OpContext&);
Image arniqa_colordiff(const Image&, const OpContext&);
Image arniqa_colorshift(const Image&, const OpContext&);
Image arniqa_colorsat1(const Image&, const OpContext&);
Image arniqa_colorsat2(const Image&, const OpContext&);
Image arniqa_highsharpen(const Image&, const OpContext&);
Image arniqa_lincontrchange(const Image&, const OpContext&);
Image arniqa_nonlincontrchange(const Image&, const OpContext&);
Image liu_black_level_insufficient(const Image&, const OpContext&);
Image liu_black_level_excessive(const Image&, const OpContext&);
Image liu_lens_shading_damage(const Image&, const OpContext&);
Image liu_awb_damage(const Image&, const OpContext&);
Image liu_gamma_damage(const Image&, const OpContext&);
Image liu_color_space_conversion_damage(const Image&, const OpContext&);

// ops_spatial.cpp
Image hendrycks_pixelate(const Image&, const OpContext&);
Image hendrycks_jpeg(const Image&, const OpContext&);
Image hendrycks_elastic_transform(const Image&, const OpContext&);
Image arniqa_pixelate(const Image&, const OpContext&);
Image arniqa_jpeg(const Image&, const OpContext&);
Image arniqa_jpeg2000(const Image&, const OpContext&);
Image arniqa_jitter(const Image&, const OpContext&);
Image arniqa_noneccpatch(const Image&, const OpContext&);
Image arniqa_quantization(const Image&, const OpContext&);
Image arniqa_colorblock(const Image&, const OpContext&);
Image liu_cfa_interpolation_damage(const Image&, const OpContext&);

// ops_weather.cpp
Image hendrycks_fog(const Image&, const OpContext&);
Image hendrycks_frost(const Image&, const OpContext&);
Image hendrycks_snow(const Image&, const OpContext&);
Image hendrycks_spatter(const Image&, const OpContext&);
Image liu_fog(const Image&, const OpContext&);
Image liu_lens_obstruction(const Image&, const OpContext&);

// ops_system.cpp
Image liu_sensor_broken(const Image&, const OpContext&);
Image liu_memory_exceptions(const Image&, const OpContext&);
Image liu_transfer_harness_exceptions(const Image&, const OpContext&);

// Shared by the frost operator and its availability probe: the frost
// texture files found under <assets_dir>/frost, sorted by name.
std::vector<std::string> frost_asset_files(const std::string& assets_dir);

}  // namespace ops
}  // namespace imdeg

#endif  // IMDEG_OPS_INTERNAL_HPP_
