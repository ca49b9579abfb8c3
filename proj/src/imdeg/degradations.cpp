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

#include "imdeg/degradations.hpp"

#include <cstdlib>
#include <utility>

#include "imdeg/error.hpp"
#include "imdeg/ops_internal.hpp"

namespace imdeg {
namespace {

using ops::OpFn;

// Availability gates.  An entry with a gate is still listed (so operator
// counts match the published sets) but refuses to run unless the gate's
// requirement is met by the environment.
enum class Gate {
  kNone,
  kFrostAssets,  // needs texture files under <assets>/frost
  kJpeg2000,     // needs a JPEG 2000 codec, which this build does not link
};

struct OpEntry {
  const char* backend;
  const char* term;
  OperatorTier tier;
  bool stochastic;
  MonotoneDesignation monotone;
  OpFn fn;
  Gate gate;
};

constexpr OperatorTier kCore = OperatorTier::kCore;
constexpr OperatorTier kExt = OperatorTier::kExtended;
constexpr MonotoneDesignation kStrict = MonotoneDesignation::kStrict;
constexpr MonotoneDesignation kLoose = MonotoneDesignation::kNonStrict;
constexpr MonotoneDesignation kFree = MonotoneDesignation::kNone;

// The full executable operator set, in the publication order of each
// backend.  Rows that exist only as taxonomy entries (video/temporal
// failures with no still-image realization) are not listed here.
const OpEntry kRegistry[] = {
    // hendrycks: 15 core + 4 validation-set operators.
    {"hendrycks", "gaussian_noise", kCore, true, kStrict, ops::hendrycks_gaussian_noise, Gate::kNone},
    {"hendrycks", "shot_noise", kCore, true, kStrict, ops::hendrycks_shot_noise, Gate::kNone},
    {"hendrycks", "impulse_noise", kCore, true, kStrict, ops::hendrycks_impulse_noise, Gate::kNone},
    {"hendrycks", "defocus_blur", kCore, false, kStrict, ops::hendrycks_defocus_blur, Gate::kNone},
    {"hendrycks", "glass_blur", kExt, true, kFree, ops::hendrycks_glass_blur, Gate::kNone},
    {"hendrycks", "motion_blur", kCore, true, kStrict, ops::hendrycks_motion_blur, Gate::kNone},
    {"hendrycks", "zoom_blur", kCore, false, kStrict, ops::hendrycks_zoom_blur, Gate::kNone},
    {"hendrycks", "fog", kCore, true, kLoose, ops::hendrycks_fog, Gate::kNone},
    {"hendrycks", "snow", kExt, true, kFree, ops::hendrycks_snow, Gate::kNone},
    {"hendrycks", "frost", kExt, true, kFree, ops::hendrycks_frost, Gate::kFrostAssets},
    {"hendrycks", "brightness", kCore, false, kLoose, ops::hendrycks_brightness, Gate::kNone},
    {"hendrycks", "contrast", kCore, false, kStrict, ops::hendrycks_contrast, Gate::kNone},
    {"hendrycks", "jpeg", kCore, false, kLoose, ops::hendrycks_jpeg, Gate::kNone},
    {"hendrycks", "pixelate", kCore, false, kLoose, ops::hendrycks_pixelate, Gate::kNone},
    {"hendrycks", "elastic_transform", kCore, true, kFree, ops::hendrycks_elastic_transform, Gate::kNone},
    {"hendrycks", "speckle_noise", kCore, true, kStrict, ops::hendrycks_speckle_noise, Gate::kNone},
    {"hendrycks", "gaussian_blur", kCore, false, kStrict, ops::hendrycks_gaussian_blur, Gate::kNone},
    {"hendrycks", "spatter", kExt, true, kFree, ops::hendrycks_spatter, Gate::kNone},
    {"hendrycks", "saturate", kCore, false, kFree, ops::hendrycks_saturate, Gate::kNone},
    // arniqa: perceptual-quality distortion set.
    {"arniqa", "gaublur", kCore, false, kStrict, ops::arniqa_gaublur, Gate::kNone},
    {"arniqa", "lensblur", kExt, false, kStrict, ops::arniqa_lensblur, Gate::kNone},
    {"arniqa", "motionblur", kCore, true, kStrict, ops::arniqa_motionblur, Gate::kNone},
    {"arniqa", "whitenoise", kCore, true, kStrict, ops::arniqa_whitenoise, Gate::kNone},
    {"arniqa", "whitenoisecc", kCore, true, kStrict, ops::arniqa_whitenoisecc, Gate::kNone},
    {"arniqa", "impulsenoise", kCore, true, kStrict, ops::arniqa_impulsenoise, Gate::kNone},
    {"arniqa", "multnoise", kCore, true, kStrict, ops::arniqa_multnoise, Gate::kNone},
    {"arniqa", "brighten", kCore, false, kStrict, ops::arniqa_brighten, Gate::kNone},
    {"arniqa", "darken", kCore, false, kStrict, ops::arniqa_darken, Gate::kNone},
    {"arniqa", "meanshift", kCore, false, kFree, ops::arniqa_meanshift, Gate::kNone},
    {"arniqa", "colordiff", kExt, false, kLoose, ops::arniqa_colordiff, Gate::kNone},
    {"arniqa", "colorshift", kCore, true, kLoose, ops::arniqa_colorshift, Gate::kNone},
    {"arniqa", "colorsat1", kCore, false, kLoose, ops::arniqa_colorsat1, Gate::kNone},
    {"arniqa", "colorsat2", kCore, false, kLoose, ops::arniqa_colorsat2, Gate::kNone},
    {"arniqa", "jpeg", kCore, false, kLoose, ops::arniqa_jpeg, Gate::kNone},
    {"arniqa", "jpeg2000", kExt, false, kFree, ops::arniqa_jpeg2000, Gate::kJpeg2000},
    {"arniqa", "jitter", kCore, true, kFree, ops::arniqa_jitter, Gate::kNone},
    {"arniqa", "noneccpatch", kExt, true, kLoose, ops::arniqa_noneccpatch, Gate::kNone},
    {"arniqa", "pixelate", kCore, false, kLoose, ops::arniqa_pixelate, Gate::kNone},
    {"arniqa", "quantization", kCore, false, kLoose, ops::arniqa_quantization, Gate::kNone},
    {"arniqa", "colorblock", kCore, true, kLoose, ops::arniqa_colorblock, Gate::kNone},
    {"arniqa", "highsharpen", kCore, false, kLoose, ops::arniqa_highsharpen, Gate::kNone},
    {"arniqa", "lincontrchange", kCore, false, kFree, ops::arniqa_lincontrchange, Gate::kNone},
    {"arniqa", "nonlincontrchange", kCore, false, kLoose, ops::arniqa_nonlincontrchange, Gate::kNone},
    // liu: camera-damage set.  synchronization_exceptions is taxonomy-only
    // (no still-image realization), so it does not appear here.
    {"liu", "fog", kCore, true, kLoose, ops::liu_fog, Gate::kNone},
    {"liu", "lens_obstruction", kCore, true, kLoose, ops::liu_lens_obstruction, Gate::kNone},
    {"liu", "focus_motor_damage", kCore, false, kStrict, ops::liu_focus_motor_damage, Gate::kNone},
    {"liu", "ccd_sensor_damage", kCore, true, kStrict, ops::liu_ccd_sensor_damage, Gate::kNone},
    {"liu", "cmos_sensor_damage", kCore, true, kStrict, ops::liu_cmos_sensor_damage, Gate::kNone},
    {"liu", "black_level_insufficient", kCore, false, kLoose, ops::liu_black_level_insufficient, Gate::kNone},
    {"liu", "black_level_excessive", kCore, false, kLoose, ops::liu_black_level_excessive, Gate::kNone},
    {"liu", "lens_shading_damage", kCore, false, kLoose, ops::liu_lens_shading_damage, Gate::kNone},
    {"liu", "awb_damage", kCore, false, kLoose, ops::liu_awb_damage, Gate::kNone},
    {"liu", "bad_pixel_correction", kCore, true, kStrict, ops::liu_bad_pixel_correction, Gate::kNone},
    {"liu", "cfa_interpolation_damage", kExt, false, kLoose, ops::liu_cfa_interpolation_damage, Gate::kNone},
    {"liu", "gamma_damage", kCore, false, kFree, ops::liu_gamma_damage, Gate::kNone},
    {"liu", "color_space_conversion_damage", kCore, false, kLoose, ops::liu_color_space_conversion_damage, Gate::kNone},
    {"liu", "sensor_broken", kCore, false, kFree, ops::liu_sensor_broken, Gate::kNone},
    {"liu", "memory_exceptions", kCore, true, kLoose, ops::liu_memory_exceptions, Gate::kNone},
    {"liu", "transfer_harness_exceptions", kCore, true, kLoose, ops::liu_transfer_harness_exceptions, Gate::kNone},
};

constexpr std::size_t kRegistrySize = sizeof(kRegistry) / sizeof(kRegistry[0]);

std::string env_assets_dir() {
  const char* env = std::getenv("IMDEG_ASSETS");
  return env != nullptr ? std::string(env) : std::string();
}

}  // namespace

DegradationEngine::DegradationEngine()
    : DegradationEngine(Taxonomy::embedded(), ScheduleSet::embedded(), env_assets_dir()) {}

DegradationEngine::DegradationEngine(Taxonomy taxonomy, ScheduleSet schedules,
                                     std::string assets_dir)
    : taxonomy_(std::move(taxonomy)),
      schedules_(std::move(schedules)),
      assets_dir_(std::move(assets_dir)) {
  descriptors_.reserve(kRegistrySize);
  for (const OpEntry& entry : kRegistry) {
    OperatorDescriptor d;
    d.backend = entry.backend;
    d.term = entry.term;
    d.tier = entry.tier;
    d.stochastic = entry.stochastic;
    d.monotone = entry.monotone;
    switch (entry.gate) {
      case Gate::kNone:
        d.available = true;
        break;
      case Gate::kFrostAssets:
        d.available = !ops::frost_asset_files(assets_dir_).empty();
        if (!d.available) {
          d.availability_note =
              "requires asset textures (set IMDEG_ASSETS to a directory with frost/*.png)";
        }
        break;
      case Gate::kJpeg2000:
        d.available = false;
        d.availability_note = "no JPEG 2000 codec is linked into this build";
        break;
    }
    descriptors_.push_back(std::move(d));
  }
}

std::size_t DegradationEngine::find_index(const std::string& backend,
                                          const std::string& term) const {
  for (std::size_t i = 0; i < kRegistrySize; ++i) {
    if (backend == kRegistry[i].backend && term == kRegistry[i].term) return i;
  }
  // Fall back to normalized matching so "Gaussian-Noise" or "gaussian noise"
  // resolve to the canonical key.
  std::string nb = normalize_key(backend);
  std::string nt = normalize_key(term);
  for (std::size_t i = 0; i < kRegistrySize; ++i) {
    if (nb == normalize_key(kRegistry[i].backend) && nt == normalize_key(kRegistry[i].term)) {
      return i;
    }
  }
  throw_error(ErrorCode::kNotFound, "unknown operator: " + backend + "/" + term);
}

Image DegradationEngine::apply(const Image& img, const DegradationSpec& spec) const {
  return apply_chain(img, {spec});
}

Image DegradationEngine::apply_chain(const Image& img,
                                     const std::vector<DegradationSpec>& chain) const {
  if (img.width <= 0 || img.height <= 0 || img.data.empty()) {
    throw_error(ErrorCode::kShape, "cannot degrade an empty image");
  }
  Image current = img;
  for (std::size_t pos = 0; pos < chain.size(); ++pos) {
    const DegradationSpec& spec = chain[pos];
    std::size_t idx = find_index(spec.backend, spec.term);
    const OpEntry& entry = kRegistry[idx];
    const OperatorDescriptor& desc = descriptors_[idx];
    if (spec.severity < 1 || spec.severity > kSeverityLevels) {
      throw_error(ErrorCode::kArgument, std::string("severity out of range for ") +
                                            entry.backend + "/" + entry.term + ": " +
                                            std::to_string(spec.severity));
    }
    if (!desc.available) {
      throw_error(ErrorCode::kUnavailableFeature, std::string(entry.backend) + "/" + entry.term +
                                                      " is unavailable: " +
                                                      desc.availability_note);
    }
    const OperatorSchedule& schedule = schedules_.lookup(entry.backend, entry.term);
    const std::vector<double>& params = schedule.tuple(spec.severity);
    // Each chain element gets its own substream so repeating an operator in
    // a chain does not reuse its random draws.
    RngStream rng(spec.seed, static_cast<std::uint64_t>(pos));
    ops::OpContext ctx{params, rng, assets_dir_};
    Image next = entry.fn(current, ctx);
    if (!next.same_shape(current)) {
      throw_error(ErrorCode::kInternal, std::string(entry.backend) + "/" + entry.term +
                                            " changed the image shape");
    }
    clamp01(next);
    current = std::move(next);
  }
  return current;
}

std::vector<OperatorDescriptor> DegradationEngine::list_operators(
    const std::string& backend) const {
  std::string nb = normalize_key(backend);
  std::vector<OperatorDescriptor> out;
  for (const OperatorDescriptor& d : descriptors_) {
    if (normalize_key(d.backend) == nb) out.push_back(d);
  }
  if (out.empty()) throw_error(ErrorCode::kNotFound, "unknown backend: " + backend);
  return out;
}

std::vector<OperatorDescriptor> DegradationEngine::list_all_operators() const {
  return descriptors_;
}

const OperatorDescriptor& DegradationEngine::descriptor(const std::string& backend,
                                                        const std::string& term) const {
  return descriptors_[find_index(backend, term)];
}

std::vector<std::pair<std::string, std::string>> DegradationEngine::operator_keys() const {
  std::vector<std::pair<std::string, std::string>> keys;
  keys.reserve(kRegistrySize);
  for (const OpEntry& entry : kRegistry) keys.emplace_back(entry.backend, entry.term);
  return keys;
}

}  // namespace imdeg
