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

#ifndef IMDEG_CALIBRATION_HPP_
#define IMDEG_CALIBRATION_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "imdeg/degradations.hpp"
#include "imdeg/image.hpp"
#include "imdeg/metrics.hpp"

namespace imdeg {

// A reference image with a stable identifier (usually the file stem).  The
// identifier keys random substreams and external score lookups.
struct CalibrationImage {
  std::string id;
  Image image;
};

// Mean full-reference strength of one operator at each native severity,
// averaged over a reference image set.
struct StrengthMeasurement {
  std::string backend;
  std::string term;
  MetricId metric;
  int n_images = 0;
  std::string image_set_digest;  // SHA-256 folding the per-image digests, in order
  std::uint64_t seed = 0;
  std::string schedule_hash;
  std::array<double, kSeverityLevels> native_strengths{};
};

// How the canonical step size is chosen from the native strengths.
enum class StepPolicy {
  kLastStep,  // delta = d5 - d4 (default: tracks the strongest regime)
  kMeanStep,  // delta = (d5 - d1) / 4
};

// A calibrated severity axis: the five native strengths re-labelled as
// canonical levels, optionally extended past the native range by fixed-step
// extrapolation.
struct CanonicalAxis {
  std::string backend;
  std::string term;
  MetricId metric;
  std::array<double, kSeverityLevels> native_strengths{};
  std::vector<double> levels;  // L_1..L_{5+m}; L_k == native_strengths[k-1] for k <= 5
  double step_delta = 0.0;
  StepPolicy policy = StepPolicy::kLastStep;
  int extrapolated = 0;  // m: number of levels past the native range
  // Provenance, carried verbatim from the measurement.
  int n_images = 0;
  std::string image_set_digest;
  std::uint64_t seed = 0;
  std::string schedule_hash;
};

// Result of projecting a canonical level back onto the native schedule.
struct NativeMapping {
  int native_level = 0;   // 1..5
  bool saturated = false; // canonical level lay past the native range
};

// Degrades every reference image at every native severity and averages the
// requested strength metric.  Work is spread over `jobs` workers; the result
// is bitwise identical at any worker count because each (image, level) pair
// draws from its own derived substream and the final mean is summed in a
// fixed order.  External metrics cannot be computed here (kArgument); use
// measure_strengths_external.
StrengthMeasurement measure_strengths(const DegradationEngine& engine,
                                      const std::vector<CalibrationImage>& images,
                                      const std::string& backend, const std::string& term,
                                      const MetricId& metric, std::uint64_t seed, int jobs);

// Builds the measurement from an externally computed score table instead of
// running a metric in-process.  Scores must be keyed
// "<image_id>_<backend>_<term>_s<level>" and present for every image at
// every level (kNotFound otherwise).  The image-set digest is derived from
// the identifiers, since pixel data is not available on this path.
StrengthMeasurement measure_strengths_external(const std::vector<std::string>& image_ids,
                                               const std::string& backend,
                                               const std::string& term,
                                               const ExternalScores& scores,
                                               const std::string& schedule_hash);

// Turns a measurement into a canonical axis with m_max extrapolated levels.
// Extrapolation (m_max > 0) requires the axis to end moving in the metric's
// "stronger" direction, i.e. delta > 0 for higher-is-stronger metrics and
// delta < 0 for psnr; otherwise the axis is degenerate (kDegenerateAxis).
CanonicalAxis derive_canonical_axis(const StrengthMeasurement& measurement, int m_max,
                                    StepPolicy policy = StepPolicy::kLastStep);

// Nearest-native projection of canonical level k (1-based).  For k within
// the native range the native level with the closest strength wins, ties
// going to the weaker level; past the native range the strongest native
// level is returned with the saturation flag set.  k outside [1,
// levels.size()] is kArgument.
NativeMapping map_canonical_to_native(const CanonicalAxis& axis, int canonical_level);

// JSON round-trip for calibration documents.
std::string calibration_to_json(const CanonicalAxis& axis);
CanonicalAxis calibration_from_json(const std::string& text);
void save_calibration(const CanonicalAxis& axis, const std::string& path);
CanonicalAxis load_calibration(const std::string& path);

// Canonical file name for an axis document: <backend>_<term>_<metric slug>.json.
std::string calibration_filename(const std::string& backend, const std::string& term,
                                 const MetricId& metric);

// Stable content digest of a reference image (dimensions + pixel bytes).
std::string image_digest(const Image& image);

}  // namespace imdeg

#endif  // IMDEG_CALIBRATION_HPP_
