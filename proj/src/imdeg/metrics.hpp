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

#ifndef IMDEG_METRICS_HPP_
#define IMDEG_METRICS_HPP_

#include <map>
#include <string>

#include "imdeg/image.hpp"

namespace imdeg {

// Mean squared error over all samples of two equal-shaped images,
// accumulated in double precision.
double mse(const Image& a, const Image& b);

// Full-reference PSNR in dB on unit-range samples: 10 * log10(1 / MSE).
// Near-identical pairs (MSE <= 1e-5, i.e. below half an 8-bit code step
// squared) return exactly 50.0 so identity comparisons are stable instead of
// running off to infinity.  Symmetric in its arguments.
double psnr(const Image& a, const Image& b);

// Mean structural similarity with the reference parameterization: 11x11
// Gaussian window (sigma 1.5), stabilizers (0.01)^2 and (0.03)^2 for unit
// dynamic range, window centers restricted to fully valid positions, and the
// three channel means averaged.  Requires both dimensions >= 11.
// ssim(x, x) == 1.0 exactly.
double ssim(const Image& a, const Image& b);

// 1 - ssim: a distance rather than a similarity, so that larger means more
// degraded, like every other strength reading.
double one_minus_ssim(const Image& a, const Image& b);

// Identifies a strength metric: a built-in full-reference measure or an
// externally computed per-image score (e.g. a learned perceptual distance)
// merged from a score file.
struct MetricId {
  enum class Kind { kPsnr, kOneMinusSsim, kExternal };
  Kind kind = Kind::kPsnr;
  std::string external_name;  // set for kExternal

  std::string str() const;
  bool operator==(const MetricId& other) const {
    return kind == other.kind && external_name == other.external_name;
  }
};

// Parses "psnr", "1-ssim" (alias "one_minus_ssim", "one-minus-ssim"), or
// "external:<name>".  Throws kArgument for anything else.
MetricId parse_metric(const std::string& text);

// Orientation of a metric's strength axis: true when larger readings mean a
// stronger degradation (1-ssim, external distances), false when smaller
// readings do (psnr).
bool stronger_is_higher(const MetricId& metric);

// Full-reference strength of `degraded` against `reference` for a built-in
// metric.  External metrics have no image-pair evaluator here; requesting
// one throws kArgument (their values come from score files).
double strength(const MetricId& metric, const Image& reference, const Image& degraded);

// Externally computed per-image scores.
//
// File format (UTF-8, line oriented, '#' comments):
//   metric,<name>
//   <image_id>,<score>
//   ...
class ExternalScores {
 public:
  static ExternalScores from_file(const std::string& path);
  static ExternalScores from_text(const std::string& text);

  const std::string& metric_name() const { return metric_name_; }
  bool contains(const std::string& image_id) const { return scores_.count(image_id) > 0; }
  // Throws kNotFound when the id has no score.
  double lookup(const std::string& image_id) const;
  const std::map<std::string, double>& all() const { return scores_; }

  // Verifies this file provides the metric a caller asked for; throws
  // kMetricMismatch otherwise.
  void require_metric(const std::string& name) const;

 private:
  std::string metric_name_;
  std::map<std::string, double> scores_;
};

}  // namespace imdeg

#endif  // IMDEG_METRICS_HPP_
