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

#include "imdeg/calibration.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"
#include "imdeg/rng.hpp"
#include "support/images.hpp"
#include "support/tempdir.hpp"

namespace {

using imdeg::CalibrationImage;
using imdeg::CanonicalAxis;
using imdeg::DegradationEngine;
using imdeg::ErrorCode;
using imdeg::MetricId;
using imdeg::StepPolicy;
using imdeg::StrengthMeasurement;

const DegradationEngine& engine() {
  static const DegradationEngine kEngine;
  return kEngine;
}

StrengthMeasurement measurement_with(const std::array<double, 5>& strengths,
                                     const std::string& metric) {
  StrengthMeasurement m;
  m.backend = "arniqa";
  m.term = "gaublur";
  m.metric = imdeg::parse_metric(metric);
  m.n_images = 4;
  m.image_set_digest = "deadbeef";
  m.seed = 42;
  m.schedule_hash = "cafe";
  m.native_strengths = strengths;
  return m;
}

TEST_CASE("fixed-step extrapolation extends a dissimilarity axis, last-step policy") {
  // Hand-checked row: d = (0.000, 0.009, 0.081, 0.202, 0.393).
  // last-step delta = 0.393 - 0.202 = 0.191
  // L6 = 0.393 + 0.191 = 0.584, L7 = 0.393 + 2*0.191 = 0.775.
  auto m = measurement_with({0.000, 0.009, 0.081, 0.202, 0.393}, "1-ssim");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 2, StepPolicy::kLastStep);

  REQUIRE(axis.levels.size() == 7);
  for (int k = 1; k <= 5; ++k) {
    CHECK(axis.levels[k - 1] == m.native_strengths[k - 1]);  // L_k = d_k verbatim
  }
  CHECK(std::abs(axis.step_delta - 0.191) < 1e-12);
  CHECK(std::abs(axis.levels[5] - 0.584) < 1e-12);
  CHECK(std::abs(axis.levels[6] - 0.775) < 1e-12);
  CHECK(axis.extrapolated == 2);
  CHECK(axis.policy == StepPolicy::kLastStep);
  // Provenance rides along.
  CHECK(axis.n_images == 4);
  CHECK(axis.seed == 42);
  CHECK(axis.image_set_digest == "deadbeef");
  CHECK(axis.schedule_hash == "cafe");
}

TEST_CASE("mean-step policy spreads the whole native span") {
  // mean-step delta = (0.393 - 0.000) / 4 = 0.09825
  // L6 = 0.393 + 0.09825 = 0.49125, L7 = 0.5895.
  auto m = measurement_with({0.000, 0.009, 0.081, 0.202, 0.393}, "1-ssim");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 2, StepPolicy::kMeanStep);
  CHECK(std::abs(axis.step_delta - 0.09825) < 1e-12);
  CHECK(std::abs(axis.levels[5] - 0.49125) < 1e-12);
  CHECK(std::abs(axis.levels[6] - 0.58950) < 1e-12);
}

TEST_CASE("psnr axes extrapolate downward") {
  // On psnr, stronger = lower, so the step must be negative.
  auto m = measurement_with({35.0, 30.0, 26.0, 23.0, 21.0}, "psnr");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 2, StepPolicy::kLastStep);
  CHECK(axis.step_delta == doctest::Approx(-2.0));
  CHECK(axis.levels[5] == doctest::Approx(19.0));
  CHECK(axis.levels[6] == doctest::Approx(17.0));
}

TEST_CASE("an axis ending in the wrong direction refuses to extrapolate") {
  // Dissimilarity falling at the top: degenerate for extension.
  auto wrong_dissim = measurement_with({0.1, 0.2, 0.3, 0.31, 0.30}, "1-ssim");
  try {
    imdeg::derive_canonical_axis(wrong_dissim, 1, StepPolicy::kLastStep);
    CHECK(false);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateAxis);
  }
  // psnr rising at the top: also degenerate.
  auto wrong_psnr = measurement_with({35.0, 30.0, 26.0, 23.0, 24.0}, "psnr");
  CHECK_THROWS_AS(imdeg::derive_canonical_axis(wrong_psnr, 1, StepPolicy::kLastStep),
                  imdeg::Error);
  // Without extrapolation the same readings are representable.
  CanonicalAxis plain = imdeg::derive_canonical_axis(wrong_dissim, 0, StepPolicy::kLastStep);
  CHECK(plain.levels.size() == 5);
  CHECK(imdeg::derive_canonical_axis(wrong_psnr, 0).levels.size() == 5);
}

TEST_CASE("negative extrapolation counts are rejected") {
  auto m = measurement_with({0.0, 0.1, 0.2, 0.3, 0.4}, "1-ssim");
  CHECK_THROWS_AS(imdeg::derive_canonical_axis(m, -1), imdeg::Error);
}

TEST_CASE("canonical levels project to the nearest native strength") {
  CanonicalAxis axis;
  axis.metric = imdeg::parse_metric("1-ssim");
  axis.native_strengths = {0.05, 0.18, 0.33, 0.41, 0.52};
  axis.levels = {0.20, 0.05, 0.50, 0.36, 0.60};

  CHECK(imdeg::map_canonical_to_native(axis, 1).native_level == 2);  // 0.20 -> d2 = 0.18
  CHECK(imdeg::map_canonical_to_native(axis, 2).native_level == 1);  // 0.05 exact
  CHECK(imdeg::map_canonical_to_native(axis, 3).native_level == 5);  // 0.50 -> d5 = 0.52
  CHECK(imdeg::map_canonical_to_native(axis, 4).native_level == 3);  // 0.36 -> d3 (0.03 < 0.05)
  CHECK(!imdeg::map_canonical_to_native(axis, 1).saturated);
}

TEST_CASE("equidistant projections keep the weaker native level") {
  CanonicalAxis axis;
  axis.metric = imdeg::parse_metric("1-ssim");
  axis.native_strengths = {0.1, 0.2, 0.4, 0.6, 0.8};
  axis.levels = {0.15, 0.3, 0.5, 0.7, 0.9};
  // 0.15 is exactly between d1 = 0.1 and d2 = 0.2.
  CHECK(imdeg::map_canonical_to_native(axis, 1).native_level == 1);
  // 0.5 is exactly between d3 = 0.4 and d4 = 0.6.
  CHECK(imdeg::map_canonical_to_native(axis, 3).native_level == 3);
  // Duplicate native strengths tie toward the lower level too.
  CanonicalAxis dup = axis;
  dup.native_strengths = {0.1, 0.3, 0.3, 0.6, 0.8};
  dup.levels = {0.3, 0.3, 0.3, 0.3, 0.3};
  CHECK(imdeg::map_canonical_to_native(dup, 1).native_level == 2);
}

TEST_CASE("levels past the native range saturate at the strongest native level") {
  auto m = measurement_with({0.0, 0.1, 0.2, 0.3, 0.4}, "1-ssim");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 3, StepPolicy::kLastStep);
  REQUIRE(axis.levels.size() == 8);
  for (int k = 6; k <= 8; ++k) {
    auto mapping = imdeg::map_canonical_to_native(axis, k);
    CHECK(mapping.native_level == 5);
    CHECK(mapping.saturated);
  }
  // In-range levels map to themselves and are not saturated.
  for (int k = 1; k <= 5; ++k) {
    auto mapping = imdeg::map_canonical_to_native(axis, k);
    CHECK(mapping.native_level == k);
    CHECK(!mapping.saturated);
  }
}

TEST_CASE("out-of-axis canonical levels are arguments errors") {
  auto m = measurement_with({0.0, 0.1, 0.2, 0.3, 0.4}, "1-ssim");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 1);
  CHECK_THROWS_AS(imdeg::map_canonical_to_native(axis, 0), imdeg::Error);
  CHECK_THROWS_AS(imdeg::map_canonical_to_native(axis, 7), imdeg::Error);
  try {
    imdeg::map_canonical_to_native(axis, 7);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kArgument);
  }
}

TEST_CASE("measured strengths aggregate the per-image metric readings") {
  // With one image the mean is the reading itself; replicate the engine call
  // with the cell's derived stream and compare.
  imdeg::Image img = testsupport::structured_image(48, 48, 31);
  std::vector<CalibrationImage> set;
  set.push_back({"img_a", img});

  auto metric = imdeg::parse_metric("psnr");
  auto m = imdeg::measure_strengths(engine(), set, "hendrycks", "gaussian_noise", metric, 7, 1);
  CHECK(m.n_images == 1);
  CHECK(m.backend == "hendrycks");
  CHECK(m.term == "gaussian_noise");
  CHECK(m.schedule_hash == engine().schedules().content_hash());

  for (int level = 1; level <= 5; ++level) {
    std::uint64_t h = imdeg::fnv1a64(std::string("img_a"));
    h = imdeg::derive_stream_id_u64(h, 7);
    std::uint64_t cell = imdeg::derive_stream_id_u64(h, static_cast<std::uint64_t>(level));
    imdeg::Image degraded =
        engine().apply(img, {"hendrycks", "gaussian_noise", level, cell});
    CHECK(m.native_strengths[level - 1] == imdeg::psnr(img, degraded));
  }
}

TEST_CASE("strength measurement is invariant to the worker count") {
  std::vector<CalibrationImage> set;
  for (int i = 0; i < 6; ++i) {
    set.push_back({"img_" + std::to_string(i), testsupport::structured_image(40, 40, 100 + i)});
  }
  auto metric = imdeg::parse_metric("1-ssim");
  auto serial = imdeg::measure_strengths(engine(), set, "arniqa", "gaublur", metric, 11, 1);
  auto parallel = imdeg::measure_strengths(engine(), set, "arniqa", "gaublur", metric, 11, 4);
  for (int level = 0; level < 5; ++level) {
    CHECK(serial.native_strengths[level] == parallel.native_strengths[level]);
  }
  CHECK(serial.image_set_digest == parallel.image_set_digest);
}

TEST_CASE("measurement rejects empty sets and external metrics") {
  std::vector<CalibrationImage> empty;
  auto metric = imdeg::parse_metric("psnr");
  CHECK_THROWS_AS(
      imdeg::measure_strengths(engine(), empty, "hendrycks", "gaussian_noise", metric, 1, 1),
      imdeg::Error);

  std::vector<CalibrationImage> one;
  one.push_back({"a", testsupport::structured_image(24, 24, 1)});
  try {
    imdeg::measure_strengths(engine(), one, "hendrycks", "gaussian_noise",
                             imdeg::parse_metric("external:lpips"), 1, 1);
    CHECK(false);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kArgument);
  }
}

TEST_CASE("external score tables turn into measurements") {
  std::string text = "metric,lpips\n";
  // Two images, five levels each; values chosen so means are easy.
  for (int level = 1; level <= 5; ++level) {
    text += "a_hendrycks_jpeg_s" + std::to_string(level) + "," +
            std::to_string(0.1 * level) + "\n";
    text += "b_hendrycks_jpeg_s" + std::to_string(level) + "," +
            std::to_string(0.3 * level) + "\n";
  }
  auto scores = imdeg::ExternalScores::from_text(text);
  auto m = imdeg::measure_strengths_external({"a", "b"}, "hendrycks", "jpeg", scores, "hash");
  CHECK(m.metric.kind == MetricId::Kind::kExternal);
  CHECK(m.metric.external_name == "lpips");
  CHECK(m.n_images == 2);
  for (int level = 1; level <= 5; ++level) {
    CHECK(m.native_strengths[level - 1] == doctest::Approx(0.2 * level));
  }

  // A canonical axis built on external scores extrapolates like any other.
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 1);
  CHECK(axis.levels.size() == 6);
  CHECK(axis.levels[5] == doctest::Approx(1.2));
}

TEST_CASE("external measurements demand complete score coverage") {
  auto scores = imdeg::ExternalScores::from_text(
      "metric,lpips\n"
      "a_hendrycks_jpeg_s1,0.1\n");
  try {
    imdeg::measure_strengths_external({"a"}, "hendrycks", "jpeg", scores, "hash");
    CHECK(false);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kNotFound);
    CHECK(std::string(e.what()).find("a_hendrycks_jpeg_s2") != std::string::npos);
  }
}

TEST_CASE("calibration documents survive a json round trip") {
  auto m = measurement_with({0.01, 0.05, 0.11, 0.24, 0.47}, "1-ssim");
  m.backend = "arniqa";
  m.term = "gaublur";
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 2, StepPolicy::kMeanStep);

  std::string text = imdeg::calibration_to_json(axis);
  CanonicalAxis back = imdeg::calibration_from_json(text);
  CHECK(back.backend == axis.backend);
  CHECK(back.term == axis.term);
  CHECK(back.metric == axis.metric);
  CHECK(back.native_strengths == axis.native_strengths);
  CHECK(back.levels == axis.levels);
  CHECK(back.step_delta == axis.step_delta);
  CHECK(back.policy == axis.policy);
  CHECK(back.extrapolated == axis.extrapolated);
  CHECK(back.n_images == axis.n_images);
  CHECK(back.image_set_digest == axis.image_set_digest);
  CHECK(back.seed == axis.seed);
  CHECK(back.schedule_hash == axis.schedule_hash);
}

TEST_CASE("calibration files round trip through disk") {
  testsupport::TempDir tmp("calib");
  auto m = measurement_with({0.5, 0.6, 0.7, 0.8, 0.9}, "external:lpips");
  CanonicalAxis axis = imdeg::derive_canonical_axis(m, 0);
  std::string path = tmp.file(imdeg::calibration_filename(axis.backend, axis.term, axis.metric));
  imdeg::save_calibration(axis, path);
  CanonicalAxis back = imdeg::load_calibration(path);
  CHECK(back.levels == axis.levels);
  CHECK(back.metric.external_name == "lpips");
}

TEST_CASE("malformed calibration documents are format errors") {
  CHECK_THROWS_AS(imdeg::calibration_from_json("{not json"), imdeg::Error);
  CHECK_THROWS_AS(imdeg::calibration_from_json("{}"), imdeg::Error);
  // Wrong version string.
  CHECK_THROWS_AS(imdeg::calibration_from_json(R"({"version":"other-v9"})"), imdeg::Error);
  try {
    imdeg::calibration_from_json("{}");
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
  CHECK_THROWS_AS(imdeg::load_calibration("/nonexistent/file.json"), imdeg::Error);
}

TEST_CASE("calibration filenames slug the metric") {
  CHECK(imdeg::calibration_filename("arniqa", "gaublur", imdeg::parse_metric("1-ssim")) ==
        "arniqa_gaublur_1_ssim.json");
  CHECK(imdeg::calibration_filename("hendrycks", "jpeg", imdeg::parse_metric("psnr")) ==
        "hendrycks_jpeg_psnr.json");
  CHECK(imdeg::calibration_filename("liu", "fog", imdeg::parse_metric("external:lpips")) ==
        "liu_fog_external_lpips.json");
}

TEST_CASE("image digests react to any pixel or shape change") {
  imdeg::Image a = testsupport::structured_image(20, 20, 1);
  imdeg::Image b = a;
  CHECK(imdeg::image_digest(a) == imdeg::image_digest(b));
  b.data[0] += 0.25f;
  CHECK(imdeg::image_digest(a) != imdeg::image_digest(b));
  imdeg::Image c = testsupport::structured_image(20, 21, 1);
  CHECK(imdeg::image_digest(a) != imdeg::image_digest(c));
}

}  // namespace
