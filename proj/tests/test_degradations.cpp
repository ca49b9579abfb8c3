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

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "imdeg/error.hpp"
#include "imdeg/metrics.hpp"
#include "support/images.hpp"

namespace {

using imdeg::DegradationEngine;
using imdeg::DegradationSpec;
using imdeg::ErrorCode;
using imdeg::Image;
using imdeg::MonotoneDesignation;
using imdeg::OperatorTier;
using testsupport::bitwise_equal;

const DegradationEngine& engine() {
  static const DegradationEngine kEngine;
  return kEngine;
}

TEST_CASE("the three backends ship the full published operator sets") {
  CHECK(engine().list_operators("hendrycks").size() == 19);
  CHECK(engine().list_operators("arniqa").size() == 24);
  CHECK(engine().list_operators("liu").size() == 16);
  CHECK(engine().list_all_operators().size() == 59);
  CHECK(engine().operator_keys().size() == 59);
  CHECK_THROWS_AS(engine().list_operators("unknown_backend"), imdeg::Error);
}

TEST_CASE("every operator carries a tier and the core tier dominates") {
  std::size_t core = 0, extended = 0;
  for (const auto& d : engine().list_all_operators()) {
    if (d.tier == OperatorTier::kCore) ++core;
    else ++extended;
  }
  CHECK(core == 50);
  CHECK(extended == 9);
}

TEST_CASE("descriptor lookup is tolerant and failure is loud") {
  const auto& d = engine().descriptor("arniqa", "color_block");
  CHECK(d.term == "colorblock");
  CHECK_THROWS_AS(engine().descriptor("arniqa", "not_a_term"), imdeg::Error);
  try {
    engine().descriptor("arniqa", "not_a_term");
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kNotFound);
  }
}

TEST_CASE("strictly designated operators declare themselves") {
  CHECK(engine().descriptor("hendrycks", "gaussian_noise").monotone ==
        MonotoneDesignation::kStrict);
  CHECK(engine().descriptor("arniqa", "gaublur").monotone == MonotoneDesignation::kStrict);
  CHECK(engine().descriptor("liu", "focus_motor_damage").monotone ==
        MonotoneDesignation::kStrict);
  // Deliberately non-monotone axis.
  CHECK(engine().descriptor("hendrycks", "saturate").monotone == MonotoneDesignation::kNone);
}

TEST_CASE("gated operators are listed but flagged unavailable") {
  const auto& j2k = engine().descriptor("arniqa", "jpeg2000");
  CHECK(j2k.available == false);
  CHECK(!j2k.availability_note.empty());

  // frost depends on external texture assets; no assets are wired in tests.
  if (engine().assets_dir().empty()) {
    const auto& frost = engine().descriptor("hendrycks", "frost");
    CHECK(frost.available == false);
  }

  // Everything else runs.
  for (const auto& d : engine().list_all_operators()) {
    if (d.term == "jpeg2000" || d.term == "frost") continue;
    CHECK(d.available);
  }
}

TEST_CASE("identity severities return the input") {
  Image img = testsupport::quantized(testsupport::structured_image(48, 40, 1));

  // meanshift level 1 adds offset 0; colorsat2 level 1 scales saturation by 1.
  CHECK(bitwise_equal(engine().apply(img, {"arniqa", "meanshift", 1, 7}), img));
  CHECK(bitwise_equal(engine().apply(img, {"arniqa", "colorsat2", 1, 7}), img));

  // gaublur level 1 (sigma ~ 0.1) and motionblur level 1 (length 1) are
  // identity up to quantization noise.
  Image blur1 = engine().apply(img, {"arniqa", "gaublur", 1, 7});
  CHECK(imdeg::psnr(img, blur1) == 50.0);
  Image motion1 = engine().apply(img, {"arniqa", "motionblur", 1, 7});
  CHECK(imdeg::psnr(img, motion1) == 50.0);
}

TEST_CASE("applying one spec twice is bitwise reproducible") {
  Image img = testsupport::structured_image(64, 48, 2);
  for (const char* term : {"gaussian_noise", "motion_blur", "fog", "pixelate"}) {
    DegradationSpec spec{"hendrycks", term, 3, 1234};
    Image a = engine().apply(img, spec);
    Image b = engine().apply(img, spec);
    CAPTURE(term);
    CHECK(bitwise_equal(a, b));
  }
}

TEST_CASE("stochastic operators react to the seed, deterministic ones do not") {
  Image img = testsupport::structured_image(64, 48, 3);

  Image n1 = engine().apply(img, {"hendrycks", "gaussian_noise", 3, 1});
  Image n2 = engine().apply(img, {"hendrycks", "gaussian_noise", 3, 2});
  CHECK(!bitwise_equal(n1, n2));

  Image c1 = engine().apply(img, {"hendrycks", "contrast", 3, 1});
  Image c2 = engine().apply(img, {"hendrycks", "contrast", 3, 2});
  CHECK(bitwise_equal(c1, c2));

  Image s1 = engine().apply(img, {"liu", "sensor_broken", 3, 1});
  Image s2 = engine().apply(img, {"liu", "sensor_broken", 3, 2});
  CHECK(bitwise_equal(s1, s2));
}

TEST_CASE("the stochastic flag matches observed behavior for every runnable operator") {
  Image img = testsupport::structured_image(48, 48, 4);
  for (const auto& d : engine().list_all_operators()) {
    if (!d.available) continue;
    Image a = engine().apply(img, {d.backend, d.term, 4, 11});
    Image b = engine().apply(img, {d.backend, d.term, 4, 12});
    CAPTURE(d.backend);
    CAPTURE(d.term);
    if (d.stochastic) {
      CHECK(!bitwise_equal(a, b));
    } else {
      CHECK(bitwise_equal(a, b));
    }
  }
}

TEST_CASE("every runnable operator preserves shape and range at every severity") {
  Image img = testsupport::structured_image(40, 32, 5);
  for (const auto& d : engine().list_all_operators()) {
    if (!d.available) continue;
    for (int severity = 1; severity <= 5; ++severity) {
      Image out = engine().apply(img, {d.backend, d.term, severity, 99});
      CAPTURE(d.backend);
      CAPTURE(d.term);
      CAPTURE(severity);
      REQUIRE(out.same_shape(img));
      float lo = 1e9f, hi = -1e9f;
      for (float v : out.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(lo >= 0.0f);
      CHECK(hi <= 1.0f);
    }
  }
}

TEST_CASE("chain elements draw from position-keyed streams") {
  Image img = testsupport::structured_image(48, 40, 6);
  DegradationSpec noise{"hendrycks", "gaussian_noise", 2, 77};

  // Element 0 of a chain behaves exactly like a standalone apply.
  Image standalone = engine().apply(img, noise);
  Image chain0 = engine().apply_chain(img, {noise});
  CHECK(bitwise_equal(standalone, chain0));

  // Two identical stochastic elements must not reuse the same draws:
  // applying the op twice by hand with the same stream would, a chain
  // must not.
  Image twice_same_stream = engine().apply(engine().apply(img, noise), noise);
  Image chained = engine().apply_chain(img, {noise, noise});
  CHECK(!bitwise_equal(twice_same_stream, chained));
}

TEST_CASE("chains compose in order") {
  Image img = testsupport::quantized(testsupport::structured_image(56, 56, 7));
  DegradationSpec jpeg{"hendrycks", "jpeg", 4, 5};
  DegradationSpec noise{"hendrycks", "gaussian_noise", 3, 5};

  Image jpeg_then_noise = engine().apply_chain(img, {jpeg, noise});
  Image noise_then_jpeg = engine().apply_chain(img, {noise, jpeg});
  CHECK(!bitwise_equal(jpeg_then_noise, noise_then_jpeg));

  // With a deterministic element in slot 1 the chain equals manual
  // composition (position-keyed streams only matter for stochastic steps).
  Image manual = engine().apply(engine().apply(img, noise), jpeg);
  CHECK(bitwise_equal(manual, engine().apply_chain(img, {noise, jpeg})));
}

TEST_CASE("chain application validates its specs before running") {
  Image img = testsupport::structured_image(24, 24, 8);
  CHECK_THROWS_AS(engine().apply(img, {"hendrycks", "gaussian_noise", 0, 0}), imdeg::Error);
  CHECK_THROWS_AS(engine().apply(img, {"hendrycks", "gaussian_noise", 6, 0}), imdeg::Error);
  try {
    engine().apply(img, {"hendrycks", "gaussian_noise", 6, 0});
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kArgument);
  }
  try {
    engine().apply(img, {"hendrycks", "no_such_thing", 3, 0});
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kNotFound);
  }
  try {
    engine().apply(img, {"arniqa", "jpeg2000", 3, 0});
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kUnavailableFeature);
    CHECK(std::string(e.what()).find("JPEG 2000") != std::string::npos);
  }
  Image empty;
  try {
    engine().apply(empty, {"hendrycks", "gaussian_noise", 3, 0});
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kShape);
  }
}

TEST_CASE("frost without assets is an unavailable feature, not a crash") {
  if (!engine().assets_dir().empty()) return;  // environment provides assets
  Image img = testsupport::structured_image(32, 32, 9);
  try {
    engine().apply(img, {"hendrycks", "frost", 2, 0});
    CHECK(false);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == ErrorCode::kUnavailableFeature);
    CHECK(std::string(e.what()).find("IMDEG_ASSETS") != std::string::npos);
  }
}

TEST_CASE("severity moves the built-in strength readings for core noise and blur") {
  Image img = testsupport::structured_image(96, 96, 10);
  for (const char* term : {"gaussian_noise", "defocus_blur"}) {
    double prev_psnr = 1e9;
    for (int severity = 1; severity <= 5; ++severity) {
      Image out = engine().apply(img, {"hendrycks", term, severity, 4242});
      double p = imdeg::psnr(img, out);
      CAPTURE(term);
      CAPTURE(severity);
      CHECK(p < prev_psnr);
      prev_psnr = p;
    }
  }
}

TEST_CASE("every operator appears in the taxonomy registry it ships with") {
  for (const auto& [backend, term] : engine().operator_keys()) {
    CAPTURE(backend);
    CAPTURE(term);
    CHECK(engine().taxonomy().contains(backend, term));
  }
}

TEST_CASE("every runnable operator has a five-level schedule") {
  for (const auto& d : engine().list_all_operators()) {
    CAPTURE(d.backend);
    CAPTURE(d.term);
    CHECK(engine().schedules().contains(d.backend, d.term));
    const auto& sched = engine().schedules().lookup(d.backend, d.term);
    CHECK(!sched.param_names.empty());
    for (int severity = 1; severity <= 5; ++severity) {
      CHECK(sched.tuple(severity).size() == sched.param_names.size());
    }
  }
}

TEST_CASE("jitter's schedule pins the same displacement at all severities") {
  const auto& sched = engine().schedules().lookup("arniqa", "jitter");
  for (int severity = 2; severity <= 5; ++severity) {
    CHECK(sched.tuple(severity) == sched.tuple(1));
  }
}

}  // namespace
