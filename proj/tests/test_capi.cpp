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

// Exercises the shared library through its C interface only: opaque handles,
// status codes, and the thread-local error message.  No internal C++ headers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "imdeg/imdeg.h"
#include "support/tempdir.hpp"

namespace {

using testsupport::TempDir;

// Deterministic pattern on the 8-bit grid, so PNG round trips are exact.
void fill_pattern(imdeg_image* image, int phase) {
  int w = imdeg_image_width(image);
  int h = imdeg_image_height(image);
  float* data = imdeg_image_data(image);
  REQUIRE(data != nullptr);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        int code = (x * 31 + y * 17 + c * 53 + phase * 11) % 256;
        // The decoder's grid is code * (1/255); using the same scale keeps
        // PNG round trips bit-exact.
        data[(static_cast<size_t>(y) * w + x) * 3 + c] =
            static_cast<float>(code) * (1.0f / 255.0f);
      }
    }
  }
}

struct CtxGuard {
  imdeg_ctx* ctx = nullptr;
  CtxGuard() { REQUIRE(imdeg_ctx_create(&ctx) == IMDEG_OK); }
  ~CtxGuard() { imdeg_ctx_destroy(ctx); }
};

struct ImageGuard {
  imdeg_image* image = nullptr;
  ~ImageGuard() { imdeg_image_destroy(image); }
};

bool same_pixels(imdeg_image* a, imdeg_image* b) {
  int w = imdeg_image_width(a);
  int h = imdeg_image_height(a);
  if (w != imdeg_image_width(b) || h != imdeg_image_height(b)) return false;
  return std::memcmp(imdeg_image_data(a), imdeg_image_data(b),
                     static_cast<size_t>(w) * h * 3 * sizeof(float)) == 0;
}

TEST_CASE("version, codec, and status strings are exposed") {
  CHECK(std::string(imdeg_version()) == "1.0.0");
  CHECK(std::string(imdeg_codec_versions()).size() > 0);
  CHECK(std::string(imdeg_status_name(IMDEG_OK)) == "ok");
  CHECK(std::string(imdeg_status_name(IMDEG_ERR_NOT_FOUND)) == "not_found");
  CHECK(std::string(imdeg_status_name(IMDEG_ERR_UNAVAILABLE)) == "unavailable_feature");
  CHECK(std::string(imdeg_status_name(IMDEG_ERR_DEGENERATE_AXIS)) == "degenerate_axis");
}

TEST_CASE("contexts expose a stable schedule digest") {
  CtxGuard a;
  CtxGuard b;
  std::string hash = imdeg_ctx_schedule_hash(a.ctx);
  CHECK(hash.size() == 64);  // sha-256 hex
  CHECK(hash == imdeg_ctx_schedule_hash(b.ctx));
  CHECK(imdeg_ctx_create(nullptr) == IMDEG_ERR_ARGUMENT);
}

TEST_CASE("images round trip through the boundary") {
  TempDir tmp("capi_img");
  ImageGuard img;
  REQUIRE(imdeg_image_create(32, 24, &img.image) == IMDEG_OK);
  CHECK(imdeg_image_width(img.image) == 32);
  CHECK(imdeg_image_height(img.image) == 24);
  fill_pattern(img.image, 0);

  std::string path = tmp.file("pattern.png");
  REQUIRE(imdeg_image_save_png(img.image, path.c_str()) == IMDEG_OK);

  ImageGuard loaded;
  REQUIRE(imdeg_image_load(path.c_str(), &loaded.image) == IMDEG_OK);
  CHECK(same_pixels(img.image, loaded.image));

  // JPEG is lossy but close on smooth content (the pixel-rate pattern above
  // is a worst case for a block-transform codec, so measure on a gradient).
  ImageGuard smooth;
  REQUIRE(imdeg_image_create(32, 24, &smooth.image) == IMDEG_OK);
  {
    float* data = imdeg_image_data(smooth.image);
    for (int y = 0; y < 24; ++y) {
      for (int x = 0; x < 32; ++x) {
        for (int c = 0; c < 3; ++c) {
          data[(static_cast<size_t>(y) * 32 + x) * 3 + c] =
              static_cast<float>(x * 2 + y + c * 40) * (1.0f / 255.0f);
        }
      }
    }
  }
  std::string jpath = tmp.file("pattern.jpg");
  REQUIRE(imdeg_image_save_jpeg(smooth.image, jpath.c_str(), 92) == IMDEG_OK);
  ImageGuard jloaded;
  REQUIRE(imdeg_image_load(jpath.c_str(), &jloaded.image) == IMDEG_OK);
  double quality = 0.0;
  REQUIRE(imdeg_psnr(smooth.image, jloaded.image, &quality) == IMDEG_OK);
  CHECK(quality > 30.0);

  // Failure surfaces.
  ImageGuard bad;
  CHECK(imdeg_image_create(0, 5, &bad.image) == IMDEG_ERR_SHAPE);
  CHECK(imdeg_image_load(tmp.file("absent.png").c_str(), &bad.image) == IMDEG_ERR_IO);
  {
    std::ofstream junk(tmp.file("junk.png"), std::ios::binary);
    junk << "this is not an image";
  }
  CHECK(imdeg_image_load(tmp.file("junk.png").c_str(), &bad.image) == IMDEG_ERR_FORMAT);
  CHECK(std::string(imdeg_last_error()).size() > 0);
  CHECK(imdeg_image_save_png(img.image, "/nonexistent/dir/x.png") == IMDEG_ERR_IO);
  CHECK(imdeg_image_load(nullptr, &bad.image) == IMDEG_ERR_ARGUMENT);
}

TEST_CASE("degradations run deterministically through the boundary") {
  CtxGuard ctx;
  ImageGuard input;
  REQUIRE(imdeg_image_create(48, 48, &input.image) == IMDEG_OK);
  fill_pattern(input.image, 1);

  imdeg_chain_step noise{"hendrycks", "gaussian_noise", 3, 42};
  ImageGuard out1, out2, out3;
  REQUIRE(imdeg_apply(ctx.ctx, input.image, &noise, &out1.image) == IMDEG_OK);
  REQUIRE(imdeg_apply(ctx.ctx, input.image, &noise, &out2.image) == IMDEG_OK);
  CHECK(same_pixels(out1.image, out2.image));  // same seed, same draws
  CHECK(!same_pixels(out1.image, input.image));

  imdeg_chain_step reseeded = noise;
  reseeded.seed = 43;
  REQUIRE(imdeg_apply(ctx.ctx, input.image, &reseeded, &out3.image) == IMDEG_OK);
  CHECK(!same_pixels(out1.image, out3.image));

  // A one-element chain is exactly imdeg_apply.
  ImageGuard chained1;
  REQUIRE(imdeg_apply_chain(ctx.ctx, input.image, &noise, 1, &chained1.image) == IMDEG_OK);
  CHECK(same_pixels(out1.image, chained1.image));

  imdeg_chain_step steps[2] = {{"hendrycks", "jpeg", 2, 7}, {"arniqa", "gaublur", 3, 7}};
  ImageGuard chained2;
  REQUIRE(imdeg_apply_chain(ctx.ctx, input.image, steps, 2, &chained2.image) == IMDEG_OK);
  CHECK(!same_pixels(chained2.image, input.image));

  // Error paths.
  ImageGuard sink;
  CHECK(imdeg_apply(nullptr, input.image, &noise, &sink.image) == IMDEG_ERR_ARGUMENT);
  imdeg_chain_step unknown{"hendrycks", "no_such_thing", 1, 0};
  CHECK(imdeg_apply(ctx.ctx, input.image, &unknown, &sink.image) == IMDEG_ERR_NOT_FOUND);
  CHECK(std::string(imdeg_last_error()).find("no_such_thing") != std::string::npos);
  imdeg_chain_step level0{"hendrycks", "gaussian_noise", 0, 0};
  CHECK(imdeg_apply(ctx.ctx, input.image, &level0, &sink.image) == IMDEG_ERR_ARGUMENT);
  imdeg_chain_step gated{"arniqa", "jpeg2000", 2, 0};
  CHECK(imdeg_apply(ctx.ctx, input.image, &gated, &sink.image) == IMDEG_ERR_UNAVAILABLE);
  CHECK(imdeg_apply_chain(ctx.ctx, input.image, steps, 0, &sink.image) == IMDEG_ERR_ARGUMENT);

  // A success clears the thread-local message.
  ImageGuard ok;
  REQUIRE(imdeg_apply(ctx.ctx, input.image, &noise, &ok.image) == IMDEG_OK);
  CHECK(std::string(imdeg_last_error()).empty());
}

TEST_CASE("metrics agree with their fixed points at the boundary") {
  ImageGuard img;
  REQUIRE(imdeg_image_create(32, 32, &img.image) == IMDEG_OK);
  fill_pattern(img.image, 2);

  double value = 0.0;
  REQUIRE(imdeg_psnr(img.image, img.image, &value) == IMDEG_OK);
  CHECK(value == 50.0);
  REQUIRE(imdeg_ssim(img.image, img.image, &value) == IMDEG_OK);
  CHECK(value == 1.0);

  ImageGuard small_a, small_b;
  REQUIRE(imdeg_image_create(8, 8, &small_a.image) == IMDEG_OK);
  REQUIRE(imdeg_image_create(8, 8, &small_b.image) == IMDEG_OK);
  REQUIRE(imdeg_psnr(small_a.image, small_b.image, &value) == IMDEG_OK);  // no min size
  CHECK(imdeg_ssim(small_a.image, small_b.image, &value) == IMDEG_ERR_SHAPE);

  ImageGuard other;
  REQUIRE(imdeg_image_create(16, 32, &other.image) == IMDEG_OK);
  CHECK(imdeg_psnr(img.image, other.image, &value) == IMDEG_ERR_SHAPE);
  CHECK(imdeg_psnr(nullptr, img.image, &value) == IMDEG_ERR_ARGUMENT);
  CHECK(imdeg_psnr(img.image, img.image, nullptr) == IMDEG_ERR_ARGUMENT);
}

TEST_CASE("the operator inventory spans all three backends") {
  CtxGuard ctx;
  size_t all = 0, hendrycks = 0, arniqa = 0, liu = 0;
  REQUIRE(imdeg_operator_count(ctx.ctx, nullptr, &all) == IMDEG_OK);
  REQUIRE(imdeg_operator_count(ctx.ctx, "hendrycks", &hendrycks) == IMDEG_OK);
  REQUIRE(imdeg_operator_count(ctx.ctx, "arniqa", &arniqa) == IMDEG_OK);
  REQUIRE(imdeg_operator_count(ctx.ctx, "liu", &liu) == IMDEG_OK);
  CHECK(all == 59);
  CHECK(hendrycks == 19);
  CHECK(arniqa == 24);
  CHECK(liu == 16);
  CHECK(all == hendrycks + arniqa + liu);

  size_t empty_filter = 0;
  REQUIRE(imdeg_operator_count(ctx.ctx, "", &empty_filter) == IMDEG_OK);
  CHECK(empty_filter == all);

  // Every slot yields a fully annotated record.
  for (size_t i = 0; i < all; ++i) {
    imdeg_operator_info info;
    REQUIRE(imdeg_operator_info_at(ctx.ctx, nullptr, i, &info) == IMDEG_OK);
    CHECK(std::string(info.backend).size() > 0);
    CHECK(std::string(info.term).size() > 0);
    CHECK(std::string(info.group).size() > 1);   // "G1".."G12"
    CHECK(std::string(info.cause).size() > 0);
    CHECK((info.tier == 1 || info.tier == 2));
  }
  imdeg_operator_info info;
  CHECK(imdeg_operator_info_at(ctx.ctx, nullptr, all, &info) == IMDEG_ERR_ARGUMENT);
  size_t n = 0;
  CHECK(imdeg_operator_count(ctx.ctx, "no_such_backend", &n) == IMDEG_ERR_NOT_FOUND);

  // Tolerant lookup normalizes case and punctuation.
  REQUIRE(imdeg_operator_info_get(ctx.ctx, "hendrycks", "Gaussian-Noise", &info) == IMDEG_OK);
  CHECK(std::string(info.term) == "gaussian_noise");
  CHECK(std::string(info.group) == "G1");
  CHECK(std::string(info.group_name) == "Noise");
  CHECK(std::string(info.cause) == "S");
  CHECK(std::string(info.effect) == "N");
  CHECK(std::string(info.tv_subtype).empty());
  CHECK(info.available == 1);
  CHECK(info.stochastic == 1);
  CHECK(info.monotone == IMDEG_MONOTONE_STRICT);

  REQUIRE(imdeg_operator_info_get(ctx.ctx, "liu", "memory_exceptions", &info) == IMDEG_OK);
  CHECK(std::string(info.group) == "G11");
  CHECK(std::string(info.group_name) == "System/Transfer/Board");
  CHECK(std::string(info.cause) == "T");

  REQUIRE(imdeg_operator_info_get(ctx.ctx, "arniqa", "jpeg2000", &info) == IMDEG_OK);
  CHECK(info.available == 0);
  CHECK(std::string(info.availability_note).size() > 0);

  // Annotation-only taxonomy rows are not operators.
  CHECK(imdeg_operator_info_get(ctx.ctx, "liu", "synchronization_exceptions", &info) ==
        IMDEG_ERR_NOT_FOUND);
}

TEST_CASE("calibration round trips through the boundary") {
  CtxGuard ctx;
  TempDir tmp("capi_calib");

  std::vector<std::string> paths;
  for (int i = 0; i < 3; ++i) {
    ImageGuard img;
    REQUIRE(imdeg_image_create(32, 32, &img.image) == IMDEG_OK);
    fill_pattern(img.image, i);
    std::string path = tmp.file("ref" + std::to_string(i) + ".png");
    REQUIRE(imdeg_image_save_png(img.image, path.c_str()) == IMDEG_OK);
    paths.push_back(path);
  }
  std::vector<const char*> cpaths;
  for (const std::string& p : paths) cpaths.push_back(p.c_str());

  imdeg_calibration* cal = nullptr;
  REQUIRE(imdeg_calibrate(ctx.ctx, cpaths.data(), cpaths.size(), "arniqa", "gaublur", "1-ssim",
                          nullptr, 7, 1, 2, IMDEG_STEP_LAST, &cal) == IMDEG_OK);
  CHECK(std::string(imdeg_calibration_backend(cal)) == "arniqa");
  CHECK(std::string(imdeg_calibration_term(cal)) == "gaublur");
  CHECK(std::string(imdeg_calibration_metric(cal)) == "1-ssim");
  REQUIRE(imdeg_calibration_level_count(cal) == 7);

  // Native levels carry over verbatim; extrapolation walks in fixed steps.
  double native[5];
  for (int l = 1; l <= 5; ++l) {
    REQUIRE(imdeg_calibration_native_strength(cal, l, &native[l - 1]) == IMDEG_OK);
    double level = 0.0;
    REQUIRE(imdeg_calibration_level(cal, l, &level) == IMDEG_OK);
    CHECK(level == native[l - 1]);
  }
  double delta = imdeg_calibration_step_delta(cal);
  CHECK(delta == doctest::Approx(native[4] - native[3]).epsilon(1e-12));
  CHECK(delta > 0.0);  // blur must strengthen with severity on this axis
  double level6 = 0.0, level7 = 0.0;
  REQUIRE(imdeg_calibration_level(cal, 6, &level6) == IMDEG_OK);
  REQUIRE(imdeg_calibration_level(cal, 7, &level7) == IMDEG_OK);
  CHECK(level6 == doctest::Approx(native[4] + delta).epsilon(1e-12));
  CHECK(level7 == doctest::Approx(native[4] + 2 * delta).epsilon(1e-12));

  double ignored = 0.0;
  CHECK(imdeg_calibration_level(cal, 0, &ignored) == IMDEG_ERR_ARGUMENT);
  CHECK(imdeg_calibration_level(cal, 8, &ignored) == IMDEG_ERR_ARGUMENT);
  CHECK(imdeg_calibration_native_strength(cal, 6, &ignored) == IMDEG_ERR_ARGUMENT);

  int native_level = 0, saturated = -1;
  REQUIRE(imdeg_map_canonical(cal, 1, &native_level, &saturated) == IMDEG_OK);
  CHECK(native_level == 1);
  CHECK(saturated == 0);
  REQUIRE(imdeg_map_canonical(cal, 7, &native_level, &saturated) == IMDEG_OK);
  CHECK(native_level == 5);
  CHECK(saturated == 1);

  // Apply through a canonical level past the native range.
  ImageGuard input;
  REQUIRE(imdeg_image_create(32, 32, &input.image) == IMDEG_OK);
  fill_pattern(input.image, 9);
  ImageGuard output;
  native_level = 0;
  saturated = -1;
  REQUIRE(imdeg_apply_canonical(ctx.ctx, input.image, cal, 6, 11, &output.image, &native_level,
                                &saturated) == IMDEG_OK);
  CHECK(native_level == 5);
  CHECK(saturated == 1);
  CHECK(imdeg_image_width(output.image) == 32);

  // Disk round trip preserves the axis.
  std::string doc = tmp.file("axis.json");
  REQUIRE(imdeg_calibration_save(cal, doc.c_str()) == IMDEG_OK);
  imdeg_calibration* loaded = nullptr;
  REQUIRE(imdeg_calibration_load(doc.c_str(), &loaded) == IMDEG_OK);
  CHECK(std::string(imdeg_calibration_backend(loaded)) == "arniqa");
  CHECK(imdeg_calibration_level_count(loaded) == 7);
  double reload = 0.0;
  REQUIRE(imdeg_calibration_level(loaded, 6, &reload) == IMDEG_OK);
  CHECK(reload == level6);
  CHECK(imdeg_calibration_step_delta(loaded) == delta);
  imdeg_calibration_destroy(loaded);

  // Failure surfaces.
  imdeg_calibration* sink = nullptr;
  CHECK(imdeg_calibration_load(tmp.file("absent.json").c_str(), &sink) == IMDEG_ERR_IO);
  {
    std::ofstream junk(tmp.file("bad.json"));
    junk << "{\"version\": \"wrong\"}";
  }
  CHECK(imdeg_calibration_load(tmp.file("bad.json").c_str(), &sink) == IMDEG_ERR_FORMAT);
  CHECK(imdeg_calibrate(ctx.ctx, cpaths.data(), cpaths.size(), "arniqa", "gaublur", "1-ssim",
                        nullptr, 7, 1, 2, 99, &sink) == IMDEG_ERR_ARGUMENT);
  CHECK(imdeg_calibrate(ctx.ctx, cpaths.data(), cpaths.size(), "arniqa", "gaublur",
                        "external:lpips", nullptr, 7, 1, 0, IMDEG_STEP_LAST, &sink) ==
        IMDEG_ERR_ARGUMENT);

  imdeg_calibration_destroy(cal);
}

TEST_CASE("generation and reporting run end to end through the boundary") {
  CtxGuard ctx;
  TempDir in("capi_gen_in");
  TempDir out("capi_gen_out");
  for (int i = 0; i < 2; ++i) {
    ImageGuard img;
    REQUIRE(imdeg_image_create(24, 24, &img.image) == IMDEG_OK);
    fill_pattern(img.image, i + 3);
    std::string path = in.file("src" + std::to_string(i) + ".png");
    REQUIRE(imdeg_image_save_png(img.image, path.c_str()) == IMDEG_OK);
  }

  std::string in_dir = in.str();
  std::string out_dir = out.str();
  imdeg_generate_options gopt{};
  gopt.protocol = "cartesian";
  gopt.input_dir = in_dir.c_str();
  gopt.output_dir = out_dir.c_str();
  gopt.backend = "hendrycks";
  gopt.terms = "jpeg,gaussian_noise";
  gopt.seed = 9;
  gopt.jobs = 1;
  gopt.measure = 1;
  imdeg_generate_summary gsum{};
  REQUIRE(imdeg_generate(ctx.ctx, &gopt, &gsum) == IMDEG_OK);
  CHECK(gsum.total == 20);  // 2 images x 2 operators x 5 levels
  CHECK(gsum.ok == 20);
  CHECK(gsum.failed == 0);
  CHECK(std::ifstream(gsum.manifest_path).good());

  imdeg_report_options ropt{};
  ropt.manifest_path = gsum.manifest_path;
  std::string csv_path = out.file("table.csv");
  ropt.out_csv = csv_path.c_str();
  char* text = nullptr;
  imdeg_report_summary rsum{};
  REQUIRE(imdeg_report(ctx.ctx, &ropt, &text, &rsum) == IMDEG_OK);
  CHECK(rsum.rows == 4);  // 2 operators x (psnr, 1-ssim)
  CHECK(rsum.warnings == 0);
  REQUIRE(text != nullptr);
  CHECK(std::string(text).find("gaussian_noise") != std::string::npos);
  imdeg_string_free(text);
  {
    std::ifstream csv(csv_path);
    std::string header;
    REQUIRE(std::getline(csv, header));
    CHECK(header.find("backend,term,metric") == 0);
  }

  // Gated operators: planned only on request, and then fail as records.
  imdeg_generate_options gated = gopt;
  gated.terms = "jpeg2000";
  gated.backend = "arniqa";
  imdeg_generate_summary gated_sum{};
  CHECK(imdeg_generate(ctx.ctx, &gated, &gated_sum) == IMDEG_ERR_ARGUMENT);
  gated.include_unavailable = 1;
  TempDir out2("capi_gen_out2");
  std::string out2_dir = out2.str();
  gated.output_dir = out2_dir.c_str();
  REQUIRE(imdeg_generate(ctx.ctx, &gated, &gated_sum) == IMDEG_OK);
  CHECK(gated_sum.total == 10);
  CHECK(gated_sum.ok == 0);
  CHECK(gated_sum.failed == 10);

  // Random chains: one assignment per image.
  imdeg_generate_options rnd{};
  rnd.protocol = "random_chains";
  rnd.input_dir = in_dir.c_str();
  TempDir out3("capi_gen_out3");
  std::string out3_dir = out3.str();
  rnd.output_dir = out3_dir.c_str();
  rnd.chain_length = 2;
  rnd.seed = 4;
  rnd.jobs = 1;
  imdeg_generate_summary rnd_sum{};
  REQUIRE(imdeg_generate(ctx.ctx, &rnd, &rnd_sum) == IMDEG_OK);
  CHECK(rnd_sum.total == 2);

  // A report needs exactly one source.
  imdeg_report_options both{};
  both.manifest_path = gsum.manifest_path;
  std::string dir = out.str();
  both.calibration_dir = dir.c_str();
  CHECK(imdeg_report(ctx.ctx, &both, nullptr, &rsum) == IMDEG_ERR_ARGUMENT);
  imdeg_report_options neither{};
  CHECK(imdeg_report(ctx.ctx, &neither, nullptr, &rsum) == IMDEG_ERR_ARGUMENT);
}

TEST_CASE("the built-in registry validates cleanly through the boundary") {
  CtxGuard ctx;
  char* violations = nullptr;
  size_t count = 99;
  REQUIRE(imdeg_validate(ctx.ctx, &violations, &count) == IMDEG_OK);
  CHECK(count == 0);
  REQUIRE(violations != nullptr);
  CHECK(std::string(violations).empty());
  imdeg_string_free(violations);

  // The violations string is optional.
  count = 99;
  REQUIRE(imdeg_validate(ctx.ctx, nullptr, &count) == IMDEG_OK);
  CHECK(count == 0);
  CHECK(imdeg_validate(nullptr, nullptr, &count) == IMDEG_ERR_ARGUMENT);
}

}  // namespace
