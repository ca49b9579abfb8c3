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

// Command-line front end.  Everything goes through the public C API; this
// file deliberately includes no internal header.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imdeg/imdeg.h"

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 12648430;

// Exit codes: 0 success, 1 completed with failures/violations, 2 usage or
// configuration error.
constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;

int report_failure(imdeg_status status) {
  std::fprintf(stderr, "error (%s): %s\n", imdeg_status_name(status), imdeg_last_error());
  return status == IMDEG_ERR_ARGUMENT ? kExitUsage : kExitFailures;
}

struct CtxDeleter {
  void operator()(imdeg_ctx* ctx) const { imdeg_ctx_destroy(ctx); }
};
struct ImageDeleter {
  void operator()(imdeg_image* image) const { imdeg_image_destroy(image); }
};
struct CalibrationDeleter {
  void operator()(imdeg_calibration* c) const { imdeg_calibration_destroy(c); }
};
using CtxPtr = std::unique_ptr<imdeg_ctx, CtxDeleter>;
using ImagePtr = std::unique_ptr<imdeg_image, ImageDeleter>;
using CalibrationPtr = std::unique_ptr<imdeg_calibration, CalibrationDeleter>;

CtxPtr make_ctx(const std::string& registry, const std::string& schedules,
                const std::string& assets, imdeg_status* status) {
  imdeg_ctx* raw = nullptr;
  if (registry.empty() && schedules.empty() && assets.empty()) {
    *status = imdeg_ctx_create(&raw);
  } else {
    *status = imdeg_ctx_create_custom(registry.empty() ? nullptr : registry.c_str(),
                                      schedules.empty() ? nullptr : schedules.c_str(),
                                      assets.empty() ? nullptr : assets.c_str(), &raw);
  }
  return CtxPtr(raw);
}

std::vector<std::string> list_images(const std::string& dir) {
  std::vector<std::string> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::string metric_file_slug(const std::string& metric) {
  std::string slug = metric;
  for (char& c : slug) {
    if (c == '-' || c == ':') c = '_';
  }
  return slug;
}

bool save_by_extension(const imdeg_image* image, const std::string& path, int jpeg_quality,
                       imdeg_status* status) {
  std::string ext = fs::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") {
    *status = imdeg_image_save_jpeg(image, path.c_str(), jpeg_quality);
  } else {
    *status = imdeg_image_save_png(image, path.c_str());
  }
  return *status == IMDEG_OK;
}

// ---- calibrate ------------------------------------------------------------

struct CalibrateArgs {
  std::string in_dir;
  std::string out_dir;
  std::string backend;
  std::string term;  // empty: every runnable operator of the backend
  std::string metric = "1-ssim";
  std::string scores;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 0;
  int m_max = 0;
  std::string step_policy = "last";
};

int run_calibrate(imdeg_ctx* ctx, const CalibrateArgs& args) {
  std::vector<std::string> paths = list_images(args.in_dir);
  if (paths.empty()) {
    std::fprintf(stderr, "error: no reference images (png/jpeg) in %s\n", args.in_dir.c_str());
    return kExitUsage;
  }
  std::vector<const char*> c_paths;
  c_paths.reserve(paths.size());
  for (const std::string& p : paths) c_paths.push_back(p.c_str());

  int policy = args.step_policy == "mean" ? IMDEG_STEP_MEAN : IMDEG_STEP_LAST;
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s\n", args.out_dir.c_str());
    return kExitFailures;
  }

  std::vector<std::string> terms;
  if (!args.term.empty()) {
    terms.push_back(args.term);
  } else {
    size_t count = 0;
    imdeg_status status = imdeg_operator_count(ctx, args.backend.c_str(), &count);
    if (status != IMDEG_OK) return report_failure(status);
    for (size_t i = 0; i < count; ++i) {
      imdeg_operator_info info;
      status = imdeg_operator_info_at(ctx, args.backend.c_str(), i, &info);
      if (status != IMDEG_OK) return report_failure(status);
      if (!info.available) {
        std::printf("skipped %s/%s: %s\n", info.backend, info.term, info.availability_note);
        continue;
      }
      terms.push_back(info.term);
    }
  }

  int failures = 0;
  for (const std::string& term : terms) {
    imdeg_calibration* raw = nullptr;
    imdeg_status status = imdeg_calibrate(
        ctx, c_paths.data(), c_paths.size(), args.backend.c_str(), term.c_str(),
        args.metric.c_str(), args.scores.empty() ? nullptr : args.scores.c_str(), args.seed,
        args.jobs, args.m_max, policy, &raw);
    if (status != IMDEG_OK) {
      std::fprintf(stderr, "failed %s/%s (%s): %s\n", args.backend.c_str(), term.c_str(),
                   imdeg_status_name(status), imdeg_last_error());
      ++failures;
      continue;
    }
    CalibrationPtr calibration(raw);
    std::string filename = std::string(imdeg_calibration_backend(raw)) + "_" +
                           imdeg_calibration_term(raw) + "_" +
                           metric_file_slug(imdeg_calibration_metric(raw)) + ".json";
    fs::path out_path = fs::path(args.out_dir) / filename;
    status = imdeg_calibration_save(raw, out_path.string().c_str());
    if (status != IMDEG_OK) {
      std::fprintf(stderr, "failed to save %s: %s\n", out_path.string().c_str(),
                   imdeg_last_error());
      ++failures;
      continue;
    }
    double d1 = 0.0, d5 = 0.0;
    imdeg_calibration_native_strength(raw, 1, &d1);
    imdeg_calibration_native_strength(raw, 5, &d5);
    std::printf("calibrated %s/%s (%s): d1=%.6g d5=%.6g levels=%zu -> %s\n",
                imdeg_calibration_backend(raw), imdeg_calibration_term(raw),
                imdeg_calibration_metric(raw), d1, d5, imdeg_calibration_level_count(raw),
                out_path.string().c_str());
  }
  if (failures > 0) {
    std::fprintf(stderr, "%d operator(s) failed to calibrate\n", failures);
    return kExitFailures;
  }
  return kExitOk;
}

// ---- apply ----------------------------------------------------------------

struct ApplyArgs {
  std::string input;
  std::string output;
  std::string mode = "native";
  std::string backend;
  std::string term;
  int severity = 0;
  int level = 0;
  std::string calibration;
  std::uint64_t seed = kDefaultSeed;
  int jpeg_quality = 95;
};

int run_apply(imdeg_ctx* ctx, const ApplyArgs& args) {
  imdeg_image* raw_in = nullptr;
  imdeg_status status = imdeg_image_load(args.input.c_str(), &raw_in);
  if (status != IMDEG_OK) return report_failure(status);
  ImagePtr input(raw_in);

  ImagePtr output;
  if (args.mode == "native") {
    if (args.backend.empty() || args.term.empty() || args.severity == 0) {
      std::fprintf(stderr, "error: native mode needs --backend, --term and --severity\n");
      return kExitUsage;
    }
    imdeg_chain_step step{args.backend.c_str(), args.term.c_str(), args.severity, args.seed};
    imdeg_image* raw_out = nullptr;
    status = imdeg_apply(ctx, input.get(), &step, &raw_out);
    if (status != IMDEG_OK) return report_failure(status);
    output.reset(raw_out);
  } else {
    if (args.calibration.empty() || args.level == 0) {
      std::fprintf(stderr, "error: canonical mode needs --calibration and --level\n");
      return kExitUsage;
    }
    imdeg_calibration* raw_calib = nullptr;
    status = imdeg_calibration_load(args.calibration.c_str(), &raw_calib);
    if (status != IMDEG_OK) return report_failure(status);
    CalibrationPtr calibration(raw_calib);
    imdeg_image* raw_out = nullptr;
    int native = 0, saturated = 0;
    status = imdeg_apply_canonical(ctx, input.get(), raw_calib, args.level, args.seed,
                                   &raw_out, &native, &saturated);
    if (status != IMDEG_OK) return report_failure(status);
    output.reset(raw_out);
    std::printf("canonical level %d -> native severity %d (%s/%s)\n", args.level, native,
                imdeg_calibration_backend(raw_calib), imdeg_calibration_term(raw_calib));
    if (saturated != 0) {
      std::printf("warning: canonical level %d lies past the calibrated native range; "
                  "saturated to the strongest native severity\n",
                  args.level);
    }
  }
  if (!save_by_extension(output.get(), args.output, args.jpeg_quality, &status)) {
    return report_failure(status);
  }
  std::printf("wrote %s\n", args.output.c_str());
  return kExitOk;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string protocol = "round_robin";
  std::string in_dir;
  std::string out_dir;
  std::string backend;
  std::string terms;
  std::string chain;
  int chain_length = 2;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 0;
  bool measure = false;
  bool include_unavailable = false;
  std::string format = "png";
  int jpeg_quality = 95;
};

int run_generate(imdeg_ctx* ctx, const GenerateArgs& args) {
  imdeg_generate_options options{};
  options.protocol = args.protocol.c_str();
  options.input_dir = args.in_dir.c_str();
  options.output_dir = args.out_dir.c_str();
  options.backend = args.backend.empty() ? nullptr : args.backend.c_str();
  options.terms = args.terms.empty() ? nullptr : args.terms.c_str();
  options.chain = args.chain.empty() ? nullptr : args.chain.c_str();
  options.chain_length = args.chain_length;
  options.seed = args.seed;
  options.jobs = args.jobs;
  options.measure = args.measure ? 1 : 0;
  options.include_unavailable = args.include_unavailable ? 1 : 0;
  options.format = args.format.c_str();
  options.jpeg_quality = args.jpeg_quality;

  imdeg_generate_summary summary{};
  imdeg_status status = imdeg_generate(ctx, &options, &summary);
  if (status != IMDEG_OK) return report_failure(status);
  std::printf("generated %zu image(s): %zu ok, %zu failed\nmanifest: %s\n", summary.total,
              summary.ok, summary.failed, summary.manifest_path);
  return summary.failed == 0 ? kExitOk : kExitFailures;
}

// ---- report -----------------------------------------------------------------

struct ReportArgs {
  std::string calibration_dir;
  std::string manifest;
  std::string scores;
  std::string out_csv;
  std::string out_text;
};

int run_report(imdeg_ctx* ctx, const ReportArgs& args) {
  imdeg_report_options options{};
  options.calibration_dir = args.calibration_dir.empty() ? nullptr : args.calibration_dir.c_str();
  options.manifest_path = args.manifest.empty() ? nullptr : args.manifest.c_str();
  options.scores_path = args.scores.empty() ? nullptr : args.scores.c_str();
  options.out_csv = args.out_csv.empty() ? nullptr : args.out_csv.c_str();
  options.out_text = args.out_text.empty() ? nullptr : args.out_text.c_str();

  char* text = nullptr;
  imdeg_report_summary summary{};
  imdeg_status status = imdeg_report(ctx, &options, &text, &summary);
  if (status != IMDEG_OK) return report_failure(status);
  if (text != nullptr) {
    std::fputs(text, stdout);
    imdeg_string_free(text);
  }
  std::printf("%zu row(s), %zu non-monotone, %zu warning(s)\n", summary.rows,
              summary.non_monotone_rows, summary.warnings);
  return kExitOk;
}

// ---- validate / list ---------------------------------------------------------

int run_validate(imdeg_ctx* ctx) {
  char* violations = nullptr;
  size_t count = 0;
  imdeg_status status = imdeg_validate(ctx, &violations, &count);
  if (status != IMDEG_OK) return report_failure(status);
  if (violations != nullptr) {
    std::fputs(violations, stdout);
    imdeg_string_free(violations);
  }
  if (count > 0) {
    std::printf("registry validation: %zu violation(s)\n", count);
    return kExitFailures;
  }
  std::printf("registry validation: ok\n");
  return kExitOk;
}

int run_list(imdeg_ctx* ctx, const std::string& backend) {
  size_t count = 0;
  imdeg_status status =
      imdeg_operator_count(ctx, backend.empty() ? nullptr : backend.c_str(), &count);
  if (status != IMDEG_OK) return report_failure(status);
  std::printf("%-10s %-30s %-5s %-5s %-6s %-4s %-7s %s\n", "backend", "term", "group", "cause",
              "effect", "tier", "random", "availability");
  for (size_t i = 0; i < count; ++i) {
    imdeg_operator_info info;
    status = imdeg_operator_info_at(ctx, backend.empty() ? nullptr : backend.c_str(), i, &info);
    if (status != IMDEG_OK) return report_failure(status);
    std::printf("%-10s %-30s %-5s %-5s %-6s %-4d %-7s %s\n", info.backend, info.term,
                info.group, info.cause, info.effect, info.tier,
                info.stochastic ? "yes" : "no",
                info.available ? "available" : info.availability_note);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imdeg: taxonomy-annotated image degradation engine"};
  app.set_config("--config");
  app.require_subcommand(1);
  app.set_version_flag("--version", []() {
    return std::string("imdeg ") + imdeg_version() + " (" + imdeg_codec_versions() + ")";
  });

  std::string registry_path, schedules_path, assets_dir;
  app.add_option("--registry", registry_path, "Taxonomy registry CSV (default: built-in)");
  app.add_option("--schedules", schedules_path, "Parameter schedule JSON (default: built-in)");
  app.add_option("--assets", assets_dir, "Texture asset directory (default: $IMDEG_ASSETS)");

  CalibrateArgs cal;
  CLI::App* calibrate = app.add_subcommand("calibrate", "Measure severity axes on a reference set");
  calibrate->add_option("--in", cal.in_dir, "Reference image directory")->required();
  calibrate->add_option("--out", cal.out_dir, "Calibration output directory")->required();
  calibrate->add_option("--backend", cal.backend, "Operator backend")->required();
  calibrate->add_option("--term", cal.term, "Single operator (default: all runnable)");
  calibrate->add_option("--metric", cal.metric, "psnr, 1-ssim, or external:<name>")
      ->capture_default_str();
  calibrate->add_option("--scores", cal.scores, "Score file for external metrics");
  calibrate->add_option("--seed", cal.seed, "Measurement seed")->capture_default_str();
  calibrate->add_option("--jobs", cal.jobs, "Worker threads (0 = all)")->capture_default_str();
  calibrate->add_option("--m-max", cal.m_max, "Extrapolated canonical levels past the native 5")
      ->capture_default_str();
  calibrate->add_option("--step-policy", cal.step_policy, "Extrapolation step: last or mean")
      ->check(CLI::IsMember({"last", "mean"}))
      ->capture_default_str();

  ApplyArgs ap;
  CLI::App* apply = app.add_subcommand("apply", "Degrade one image");
  apply->add_option("--in", ap.input, "Input image")->required();
  apply->add_option("--out", ap.output, "Output image (.png or .jpg)")->required();
  apply->add_option("--mode", ap.mode, "native or canonical")
      ->check(CLI::IsMember({"native", "canonical"}))
      ->capture_default_str();
  apply->add_option("--backend", ap.backend, "Operator backend (native mode)");
  apply->add_option("--term", ap.term, "Operator term (native mode)");
  apply->add_option("--severity", ap.severity, "Native severity 1..5 (native mode)");
  apply->add_option("--level", ap.level, "Canonical level (canonical mode)");
  apply->add_option("--calibration", ap.calibration, "Calibration document (canonical mode)");
  apply->add_option("--seed", ap.seed, "Random stream seed")->capture_default_str();
  apply->add_option("--jpeg-quality", ap.jpeg_quality, "Quality for .jpg output")
      ->capture_default_str();

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Produce a degraded dataset + manifest");
  generate
      ->add_option("--protocol", gen.protocol,
                   "round_robin, cartesian, chain_factorial, or random_chains")
      ->capture_default_str();
  generate->add_option("--in", gen.in_dir, "Source image directory")->required();
  generate->add_option("--out", gen.out_dir, "Output dataset directory")->required();
  generate->add_option("--backend", gen.backend, "Backend filter (default: all)");
  generate->add_option("--terms", gen.terms, "Comma-separated term filter");
  generate->add_option("--chain", gen.chain,
                       "Ordered chain template backend/term,... (chain_factorial)");
  generate->add_option("--chain-length", gen.chain_length, "Groups per chain (random_chains)")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Global seed")->capture_default_str();
  generate->add_option("--jobs", gen.jobs, "Worker threads (0 = all)")->capture_default_str();
  generate->add_flag("--measure", gen.measure, "Record psnr/1-ssim strengths in the manifest");
  generate->add_flag("--include-unavailable", gen.include_unavailable,
                     "Plan gated operators too (their records fail)");
  generate->add_option("--format", gen.format, "Output format: png or jpeg")
      ->check(CLI::IsMember({"png", "jpeg"}))
      ->capture_default_str();
  generate->add_option("--jpeg-quality", gen.jpeg_quality, "Quality for jpeg output")
      ->capture_default_str();

  ReportArgs rep;
  CLI::App* report = app.add_subcommand("report", "Render per-operator severity tables");
  report->add_option("--calibration", rep.calibration_dir, "Calibration document directory");
  report->add_option("--manifest", rep.manifest, "Generation manifest with measurements");
  report->add_option("--scores", rep.scores, "External score file to merge");
  report->add_option("--csv", rep.out_csv, "Write the table as CSV to this path");
  report->add_option("--text", rep.out_text, "Write the aligned table to this path");

  CLI::App* validate = app.add_subcommand("validate", "Check the taxonomy registry");

  std::string list_backend;
  CLI::App* list = app.add_subcommand("list", "List operators with their annotations");
  list->add_option("--backend", list_backend, "Backend filter (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  imdeg_status status = IMDEG_OK;
  CtxPtr ctx = make_ctx(registry_path, schedules_path, assets_dir, &status);
  if (!ctx) return report_failure(status);

  if (calibrate->parsed()) return run_calibrate(ctx.get(), cal);
  if (apply->parsed()) return run_apply(ctx.get(), ap);
  if (generate->parsed()) return run_generate(ctx.get(), gen);
  if (report->parsed()) return run_report(ctx.get(), rep);
  if (validate->parsed()) return run_validate(ctx.get());
  if (list->parsed()) return run_list(ctx.get(), list_backend);
  return kExitUsage;
}
