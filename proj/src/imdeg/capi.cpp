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

// C boundary of the library: translates between opaque handles plus status
// codes on the outside and C++ objects plus exceptions on the inside.

#include "imdeg/imdeg.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "imdeg/benchgen.hpp"
#include "imdeg/calibration.hpp"
#include "imdeg/degradations.hpp"
#include "imdeg/error.hpp"
#include "imdeg/metrics.hpp"
#include "imdeg/report.hpp"
#include "imdeg/taxonomy.hpp"

namespace {

thread_local std::string g_last_error;

imdeg_status status_from(imdeg::ErrorCode code) {
  switch (code) {
    case imdeg::ErrorCode::kIo: return IMDEG_ERR_IO;
    case imdeg::ErrorCode::kFormat: return IMDEG_ERR_FORMAT;
    case imdeg::ErrorCode::kArgument: return IMDEG_ERR_ARGUMENT;
    case imdeg::ErrorCode::kNotFound: return IMDEG_ERR_NOT_FOUND;
    case imdeg::ErrorCode::kUnavailableFeature: return IMDEG_ERR_UNAVAILABLE;
    case imdeg::ErrorCode::kShape: return IMDEG_ERR_SHAPE;
    case imdeg::ErrorCode::kDegenerateAxis: return IMDEG_ERR_DEGENERATE_AXIS;
    case imdeg::ErrorCode::kMetricMismatch: return IMDEG_ERR_METRIC_MISMATCH;
    case imdeg::ErrorCode::kInternal: return IMDEG_ERR_INTERNAL;
  }
  return IMDEG_ERR_INTERNAL;
}

imdeg_status fail_argument(const char* message) {
  g_last_error = message;
  return IMDEG_ERR_ARGUMENT;
}

// Copies a std::string into a malloc'd buffer for char** out-parameters.
char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> items;
  if (text == nullptr) return items;
  std::string current;
  for (const char* p = text;; ++p) {
    if (*p == ',' || *p == '\0') {
      // Trim surrounding spaces.
      std::size_t b = current.find_first_not_of(' ');
      std::size_t e = current.find_last_not_of(' ');
      if (b != std::string::npos) items.push_back(current.substr(b, e - b + 1));
      current.clear();
      if (*p == '\0') break;
    } else {
      current += *p;
    }
  }
  return items;
}

}  // namespace

// All boundary functions funnel exceptions through these two macros.
#define IMDEG_CAPI_BEGIN try {
#define IMDEG_CAPI_END                        \
  g_last_error.clear();                       \
  return IMDEG_OK;                            \
  }                                           \
  catch (const imdeg::Error& e) {             \
    g_last_error = e.what();                  \
    return status_from(e.code());             \
  }                                           \
  catch (const std::exception& e) {           \
    g_last_error = e.what();                  \
    return IMDEG_ERR_INTERNAL;                \
  }                                           \
  catch (...) {                               \
    g_last_error = "unknown failure";         \
    return IMDEG_ERR_INTERNAL;                \
  }

struct imdeg_ctx {
  // Materialized per-operator strings so imdeg_operator_info can hand out
  // stable const char* pointers for the context's lifetime.
  struct InfoRecord {
    std::string backend;
    std::string term;
    std::string note;
    std::string group;
    std::string group_name;
    std::string cause;
    std::string effect;
    std::string tv_subtype;
    int tier = 1;
    int stochastic = 0;
    int monotone = IMDEG_MONOTONE_NONE;
    int available = 1;
  };

  explicit imdeg_ctx(imdeg::DegradationEngine eng) : engine(std::move(eng)) {
    schedule_hash = engine.schedules().content_hash();
    for (const imdeg::OperatorDescriptor& d : engine.list_all_operators()) {
      InfoRecord rec;
      rec.backend = d.backend;
      rec.term = d.term;
      rec.note = d.availability_note;
      rec.tier = static_cast<int>(d.tier);
      rec.stochastic = d.stochastic ? 1 : 0;
      switch (d.monotone) {
        case imdeg::MonotoneDesignation::kNone: rec.monotone = IMDEG_MONOTONE_NONE; break;
        case imdeg::MonotoneDesignation::kNonStrict:
          rec.monotone = IMDEG_MONOTONE_NON_STRICT;
          break;
        case imdeg::MonotoneDesignation::kStrict: rec.monotone = IMDEG_MONOTONE_STRICT; break;
      }
      rec.available = d.available ? 1 : 0;
      const imdeg::TaxonomyEntry& entry = engine.taxonomy().lookup(d.backend, d.term);
      rec.group = entry.group;
      rec.group_name = imdeg::Taxonomy::group(entry.group).name;
      rec.cause = imdeg::cause_set_code(entry.causes);
      rec.effect = entry.effect.has_value() ? imdeg::effect_code(*entry.effect) : "--";
      rec.tv_subtype = entry.tv_subtype;
      infos.push_back(std::move(rec));
    }
  }

  void fill(const InfoRecord& rec, imdeg_operator_info* out) const {
    out->backend = rec.backend.c_str();
    out->term = rec.term.c_str();
    out->tier = rec.tier;
    out->stochastic = rec.stochastic;
    out->monotone = rec.monotone;
    out->available = rec.available;
    out->availability_note = rec.note.c_str();
    out->group = rec.group.c_str();
    out->group_name = rec.group_name.c_str();
    out->cause = rec.cause.c_str();
    out->effect = rec.effect.c_str();
    out->tv_subtype = rec.tv_subtype.c_str();
  }

  // Indexes of the operators selected by a backend filter (NULL/"": all).
  std::vector<std::size_t> selection(const char* backend) const {
    std::vector<std::size_t> picks;
    std::string want = backend == nullptr ? "" : imdeg::normalize_key(backend);
    for (std::size_t i = 0; i < infos.size(); ++i) {
      if (want.empty() || imdeg::normalize_key(infos[i].backend) == want) picks.push_back(i);
    }
    if (picks.empty() && !want.empty()) {
      imdeg::throw_error(imdeg::ErrorCode::kNotFound,
                         std::string("unknown backend: ") + backend);
    }
    return picks;
  }

  imdeg::DegradationEngine engine;
  std::string schedule_hash;
  std::vector<InfoRecord> infos;
};

struct imdeg_image {
  imdeg::Image image;
};

struct imdeg_calibration {
  imdeg::CanonicalAxis axis;
  std::string metric_str;
};

extern "C" {

const char* imdeg_version(void) { return "1.0.0"; }

const char* imdeg_codec_versions(void) {
  static const std::string versions =
      std::string(imdeg::png_codec_version()) + "; " + imdeg::jpeg_codec_version();
  return versions.c_str();
}

const char* imdeg_status_name(imdeg_status status) {
  switch (status) {
    case IMDEG_OK: return "ok";
    case IMDEG_ERR_IO: return "io";
    case IMDEG_ERR_FORMAT: return "format";
    case IMDEG_ERR_ARGUMENT: return "argument";
    case IMDEG_ERR_NOT_FOUND: return "not_found";
    case IMDEG_ERR_UNAVAILABLE: return "unavailable_feature";
    case IMDEG_ERR_SHAPE: return "shape";
    case IMDEG_ERR_DEGENERATE_AXIS: return "degenerate_axis";
    case IMDEG_ERR_METRIC_MISMATCH: return "metric_mismatch";
    case IMDEG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* imdeg_last_error(void) { return g_last_error.c_str(); }

void imdeg_string_free(char* text) { std::free(text); }

imdeg_status imdeg_ctx_create(imdeg_ctx** out) {
  if (out == nullptr) return fail_argument("out must not be NULL");
  IMDEG_CAPI_BEGIN
  *out = new imdeg_ctx(imdeg::DegradationEngine());
  IMDEG_CAPI_END
}

imdeg_status imdeg_ctx_create_custom(const char* registry_csv_path,
                                     const char* schedules_json_path, const char* assets_dir,
                                     imdeg_ctx** out) {
  if (out == nullptr) return fail_argument("out must not be NULL");
  IMDEG_CAPI_BEGIN
  imdeg::Taxonomy taxonomy = registry_csv_path != nullptr
                                 ? imdeg::Taxonomy::from_file(registry_csv_path)
                                 : imdeg::Taxonomy::embedded();
  imdeg::ScheduleSet schedules = schedules_json_path != nullptr
                                     ? imdeg::ScheduleSet::from_file(schedules_json_path)
                                     : imdeg::ScheduleSet::embedded();
  std::string assets;
  if (assets_dir != nullptr) {
    assets = assets_dir;
  } else if (const char* env = std::getenv("IMDEG_ASSETS")) {
    assets = env;
  }
  *out = new imdeg_ctx(
      imdeg::DegradationEngine(std::move(taxonomy), std::move(schedules), std::move(assets)));
  IMDEG_CAPI_END
}

void imdeg_ctx_destroy(imdeg_ctx* ctx) { delete ctx; }

const char* imdeg_ctx_schedule_hash(const imdeg_ctx* ctx) {
  return ctx != nullptr ? ctx->schedule_hash.c_str() : "";
}

imdeg_status imdeg_image_load(const char* path, imdeg_image** out) {
  if (path == nullptr || out == nullptr) return fail_argument("path/out must not be NULL");
  IMDEG_CAPI_BEGIN
  *out = new imdeg_image{imdeg::load_image(path)};
  IMDEG_CAPI_END
}

imdeg_status imdeg_image_create(int width, int height, imdeg_image** out) {
  if (out == nullptr) return fail_argument("out must not be NULL");
  IMDEG_CAPI_BEGIN
  *out = new imdeg_image{imdeg::Image(width, height)};
  IMDEG_CAPI_END
}

void imdeg_image_destroy(imdeg_image* image) { delete image; }

int imdeg_image_width(const imdeg_image* image) {
  return image != nullptr ? image->image.width : 0;
}

int imdeg_image_height(const imdeg_image* image) {
  return image != nullptr ? image->image.height : 0;
}

float* imdeg_image_data(imdeg_image* image) {
  return image != nullptr ? image->image.data.data() : nullptr;
}

imdeg_status imdeg_image_save_png(const imdeg_image* image, const char* path) {
  if (image == nullptr || path == nullptr) return fail_argument("image/path must not be NULL");
  IMDEG_CAPI_BEGIN
  imdeg::save_png(image->image, path);
  IMDEG_CAPI_END
}

imdeg_status imdeg_image_save_jpeg(const imdeg_image* image, const char* path, int quality) {
  if (image == nullptr || path == nullptr) return fail_argument("image/path must not be NULL");
  IMDEG_CAPI_BEGIN
  imdeg::save_jpeg(image->image, path, quality);
  IMDEG_CAPI_END
}

imdeg_status imdeg_apply(imdeg_ctx* ctx, const imdeg_image* input,
                         const imdeg_chain_step* step, imdeg_image** out) {
  return imdeg_apply_chain(ctx, input, step, 1, out);
}

imdeg_status imdeg_apply_chain(imdeg_ctx* ctx, const imdeg_image* input,
                               const imdeg_chain_step* steps, size_t n_steps,
                               imdeg_image** out) {
  if (ctx == nullptr || input == nullptr || steps == nullptr || out == nullptr) {
    return fail_argument("ctx/input/steps/out must not be NULL");
  }
  if (n_steps == 0) return fail_argument("chain must have at least one step");
  IMDEG_CAPI_BEGIN
  std::vector<imdeg::DegradationSpec> chain;
  chain.reserve(n_steps);
  for (size_t i = 0; i < n_steps; ++i) {
    if (steps[i].backend == nullptr || steps[i].term == nullptr) {
      imdeg::throw_error(imdeg::ErrorCode::kArgument, "chain step backend/term must be set");
    }
    chain.push_back(imdeg::DegradationSpec{steps[i].backend, steps[i].term, steps[i].severity,
                                           steps[i].seed});
  }
  *out = new imdeg_image{ctx->engine.apply_chain(input->image, chain)};
  IMDEG_CAPI_END
}

imdeg_status imdeg_psnr(const imdeg_image* a, const imdeg_image* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return fail_argument("a/b/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  *out = imdeg::psnr(a->image, b->image);
  IMDEG_CAPI_END
}

imdeg_status imdeg_ssim(const imdeg_image* a, const imdeg_image* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return fail_argument("a/b/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  *out = imdeg::ssim(a->image, b->image);
  IMDEG_CAPI_END
}

imdeg_status imdeg_operator_count(const imdeg_ctx* ctx, const char* backend, size_t* out) {
  if (ctx == nullptr || out == nullptr) return fail_argument("ctx/out must not be NULL");
  IMDEG_CAPI_BEGIN
  *out = ctx->selection(backend).size();
  IMDEG_CAPI_END
}

imdeg_status imdeg_operator_info_at(const imdeg_ctx* ctx, const char* backend, size_t index,
                                    imdeg_operator_info* out) {
  if (ctx == nullptr || out == nullptr) return fail_argument("ctx/out must not be NULL");
  IMDEG_CAPI_BEGIN
  std::vector<std::size_t> picks = ctx->selection(backend);
  if (index >= picks.size()) {
    imdeg::throw_error(imdeg::ErrorCode::kArgument,
                       "operator index " + std::to_string(index) + " out of range (" +
                           std::to_string(picks.size()) + " operators)");
  }
  ctx->fill(ctx->infos[picks[index]], out);
  IMDEG_CAPI_END
}

imdeg_status imdeg_operator_info_get(const imdeg_ctx* ctx, const char* backend,
                                     const char* term, imdeg_operator_info* out) {
  if (ctx == nullptr || backend == nullptr || term == nullptr || out == nullptr) {
    return fail_argument("ctx/backend/term/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  const imdeg::OperatorDescriptor& desc = ctx->engine.descriptor(backend, term);
  for (const imdeg_ctx::InfoRecord& rec : ctx->infos) {
    if (rec.backend == desc.backend && rec.term == desc.term) {
      ctx->fill(rec, out);
      g_last_error.clear();
      return IMDEG_OK;
    }
  }
  imdeg::throw_error(imdeg::ErrorCode::kInternal, "descriptor without info record");
  IMDEG_CAPI_END
}

imdeg_status imdeg_calibrate(imdeg_ctx* ctx, const char* const* image_paths, size_t n_images,
                             const char* backend, const char* term, const char* metric,
                             const char* scores_path, uint64_t seed, int jobs, int m_max,
                             int step_policy, imdeg_calibration** out) {
  if (ctx == nullptr || image_paths == nullptr || backend == nullptr || term == nullptr ||
      metric == nullptr || out == nullptr) {
    return fail_argument("ctx/image_paths/backend/term/metric/out must not be NULL");
  }
  if (step_policy != IMDEG_STEP_LAST && step_policy != IMDEG_STEP_MEAN) {
    return fail_argument("step_policy must be IMDEG_STEP_LAST or IMDEG_STEP_MEAN");
  }
  IMDEG_CAPI_BEGIN
  imdeg::MetricId metric_id = imdeg::parse_metric(metric);
  imdeg::StrengthMeasurement measurement;
  if (metric_id.kind == imdeg::MetricId::Kind::kExternal) {
    if (scores_path == nullptr) {
      imdeg::throw_error(imdeg::ErrorCode::kArgument,
                         "external metrics need a score file (scores_path)");
    }
    imdeg::ExternalScores scores = imdeg::ExternalScores::from_file(scores_path);
    scores.require_metric(metric_id.external_name);
    std::vector<std::string> ids;
    ids.reserve(n_images);
    for (size_t i = 0; i < n_images; ++i) {
      ids.push_back(std::filesystem::path(image_paths[i]).stem().string());
    }
    const imdeg::OperatorDescriptor& desc = ctx->engine.descriptor(backend, term);
    measurement = imdeg::measure_strengths_external(ids, desc.backend, desc.term, scores,
                                                    ctx->schedule_hash);
  } else {
    std::vector<imdeg::CalibrationImage> images;
    images.reserve(n_images);
    for (size_t i = 0; i < n_images; ++i) {
      imdeg::CalibrationImage ref;
      ref.id = std::filesystem::path(image_paths[i]).stem().string();
      ref.image = imdeg::load_image(image_paths[i]);
      images.push_back(std::move(ref));
    }
    measurement =
        imdeg::measure_strengths(ctx->engine, images, backend, term, metric_id, seed, jobs);
  }
  imdeg::StepPolicy policy =
      step_policy == IMDEG_STEP_MEAN ? imdeg::StepPolicy::kMeanStep : imdeg::StepPolicy::kLastStep;
  imdeg::CanonicalAxis axis = imdeg::derive_canonical_axis(measurement, m_max, policy);
  auto* handle = new imdeg_calibration{std::move(axis), {}};
  handle->metric_str = handle->axis.metric.str();
  *out = handle;
  IMDEG_CAPI_END
}

imdeg_status imdeg_calibration_load(const char* path, imdeg_calibration** out) {
  if (path == nullptr || out == nullptr) return fail_argument("path/out must not be NULL");
  IMDEG_CAPI_BEGIN
  auto* handle = new imdeg_calibration{imdeg::load_calibration(path), {}};
  handle->metric_str = handle->axis.metric.str();
  *out = handle;
  IMDEG_CAPI_END
}

imdeg_status imdeg_calibration_save(const imdeg_calibration* calibration, const char* path) {
  if (calibration == nullptr || path == nullptr) {
    return fail_argument("calibration/path must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  imdeg::save_calibration(calibration->axis, path);
  IMDEG_CAPI_END
}

void imdeg_calibration_destroy(imdeg_calibration* calibration) { delete calibration; }

const char* imdeg_calibration_backend(const imdeg_calibration* calibration) {
  return calibration != nullptr ? calibration->axis.backend.c_str() : "";
}

const char* imdeg_calibration_term(const imdeg_calibration* calibration) {
  return calibration != nullptr ? calibration->axis.term.c_str() : "";
}

const char* imdeg_calibration_metric(const imdeg_calibration* calibration) {
  return calibration != nullptr ? calibration->metric_str.c_str() : "";
}

size_t imdeg_calibration_level_count(const imdeg_calibration* calibration) {
  return calibration != nullptr ? calibration->axis.levels.size() : 0;
}

imdeg_status imdeg_calibration_level(const imdeg_calibration* calibration, int canonical_level,
                                     double* out) {
  if (calibration == nullptr || out == nullptr) {
    return fail_argument("calibration/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  const auto& levels = calibration->axis.levels;
  if (canonical_level < 1 || canonical_level > static_cast<int>(levels.size())) {
    imdeg::throw_error(imdeg::ErrorCode::kArgument,
                       "canonical level " + std::to_string(canonical_level) +
                           " outside axis of " + std::to_string(levels.size()) + " levels");
  }
  *out = levels[canonical_level - 1];
  IMDEG_CAPI_END
}

imdeg_status imdeg_calibration_native_strength(const imdeg_calibration* calibration,
                                               int native_level, double* out) {
  if (calibration == nullptr || out == nullptr) {
    return fail_argument("calibration/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  if (native_level < 1 || native_level > imdeg::kSeverityLevels) {
    imdeg::throw_error(imdeg::ErrorCode::kArgument, "native level must be in [1, 5]");
  }
  *out = calibration->axis.native_strengths[native_level - 1];
  IMDEG_CAPI_END
}

double imdeg_calibration_step_delta(const imdeg_calibration* calibration) {
  return calibration != nullptr ? calibration->axis.step_delta : 0.0;
}

imdeg_status imdeg_map_canonical(const imdeg_calibration* calibration, int canonical_level,
                                 int* native_level, int* saturated) {
  if (calibration == nullptr || native_level == nullptr) {
    return fail_argument("calibration/native_level must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  imdeg::NativeMapping mapping =
      imdeg::map_canonical_to_native(calibration->axis, canonical_level);
  *native_level = mapping.native_level;
  if (saturated != nullptr) *saturated = mapping.saturated ? 1 : 0;
  IMDEG_CAPI_END
}

imdeg_status imdeg_apply_canonical(imdeg_ctx* ctx, const imdeg_image* input,
                                   const imdeg_calibration* calibration, int canonical_level,
                                   uint64_t seed, imdeg_image** out, int* native_level,
                                   int* saturated) {
  if (ctx == nullptr || input == nullptr || calibration == nullptr || out == nullptr) {
    return fail_argument("ctx/input/calibration/out must not be NULL");
  }
  IMDEG_CAPI_BEGIN
  imdeg::NativeMapping mapping =
      imdeg::map_canonical_to_native(calibration->axis, canonical_level);
  imdeg::DegradationSpec spec{calibration->axis.backend, calibration->axis.term,
                              mapping.native_level, seed};
  *out = new imdeg_image{ctx->engine.apply(input->image, spec)};
  if (native_level != nullptr) *native_level = mapping.native_level;
  if (saturated != nullptr) *saturated = mapping.saturated ? 1 : 0;
  IMDEG_CAPI_END
}

imdeg_status imdeg_generate(imdeg_ctx* ctx, const imdeg_generate_options* options,
                            imdeg_generate_summary* out) {
  if (ctx == nullptr || options == nullptr || out == nullptr) {
    return fail_argument("ctx/options/out must not be NULL");
  }
  if (options->protocol == nullptr || options->input_dir == nullptr ||
      options->output_dir == nullptr) {
    return fail_argument("protocol/input_dir/output_dir must be set");
  }
  IMDEG_CAPI_BEGIN
  imdeg::Protocol protocol = imdeg::parse_protocol(options->protocol);

  std::vector<std::string> image_ids;
  for (auto& [id, path] : imdeg::list_input_images(options->input_dir)) {
    image_ids.push_back(id);
  }
  if (image_ids.empty()) {
    imdeg::throw_error(imdeg::ErrorCode::kArgument,
                       std::string("no input images in ") + options->input_dir);
  }

  imdeg::GenerationPlan plan;
  if (protocol == imdeg::Protocol::kRoundRobin || protocol == imdeg::Protocol::kCartesian) {
    std::vector<imdeg::OperatorKey> operators;
    std::vector<std::string> term_filter = split_list(options->terms);
    for (std::size_t i : ctx->selection(options->backend)) {
      const imdeg_ctx::InfoRecord& rec = ctx->infos[i];
      if (!rec.available && options->include_unavailable == 0) continue;
      if (!term_filter.empty()) {
        bool wanted = false;
        for (const std::string& t : term_filter) {
          wanted = wanted || imdeg::normalize_key(t) == imdeg::normalize_key(rec.term);
        }
        if (!wanted) continue;
      }
      operators.push_back({rec.backend, rec.term});
    }
    if (operators.empty()) {
      imdeg::throw_error(imdeg::ErrorCode::kArgument,
                         "operator selection is empty (backend/terms filters)");
    }
    plan = protocol == imdeg::Protocol::kRoundRobin
               ? imdeg::plan_round_robin(image_ids, operators, options->seed)
               : imdeg::plan_cartesian(image_ids, operators, options->seed);
  } else if (protocol == imdeg::Protocol::kChainFactorial) {
    std::vector<imdeg::OperatorKey> chain_template;
    for (const std::string& element : split_list(options->chain)) {
      std::size_t slash = element.find('/');
      if (slash == std::string::npos) {
        imdeg::throw_error(imdeg::ErrorCode::kArgument,
                           "chain element must be backend/term: " + element);
      }
      chain_template.push_back({element.substr(0, slash), element.substr(slash + 1)});
    }
    if (chain_template.empty()) {
      imdeg::throw_error(imdeg::ErrorCode::kArgument,
                         "chain_factorial needs a chain template (backend/term,...)");
    }
    plan = imdeg::plan_chain_factorial(image_ids, chain_template, options->seed);
  } else {
    int chain_length = options->chain_length > 0 ? options->chain_length : 2;
    plan = imdeg::plan_random_chains(ctx->engine, image_ids, chain_length, options->seed);
  }

  imdeg::ExecOptions exec;
  exec.input_dir = options->input_dir;
  exec.output_dir = options->output_dir;
  exec.jobs = options->jobs;
  exec.measure = options->measure != 0;
  exec.format = options->format != nullptr && options->format[0] != '\0' ? options->format
                                                                         : "png";
  exec.jpeg_quality = options->jpeg_quality > 0 ? options->jpeg_quality : 95;
  imdeg::ExecSummary summary = imdeg::execute_plan(ctx->engine, plan, exec);

  out->total = summary.total;
  out->ok = summary.ok;
  out->failed = summary.failed;
  std::snprintf(out->manifest_path, sizeof(out->manifest_path), "%s",
                summary.manifest_path.c_str());
  IMDEG_CAPI_END
}

imdeg_status imdeg_report(imdeg_ctx* ctx, const imdeg_report_options* options, char** text_out,
                          imdeg_report_summary* out) {
  if (ctx == nullptr || options == nullptr) {
    return fail_argument("ctx/options must not be NULL");
  }
  bool have_calib = options->calibration_dir != nullptr && options->calibration_dir[0] != '\0';
  bool have_manifest = options->manifest_path != nullptr && options->manifest_path[0] != '\0';
  if (have_calib == have_manifest) {
    return fail_argument("set exactly one of calibration_dir and manifest_path");
  }
  IMDEG_CAPI_BEGIN
  imdeg::SeverityReport report;
  if (have_calib) {
    report = imdeg::report_from_calibrations(options->calibration_dir);
  } else {
    imdeg::ExternalScores scores;
    bool have_scores = options->scores_path != nullptr && options->scores_path[0] != '\0';
    if (have_scores) scores = imdeg::ExternalScores::from_file(options->scores_path);
    report = imdeg::report_from_manifest(options->manifest_path,
                                         have_scores ? &scores : nullptr);
  }
  if (options->out_csv != nullptr && options->out_csv[0] != '\0') {
    std::ofstream csv(options->out_csv, std::ios::binary);
    if (!csv) {
      imdeg::throw_error(imdeg::ErrorCode::kIo,
                         std::string("cannot open for writing: ") + options->out_csv);
    }
    csv << report.csv();
  }
  if (options->out_text != nullptr && options->out_text[0] != '\0') {
    std::ofstream text(options->out_text, std::ios::binary);
    if (!text) {
      imdeg::throw_error(imdeg::ErrorCode::kIo,
                         std::string("cannot open for writing: ") + options->out_text);
    }
    text << report.text();
  }
  if (text_out != nullptr) *text_out = copy_out(report.text());
  if (out != nullptr) {
    out->rows = report.rows.size();
    out->non_monotone_rows = 0;
    for (const imdeg::SeverityRow& row : report.rows) {
      if (row.non_monotone) out->non_monotone_rows += 1;
    }
    out->warnings = report.warnings.size();
  }
  IMDEG_CAPI_END
}

imdeg_status imdeg_validate(const imdeg_ctx* ctx, char** violations_out, size_t* count) {
  if (ctx == nullptr || count == nullptr) return fail_argument("ctx/count must not be NULL");
  IMDEG_CAPI_BEGIN
  std::vector<std::string> violations =
      imdeg::validate_registry(ctx->engine.taxonomy(), ctx->engine.operator_keys());
  *count = violations.size();
  if (violations_out != nullptr) {
    std::string joined;
    for (const std::string& v : violations) {
      joined += v;
      joined += '\n';
    }
    *violations_out = copy_out(joined);
  }
  IMDEG_CAPI_END
}

}  // extern "C"
