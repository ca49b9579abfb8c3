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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"
#include "imdeg/parallel.hpp"
#include "imdeg/rng.hpp"

namespace imdeg {
namespace {

using nlohmann::json;

// Seed for one (image, level) measurement cell: folds the calibration seed,
// the image identifier, and the severity so no two cells share a stream.
std::uint64_t cell_seed(std::uint64_t seed, const std::string& image_id, int level) {
  std::uint64_t h = fnv1a64(image_id.data(), image_id.size());
  h = derive_stream_id_u64(h, seed);
  return derive_stream_id_u64(h, static_cast<std::uint64_t>(level));
}

const char* step_policy_name(StepPolicy policy) {
  return policy == StepPolicy::kMeanStep ? "mean_step" : "last_step";
}

StepPolicy parse_step_policy(const std::string& text) {
  if (text == "last_step") return StepPolicy::kLastStep;
  if (text == "mean_step") return StepPolicy::kMeanStep;
  throw_error(ErrorCode::kFormat, "unknown step policy: " + text);
}

}  // namespace

std::string image_digest(const Image& image) {
  Sha256 sha;
  std::uint32_t dims[2] = {static_cast<std::uint32_t>(image.width),
                           static_cast<std::uint32_t>(image.height)};
  sha.update(dims, sizeof(dims));
  sha.update(image.data.data(), image.data.size() * sizeof(float));
  return sha.hex_digest();
}

StrengthMeasurement measure_strengths(const DegradationEngine& engine,
                                      const std::vector<CalibrationImage>& images,
                                      const std::string& backend, const std::string& term,
                                      const MetricId& metric, std::uint64_t seed, int jobs) {
  if (images.empty()) {
    throw_error(ErrorCode::kArgument, "strength measurement needs at least one image");
  }
  if (metric.kind == MetricId::Kind::kExternal) {
    throw_error(ErrorCode::kArgument,
                "external metrics are not computable in-process; load a score file");
  }
  // Resolve the canonical operator key up front so desc/throw behavior does
  // not depend on which worker touches the operator first.
  const OperatorDescriptor& desc = engine.descriptor(backend, term);

  // Every (image, level) cell lands in a preallocated slot; the mean is then
  // reduced in index order, so the result is independent of worker count.
  std::vector<std::array<double, kSeverityLevels>> cells(images.size());
  parallel_for(images.size(), jobs, [&](std::size_t i) {
    const CalibrationImage& ref = images[i];
    for (int level = 1; level <= kSeverityLevels; ++level) {
      DegradationSpec spec;
      spec.backend = desc.backend;
      spec.term = desc.term;
      spec.severity = level;
      spec.seed = cell_seed(seed, ref.id, level);
      Image degraded = engine.apply(ref.image, spec);
      cells[i][level - 1] = strength(metric, ref.image, degraded);
    }
  });

  StrengthMeasurement out;
  out.backend = desc.backend;
  out.term = desc.term;
  out.metric = metric;
  out.n_images = static_cast<int>(images.size());
  out.seed = seed;
  out.schedule_hash = engine.schedules().content_hash();
  Sha256 set_digest;
  for (const CalibrationImage& ref : images) {
    std::string d = image_digest(ref.image);
    set_digest.update(ref.id.data(), ref.id.size());
    set_digest.update(d.data(), d.size());
  }
  out.image_set_digest = set_digest.hex_digest();
  for (int level = 0; level < kSeverityLevels; ++level) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) sum += cells[i][level];
    out.native_strengths[level] = sum / static_cast<double>(cells.size());
  }
  return out;
}

StrengthMeasurement measure_strengths_external(const std::vector<std::string>& image_ids,
                                               const std::string& backend,
                                               const std::string& term,
                                               const ExternalScores& scores,
                                               const std::string& schedule_hash) {
  if (image_ids.empty()) {
    throw_error(ErrorCode::kArgument, "strength measurement needs at least one image id");
  }
  StrengthMeasurement out;
  out.backend = backend;
  out.term = term;
  out.metric = MetricId{MetricId::Kind::kExternal, scores.metric_name()};
  out.n_images = static_cast<int>(image_ids.size());
  out.seed = 0;
  out.schedule_hash = schedule_hash;
  Sha256 set_digest;
  for (const std::string& id : image_ids) set_digest.update(id.data(), id.size());
  out.image_set_digest = set_digest.hex_digest();
  for (int level = 1; level <= kSeverityLevels; ++level) {
    double sum = 0.0;
    for (const std::string& id : image_ids) {
      std::string key = id + "_" + backend + "_" + term + "_s" + std::to_string(level);
      sum += scores.lookup(key);
    }
    out.native_strengths[level - 1] = sum / static_cast<double>(image_ids.size());
  }
  return out;
}

CanonicalAxis derive_canonical_axis(const StrengthMeasurement& measurement, int m_max,
                                    StepPolicy policy) {
  if (m_max < 0) throw_error(ErrorCode::kArgument, "extrapolation count cannot be negative");
  CanonicalAxis axis;
  axis.backend = measurement.backend;
  axis.term = measurement.term;
  axis.metric = measurement.metric;
  axis.native_strengths = measurement.native_strengths;
  axis.policy = policy;
  axis.extrapolated = m_max;
  axis.n_images = measurement.n_images;
  axis.image_set_digest = measurement.image_set_digest;
  axis.seed = measurement.seed;
  axis.schedule_hash = measurement.schedule_hash;

  const auto& d = measurement.native_strengths;
  axis.levels.assign(d.begin(), d.end());
  axis.step_delta = policy == StepPolicy::kMeanStep
                        ? (d[kSeverityLevels - 1] - d[0]) / (kSeverityLevels - 1)
                        : d[kSeverityLevels - 1] - d[kSeverityLevels - 2];
  if (m_max > 0) {
    // Extending the axis only makes sense when it still points toward
    // "stronger" at its end.
    bool ok = stronger_is_higher(measurement.metric) ? axis.step_delta > 0.0
                                                     : axis.step_delta < 0.0;
    if (!ok) {
      throw_error(ErrorCode::kDegenerateAxis,
                  measurement.backend + "/" + measurement.term + " (" +
                      measurement.metric.str() +
                      "): step delta does not move toward stronger degradation; the axis "
                      "cannot be extrapolated");
    }
    for (int m = 1; m <= m_max; ++m) {
      axis.levels.push_back(d[kSeverityLevels - 1] + m * axis.step_delta);
    }
  }
  return axis;
}

NativeMapping map_canonical_to_native(const CanonicalAxis& axis, int canonical_level) {
  if (canonical_level < 1 || canonical_level > static_cast<int>(axis.levels.size())) {
    throw_error(ErrorCode::kArgument,
                "canonical level " + std::to_string(canonical_level) + " outside axis of " +
                    std::to_string(axis.levels.size()) + " levels");
  }
  if (canonical_level > kSeverityLevels) {
    return NativeMapping{kSeverityLevels, true};
  }
  double target = axis.levels[canonical_level - 1];
  int best = 1;
  double best_dist = std::abs(axis.native_strengths[0] - target);
  for (int l = 2; l <= kSeverityLevels; ++l) {
    double dist = std::abs(axis.native_strengths[l - 1] - target);
    if (dist < best_dist) {  // strict: ties keep the weaker level
      best_dist = dist;
      best = l;
    }
  }
  return NativeMapping{best, false};
}

std::string calibration_to_json(const CanonicalAxis& axis) {
  json doc;
  doc["version"] = "imdeg-calibration-v1";
  doc["backend"] = axis.backend;
  doc["term"] = axis.term;
  doc["metric"] = axis.metric.str();
  doc["n_images"] = axis.n_images;
  doc["image_set_digest"] = axis.image_set_digest;
  doc["seed"] = axis.seed;
  doc["schedule_hash"] = axis.schedule_hash;
  doc["native_strengths"] = axis.native_strengths;
  doc["levels"] = axis.levels;
  doc["step_delta"] = axis.step_delta;
  doc["step_policy"] = step_policy_name(axis.policy);
  doc["extrapolated"] = axis.extrapolated;
  return doc.dump(2) + "\n";
}

CanonicalAxis calibration_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("calibration document is not valid JSON: ") +
                                        e.what());
  }
  try {
    if (doc.at("version").get<std::string>() != "imdeg-calibration-v1") {
      throw_error(ErrorCode::kFormat, "unsupported calibration document version");
    }
    CanonicalAxis axis;
    axis.backend = doc.at("backend").get<std::string>();
    axis.term = doc.at("term").get<std::string>();
    axis.metric = parse_metric(doc.at("metric").get<std::string>());
    axis.n_images = doc.at("n_images").get<int>();
    axis.image_set_digest = doc.at("image_set_digest").get<std::string>();
    axis.seed = doc.at("seed").get<std::uint64_t>();
    axis.schedule_hash = doc.at("schedule_hash").get<std::string>();
    auto strengths = doc.at("native_strengths").get<std::vector<double>>();
    if (strengths.size() != kSeverityLevels) {
      throw_error(ErrorCode::kFormat, "calibration document must carry exactly " +
                                          std::to_string(kSeverityLevels) +
                                          " native strengths");
    }
    std::copy(strengths.begin(), strengths.end(), axis.native_strengths.begin());
    axis.levels = doc.at("levels").get<std::vector<double>>();
    if (axis.levels.size() < kSeverityLevels) {
      throw_error(ErrorCode::kFormat, "calibration document carries a truncated level axis");
    }
    axis.step_delta = doc.at("step_delta").get<double>();
    axis.policy = parse_step_policy(doc.at("step_policy").get<std::string>());
    axis.extrapolated = doc.at("extrapolated").get<int>();
    return axis;
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("calibration document misses a field: ") +
                                        e.what());
  }
}

void save_calibration(const CanonicalAxis& axis, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(ErrorCode::kIo, "cannot open for writing: " + path);
  out << calibration_to_json(axis);
  if (!out) throw_error(ErrorCode::kIo, "write failed: " + path);
}

CanonicalAxis load_calibration(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::kIo, "cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return calibration_from_json(buf.str());
}

std::string calibration_filename(const std::string& backend, const std::string& term,
                                 const MetricId& metric) {
  std::string slug = metric.str();
  for (char& c : slug) {
    if (c == '-' || c == ':') c = '_';
  }
  return backend + "_" + term + "_" + slug + ".json";
}

}  // namespace imdeg
