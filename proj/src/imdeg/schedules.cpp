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

#include "imdeg/schedules.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "imdeg/embedded_data.hpp"
#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"
#include "imdeg/taxonomy.hpp"

namespace imdeg {

using nlohmann::json;

double OperatorSchedule::value(int severity, std::size_t param_index) const {
  const std::vector<double>& t = tuple(severity);
  if (param_index >= t.size()) {
    throw_error(ErrorCode::kInternal,
                "schedule parameter index " + std::to_string(param_index) + " out of range");
  }
  return t[param_index];
}

double OperatorSchedule::value(int severity, const std::string& param_name) const {
  for (std::size_t i = 0; i < param_names.size(); ++i) {
    if (param_names[i] == param_name) return value(severity, i);
  }
  throw_error(ErrorCode::kInternal, "schedule has no parameter named '" + param_name + "'");
}

const std::vector<double>& OperatorSchedule::tuple(int severity) const {
  if (severity < 1 || severity > kSeverityLevels) {
    throw_error(ErrorCode::kArgument,
                "severity must be in [1, " + std::to_string(kSeverityLevels) + "], got " +
                    std::to_string(severity));
  }
  return levels[severity - 1];
}

ScheduleSet ScheduleSet::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("schedule file is not valid JSON: ") + e.what());
  }
  ScheduleSet out;
  out.content_hash_ = sha256_hex(text);
  try {
    out.version_ = doc.at("version").get<std::string>();
    for (const auto& [backend, terms] : doc.at("backends").items()) {
      for (const auto& [term, spec] : terms.items()) {
        OperatorSchedule sched;
        sched.param_names = spec.at("params").get<std::vector<std::string>>();
        const json& levels = spec.at("levels");
        if (levels.size() != kSeverityLevels) {
          throw_error(ErrorCode::kFormat, "schedule for (" + backend + ", " + term + ") has " +
                                              std::to_string(levels.size()) +
                                              " levels, expected 5");
        }
        for (int i = 0; i < kSeverityLevels; ++i) {
          sched.levels[i] = levels[i].get<std::vector<double>>();
          if (sched.levels[i].size() != sched.param_names.size()) {
            throw_error(ErrorCode::kFormat,
                        "schedule for (" + backend + ", " + term + ") level " +
                            std::to_string(i + 1) + " does not match its parameter list");
          }
        }
        out.table_[{normalize_key(backend), normalize_key(term)}] = std::move(sched);
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("schedule file malformed: ") + e.what());
  }
  return out;
}

ScheduleSet ScheduleSet::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::kIo, "cannot open schedule file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

const ScheduleSet& ScheduleSet::embedded() {
  static const ScheduleSet kEmbedded = from_json_text(embedded_schedules_json());
  return kEmbedded;
}

bool ScheduleSet::contains(const std::string& backend, const std::string& term) const {
  return table_.count({normalize_key(backend), normalize_key(term)}) > 0;
}

const OperatorSchedule& ScheduleSet::lookup(const std::string& backend,
                                            const std::string& term) const {
  auto it = table_.find({normalize_key(backend), normalize_key(term)});
  if (it == table_.end()) {
    throw_error(ErrorCode::kNotFound,
                "no schedule for backend '" + backend + "', term '" + term + "'");
  }
  return it->second;
}

}  // namespace imdeg
