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

#ifndef IMDEG_SCHEDULES_HPP_
#define IMDEG_SCHEDULES_HPP_

#include <array>
#include <map>
#include <string>
#include <vector>

namespace imdeg {

inline constexpr int kSeverityLevels = 5;

// Pinned five-level parameter tuple for one operator.
struct OperatorSchedule {
  std::vector<std::string> param_names;
  std::array<std::vector<double>, kSeverityLevels> levels;

  // Parameter value at a severity in [1, 5], positional or by name.
  double value(int severity, std::size_t param_index) const;
  double value(int severity, const std::string& param_name) const;
  const std::vector<double>& tuple(int severity) const;
};

// The full schedule data file: versioned so that a severity level keeps its
// meaning across releases, content-hashed so calibrations and manifests can
// record exactly which numbers produced them.
class ScheduleSet {
 public:
  static ScheduleSet from_json_text(const std::string& text);
  static ScheduleSet from_file(const std::string& path);
  static const ScheduleSet& embedded();

  bool contains(const std::string& backend, const std::string& term) const;
  // Throws kNotFound for unknown keys (normalized fallback like the
  // taxonomy: case and separators are forgiven).
  const OperatorSchedule& lookup(const std::string& backend, const std::string& term) const;

  const std::string& version() const { return version_; }
  // SHA-256 of the source text these schedules were parsed from.
  const std::string& content_hash() const { return content_hash_; }

 private:
  std::string version_;
  std::string content_hash_;
  std::map<std::pair<std::string, std::string>, OperatorSchedule> table_;  // normalized keys
};

}  // namespace imdeg

#endif  // IMDEG_SCHEDULES_HPP_
