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

#ifndef IMDEG_REPORT_HPP_
#define IMDEG_REPORT_HPP_

#include <array>
#include <string>
#include <vector>

#include "imdeg/metrics.hpp"
#include "imdeg/schedules.hpp"

namespace imdeg {

// Mean strength of one operator under one metric, per severity level.
struct SeverityRow {
  std::string backend;
  std::string term;
  std::string metric;  // metric identifier string ("psnr", "1-ssim", "external:<n>")
  std::array<double, kSeverityLevels> values{};
  std::array<bool, kSeverityLevels> present{};
  bool non_monotone = false;  // strength moved against the metric's orientation
};

struct SeverityReport {
  std::vector<SeverityRow> rows;        // sorted by (backend, term, metric)
  std::vector<std::string> warnings;    // missing cells, unmatched scores, ...

  std::string csv() const;   // RFC 4180, header row included
  std::string text() const;  // column-aligned table with flag markers
};

// Builds the severity table from every calibration document
// (<backend>_<term>_<metric>.json) found in a directory.
SeverityReport report_from_calibrations(const std::string& calibration_dir);

// Builds the severity table from a generation manifest with measured
// strengths, averaging per (backend, term, severity) over the single-step
// records.  When a score table is given, its per-record entries (keyed by
// output stem) and its direct "<backend>:<term>:s<level>" entries contribute
// an additional external-metric row per operator.
SeverityReport report_from_manifest(const std::string& manifest_path,
                                    const ExternalScores* scores);

// Marks rows whose five level means move against the metric's orientation
// anywhere along the axis (tolerance 1e-9).  Rows with missing cells are
// never flagged, only warned about.
void flag_non_monotone_rows(SeverityReport& report);

}  // namespace imdeg

#endif  // IMDEG_REPORT_HPP_
