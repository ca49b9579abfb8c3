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

#include "imdeg/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "imdeg/calibration.hpp"
#include "imdeg/error.hpp"

namespace imdeg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kMonotoneEps = 1e-9;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// RFC 4180: fields containing separators, quotes, or line breaks are quoted,
// with embedded quotes doubled.
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void sort_rows(std::vector<SeverityRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SeverityRow& a, const SeverityRow& b) {
    return std::tie(a.backend, a.term, a.metric) < std::tie(b.backend, b.term, b.metric);
  });
}

// Accumulates per-cell sums so several records can contribute to one mean.
struct CellAccumulator {
  std::array<double, kSeverityLevels> sum{};
  std::array<int, kSeverityLevels> count{};
};

SeverityRow row_from_accumulator(const std::string& backend, const std::string& term,
                                 const std::string& metric, const CellAccumulator& acc,
                                 std::vector<std::string>& warnings) {
  SeverityRow row;
  row.backend = backend;
  row.term = term;
  row.metric = metric;
  for (int l = 0; l < kSeverityLevels; ++l) {
    if (acc.count[l] > 0) {
      row.values[l] = acc.sum[l] / acc.count[l];
      row.present[l] = true;
    } else {
      warnings.push_back(backend + "/" + term + " (" + metric + "): no reading for level " +
                         std::to_string(l + 1));
    }
  }
  return row;
}

}  // namespace

void flag_non_monotone_rows(SeverityReport& report) {
  for (SeverityRow& row : report.rows) {
    bool complete = true;
    for (bool p : row.present) complete = complete && p;
    if (!complete) continue;
    bool higher = stronger_is_higher(parse_metric(row.metric));
    for (int l = 0; l + 1 < kSeverityLevels; ++l) {
      double step = row.values[l + 1] - row.values[l];
      if ((higher && step < -kMonotoneEps) || (!higher && step > kMonotoneEps)) {
        row.non_monotone = true;
        break;
      }
    }
  }
}

SeverityReport report_from_calibrations(const std::string& calibration_dir) {
  std::error_code ec;
  if (!fs::is_directory(calibration_dir, ec)) {
    throw_error(ErrorCode::kIo, "calibration directory does not exist: " + calibration_dir);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(calibration_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());

  SeverityReport report;
  for (const std::string& file : files) {
    try {
      CanonicalAxis axis = load_calibration(file);
      SeverityRow row;
      row.backend = axis.backend;
      row.term = axis.term;
      row.metric = axis.metric.str();
      row.values = axis.native_strengths;
      row.present.fill(true);
      report.rows.push_back(std::move(row));
    } catch (const Error& e) {
      report.warnings.push_back(std::string("skipped ") + file + ": " + e.what());
    }
  }
  if (report.rows.empty()) {
    report.warnings.push_back("no calibration documents found in " + calibration_dir);
  }
  sort_rows(report.rows);
  flag_non_monotone_rows(report);
  return report;
}

SeverityReport report_from_manifest(const std::string& manifest_path,
                                    const ExternalScores* scores) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw_error(ErrorCode::kIo, "cannot open manifest: " + manifest_path);

  SeverityReport report;
  // metric string -> (backend, term) -> accumulator
  std::map<std::string, std::map<std::pair<std::string, std::string>, CellAccumulator>> cells;
  std::size_t failed_records = 0;
  std::size_t chain_records = 0;
  std::size_t matched_scores = 0;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw_error(ErrorCode::kFormat, manifest_path + ":" + std::to_string(line_no) +
                                          ": not valid JSON: " + e.what());
    }
    try {
      std::string type = doc.at("type").get<std::string>();
      if (type == "header") {
        if (doc.at("version").get<std::string>() != "imdeg-manifest-v1") {
          throw_error(ErrorCode::kFormat, "unsupported manifest version");
        }
        header_seen = true;
        continue;
      }
      if (type != "record") continue;
      if (doc.at("status").get<std::string>() != "ok") {
        ++failed_records;
        continue;
      }
      const json& chain = doc.at("chain");
      if (chain.size() != 1) {
        ++chain_records;
        continue;
      }
      std::string backend = chain[0].at("backend").get<std::string>();
      std::string term = chain[0].at("term").get<std::string>();
      int severity = chain[0].at("severity").get<int>();
      if (severity < 1 || severity > kSeverityLevels) {
        throw_error(ErrorCode::kFormat, "record severity out of range");
      }
      auto key = std::make_pair(backend, term);
      if (doc.contains("strengths")) {
        const json& strengths = doc["strengths"];
        if (strengths.contains("psnr")) {
          CellAccumulator& acc = cells["psnr"][key];
          acc.sum[severity - 1] += strengths["psnr"].get<double>();
          acc.count[severity - 1] += 1;
        }
        if (strengths.contains("one_minus_ssim")) {
          CellAccumulator& acc = cells["1-ssim"][key];
          acc.sum[severity - 1] += strengths["one_minus_ssim"].get<double>();
          acc.count[severity - 1] += 1;
        }
      }
      if (scores != nullptr) {
        std::string output = doc.at("output").get<std::string>();
        std::string stem = output.substr(0, output.rfind('.'));
        if (scores->contains(stem)) {
          CellAccumulator& acc = cells["external:" + scores->metric_name()][key];
          acc.sum[severity - 1] += scores->lookup(stem);
          acc.count[severity - 1] += 1;
          ++matched_scores;
        }
      }
    } catch (const json::exception& e) {
      throw_error(ErrorCode::kFormat, manifest_path + ":" + std::to_string(line_no) +
                                          ": record misses a field: " + e.what());
    }
  }
  if (!header_seen) {
    throw_error(ErrorCode::kFormat, manifest_path + ": no manifest header line");
  }

  // Direct score entries "<backend>:<term>:s<level>" fill cells that have no
  // per-record readings (e.g. a metric computed offline per level).
  if (scores != nullptr) {
    for (const auto& [key, value] : scores->all()) {
      std::size_t c1 = key.find(':');
      std::size_t c2 = key.rfind(':');
      if (c1 == std::string::npos || c2 == c1) continue;
      std::string level_part = key.substr(c2 + 1);
      if (level_part.size() < 2 || level_part[0] != 's') continue;
      int level = 0;
      try {
        level = std::stoi(level_part.substr(1));
      } catch (...) {
        continue;
      }
      if (level < 1 || level > kSeverityLevels) continue;
      auto cell_key = std::make_pair(key.substr(0, c1), key.substr(c1 + 1, c2 - c1 - 1));
      CellAccumulator& acc = cells["external:" + scores->metric_name()][cell_key];
      acc.sum[level - 1] += value;
      acc.count[level - 1] += 1;
      ++matched_scores;
    }
  }

  if (failed_records > 0) {
    report.warnings.push_back(std::to_string(failed_records) +
                              " failed record(s) excluded from the table");
  }
  if (chain_records > 0) {
    report.warnings.push_back(std::to_string(chain_records) +
                              " multi-step record(s) not attributable to one operator");
  }
  if (scores != nullptr && matched_scores == 0) {
    report.warnings.push_back("score table matched no manifest record or level key");
  }
  for (const auto& [metric, by_op] : cells) {
    for (const auto& [key, acc] : by_op) {
      report.rows.push_back(
          row_from_accumulator(key.first, key.second, metric, acc, report.warnings));
    }
  }
  if (report.rows.empty()) {
    report.warnings.push_back(
        "manifest carries no measured strengths; rerun generation with measurement enabled "
        "or provide a score table");
  }
  sort_rows(report.rows);
  flag_non_monotone_rows(report);
  return report;
}

std::string SeverityReport::csv() const {
  std::ostringstream out;
  out << "backend,term,metric";
  for (int l = 1; l <= kSeverityLevels; ++l) out << ",s" << l;
  out << ",non_monotone\r\n";
  for (const SeverityRow& row : rows) {
    out << csv_escape(row.backend) << ',' << csv_escape(row.term) << ','
        << csv_escape(row.metric);
    for (int l = 0; l < kSeverityLevels; ++l) {
      out << ',';
      if (row.present[l]) out << csv_escape(format_value(row.values[l]));
    }
    out << ',' << (row.non_monotone ? "true" : "false") << "\r\n";
  }
  return out.str();
}

std::string SeverityReport::text() const {
  std::vector<std::array<std::string, kSeverityLevels + 4>> grid;
  grid.push_back({"backend", "term", "metric", "s1", "s2", "s3", "s4", "s5", "flags"});
  for (const SeverityRow& row : rows) {
    std::array<std::string, kSeverityLevels + 4> cells;
    cells[0] = row.backend;
    cells[1] = row.term;
    cells[2] = row.metric;
    for (int l = 0; l < kSeverityLevels; ++l) {
      cells[3 + l] = row.present[l] ? format_value(row.values[l]) : "-";
    }
    cells[kSeverityLevels + 3] = row.non_monotone ? "non-monotone" : "";
    grid.push_back(std::move(cells));
  }
  std::array<std::size_t, kSeverityLevels + 4> widths{};
  for (const auto& cells : grid) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      widths[c] = std::max(widths[c], cells[c].size());
    }
  }
  std::ostringstream out;
  for (const auto& cells : grid) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(widths[c] - cells[c].size(), ' ');
    }
    out << '\n';
  }
  for (const std::string& warning : warnings) out << "warning: " << warning << '\n';
  return out.str();
}

}  // namespace imdeg
