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

#ifndef IMDEG_TAXONOMY_HPP_
#define IMDEG_TAXONOMY_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace imdeg {

// Causal source stage of a degradation: where in the imaging pipeline the
// corruption originates.
enum class Cause {
  kEnvironment,     // E: scene/medium, outside the camera
  kSensor,          // S: optics and sensor
  kRendering,       // R: ISP, rendering, codec
  kTransfer,        // T: system, board, transfer path
};

// Phenomenological effect: how the corruption manifests in the image.
enum class Effect {
  kNoise,         // N
  kBlur,          // B
  kWeather,       // WX
  kCompression,   // CP
  kColor,         // CL
  kIllumination,  // IL
  kGeometry,      // GD
  kResolution,    // RZ
  kOcclusion,     // OC
  kTexture,       // TX  (sharpness/contrast/texture)
  kTemporal,      // TV
};

const char* cause_code(Cause c);
const char* effect_code(Effect e);
std::optional<Cause> parse_cause_code(const std::string& code);
std::optional<Effect> parse_effect_code(const std::string& code);

// Formats a cause set as its registry token, e.g. "S" or "S/R".
std::string cause_set_code(const std::vector<Cause>& causes);

// One of the twelve canonical degradation groups.
struct GroupInfo {
  std::string id;                     // "G1".."G12"
  std::string name;                   // "Noise", "Blur", ...
  std::vector<Cause> primary_causes;  // all four for the variable-cause group
  std::optional<Effect> primary_effect;  // empty for the system/transfer group
  bool variable_cause = false;
};

// Temporal subtype available for entries in the temporal/video group.
struct TvSubtypeInfo {
  std::string key;   // "tv_flicker", ...
  std::string name;  // human-readable
  std::vector<Cause> default_sources;
};

// One registry row: the taxonomy annotation of a (backend, term) pair.
struct TaxonomyEntry {
  std::string backend;
  std::string term;
  std::string original_category;  // category in the source benchmark
  std::string group;              // canonical group id
  std::vector<Cause> causes;      // one entry, or several for mixed-source rows
  std::optional<Effect> effect;
  std::string tv_subtype;         // empty unless annotated
};

// Normalizes a backend/term key for tolerant lookup: lowercase with '-', '_'
// and ' ' stripped, so "color_block" and "colorblock" address the same entry.
std::string normalize_key(const std::string& key);

class Taxonomy {
 public:
  // Parses registry rows from CSV text (see data file header for the format).
  static Taxonomy from_csv(const std::string& csv_text);
  static Taxonomy from_file(const std::string& path);
  // The registry compiled into the library.
  static const Taxonomy& embedded();

  // Exact (backend, term) lookup, falling back to normalized comparison.
  // Throws kNotFound with a message naming the unknown key.
  const TaxonomyEntry& lookup(const std::string& backend, const std::string& term) const;
  bool contains(const std::string& backend, const std::string& term) const;

  // Canonical group of an annotated operator.
  const GroupInfo& group_of(const std::string& backend, const std::string& term) const;

  const std::vector<TaxonomyEntry>& entries() const { return entries_; }
  std::vector<std::string> backends() const;
  std::vector<const TaxonomyEntry*> entries_for(const std::string& backend) const;

  static const std::vector<GroupInfo>& groups();
  static const GroupInfo& group(const std::string& id);  // throws kNotFound
  static const std::vector<TvSubtypeInfo>& tv_subtypes();
  static bool is_tv_subtype(const std::string& key);

 private:
  std::vector<TaxonomyEntry> entries_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;       // exact keys
  std::map<std::pair<std::string, std::string>, std::size_t> norm_index_;  // normalized keys
};

// Structural checks on a registry against the set of shipped operator keys:
//  - (backend, term) rows are unique,
//  - every shipped operator has a row,
//  - every row names an existing canonical group,
//  - rows in the temporal/video group carry a known tv subtype.
// Returns human-readable violations; empty means the registry is sound.
std::vector<std::string> validate_registry(
    const Taxonomy& taxonomy,
    const std::vector<std::pair<std::string, std::string>>& shipped_operators);

}  // namespace imdeg

#endif  // IMDEG_TAXONOMY_HPP_
