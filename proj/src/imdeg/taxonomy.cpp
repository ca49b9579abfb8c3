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

#include "imdeg/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "imdeg/embedded_data.hpp"
#include "imdeg/error.hpp"

namespace imdeg {
namespace {

constexpr Cause kAllCauses[] = {Cause::kEnvironment, Cause::kSensor, Cause::kRendering,
                                Cause::kTransfer};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<Cause> parse_cause_set(const std::string& token, int line_no) {
  std::vector<Cause> causes;
  for (const std::string& part : split(token, '/')) {
    std::optional<Cause> c = parse_cause_code(trim(part));
    if (!c) {
      throw_error(ErrorCode::kFormat, "registry line " + std::to_string(line_no) +
                                          ": unknown cause code '" + token + "'");
    }
    causes.push_back(*c);
  }
  return causes;
}

}  // namespace

const char* cause_code(Cause c) {
  switch (c) {
    case Cause::kEnvironment: return "E";
    case Cause::kSensor: return "S";
    case Cause::kRendering: return "R";
    case Cause::kTransfer: return "T";
  }
  return "?";
}

const char* effect_code(Effect e) {
  switch (e) {
    case Effect::kNoise: return "N";
    case Effect::kBlur: return "B";
    case Effect::kWeather: return "WX";
    case Effect::kCompression: return "CP";
    case Effect::kColor: return "CL";
    case Effect::kIllumination: return "IL";
    case Effect::kGeometry: return "GD";
    case Effect::kResolution: return "RZ";
    case Effect::kOcclusion: return "OC";
    case Effect::kTexture: return "TX";
    case Effect::kTemporal: return "TV";
  }
  return "?";
}

std::optional<Cause> parse_cause_code(const std::string& code) {
  if (code == "E") return Cause::kEnvironment;
  if (code == "S") return Cause::kSensor;
  if (code == "R") return Cause::kRendering;
  if (code == "T") return Cause::kTransfer;
  return std::nullopt;
}

std::optional<Effect> parse_effect_code(const std::string& code) {
  if (code == "N") return Effect::kNoise;
  if (code == "B") return Effect::kBlur;
  if (code == "WX") return Effect::kWeather;
  if (code == "CP") return Effect::kCompression;
  if (code == "CL") return Effect::kColor;
  if (code == "IL") return Effect::kIllumination;
  if (code == "GD") return Effect::kGeometry;
  if (code == "RZ") return Effect::kResolution;
  if (code == "OC") return Effect::kOcclusion;
  if (code == "TX") return Effect::kTexture;
  if (code == "TV") return Effect::kTemporal;
  return std::nullopt;
}

std::string cause_set_code(const std::vector<Cause>& causes) {
  std::string out;
  for (std::size_t i = 0; i < causes.size(); ++i) {
    if (i) out += '/';
    out += cause_code(causes[i]);
  }
  return out;
}

std::string normalize_key(const std::string& key) {
  std::string out;
  out.reserve(key.size());
  for (char ch : key) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

const std::vector<GroupInfo>& Taxonomy::groups() {
  static const std::vector<GroupInfo> kGroups = {
      {"G1", "Noise", {Cause::kSensor}, Effect::kNoise, false},
      {"G2", "Blur", {Cause::kSensor}, Effect::kBlur, false},
      {"G3", "Resolution/Sampling", {Cause::kRendering}, Effect::kResolution, false},
      {"G4", "Compression/Quantization", {Cause::kRendering}, Effect::kCompression, false},
      {"G5", "Color/White balance", {Cause::kRendering}, Effect::kColor, false},
      {"G6", "Brightness/Exposure", {Cause::kRendering}, Effect::kIllumination, false},
      {"G7", "Geometry/Spatial", {Cause::kRendering}, Effect::kGeometry, false},
      {"G8", "Weather/Medium", {Cause::kEnvironment}, Effect::kWeather, false},
      {"G9", "Occlusion/Obstruction", {Cause::kEnvironment}, Effect::kOcclusion, false},
      {"G10", "Sharpness/Contrast/Texture", {Cause::kRendering}, Effect::kTexture, false},
      // System/transfer failures have no single perceptual signature.
      {"G11", "System/Transfer/Board", {Cause::kTransfer}, std::nullopt, false},
      // Temporal artifacts can originate at any stage.
      {"G12", "Temporal/Video",
       {kAllCauses[0], kAllCauses[1], kAllCauses[2], kAllCauses[3]}, Effect::kTemporal, true},
  };
  return kGroups;
}

const GroupInfo& Taxonomy::group(const std::string& id) {
  for (const GroupInfo& g : groups()) {
    if (g.id == id) return g;
  }
  throw_error(ErrorCode::kNotFound, "unknown canonical group '" + id + "'");
}

const std::vector<TvSubtypeInfo>& Taxonomy::tv_subtypes() {
  static const std::vector<TvSubtypeInfo> kSubtypes = {
      {"tv_flicker", "Temporal flicker", {Cause::kEnvironment, Cause::kRendering}},
      {"tv_awb_osc", "AWB oscillation", {Cause::kRendering}},
      {"tv_rs_wobble", "Rolling-shutter wobble", {Cause::kSensor}},
      {"tv_af_hunting", "Autofocus hunting", {Cause::kSensor}},
      {"tv_ois_jitter", "OIS jitter", {Cause::kSensor}},
      {"tv_ghosting", "Temporal ghosting", {Cause::kRendering}},
      {"tv_stab_jitter", "Stabilization jitter", {Cause::kRendering}},
      {"tv_vfr", "Variable frame-rate artifacts", {Cause::kRendering}},
      {"tv_drop_repeat", "Frame drop/repeat", {Cause::kTransfer}},
      {"tv_desync", "Timing/AV desynchronization", {Cause::kTransfer}},
      {"tv_gop_loss", "GOP/slice loss", {Cause::kTransfer}},
      {"tv_seq_transforms", "Sequential transforms", {Cause::kRendering}},
  };
  return kSubtypes;
}

bool Taxonomy::is_tv_subtype(const std::string& key) {
  for (const TvSubtypeInfo& s : tv_subtypes()) {
    if (s.key == key) return true;
  }
  return false;
}

Taxonomy Taxonomy::from_csv(const std::string& csv_text) {
  Taxonomy tax;
  std::istringstream in(csv_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    std::vector<std::string> fields = split(row, ',');
    if (fields.size() != 6 && fields.size() != 7) {
      throw_error(ErrorCode::kFormat,
                  "registry line " + std::to_string(line_no) + ": expected 6 or 7 fields, got " +
                      std::to_string(fields.size()));
    }
    TaxonomyEntry e;
    e.backend = trim(fields[0]);
    e.term = trim(fields[1]);
    e.original_category = trim(fields[2]);
    e.group = trim(fields[3]);
    e.causes = parse_cause_set(trim(fields[4]), line_no);
    std::string effect = trim(fields[5]);
    if (effect.empty() || effect == "--") {
      e.effect = std::nullopt;
    } else {
      e.effect = parse_effect_code(effect);
      if (!e.effect) {
        throw_error(ErrorCode::kFormat, "registry line " + std::to_string(line_no) +
                                            ": unknown effect code '" + effect + "'");
      }
    }
    if (fields.size() == 7) e.tv_subtype = trim(fields[6]);
    if (e.backend.empty() || e.term.empty()) {
      throw_error(ErrorCode::kFormat,
                  "registry line " + std::to_string(line_no) + ": empty backend or term");
    }

    std::size_t idx = tax.entries_.size();
    tax.entries_.push_back(std::move(e));
    const TaxonomyEntry& stored = tax.entries_.back();
    // First occurrence wins; duplicates stay in entries_ so validation can
    // report them instead of parsing failing outright.
    tax.index_.emplace(std::make_pair(stored.backend, stored.term), idx);
    tax.norm_index_.emplace(
        std::make_pair(normalize_key(stored.backend), normalize_key(stored.term)), idx);
  }
  return tax;
}

Taxonomy Taxonomy::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::kIo, "cannot open registry file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv(buf.str());
}

const Taxonomy& Taxonomy::embedded() {
  static const Taxonomy kEmbedded = from_csv(embedded_registry_csv());
  return kEmbedded;
}

bool Taxonomy::contains(const std::string& backend, const std::string& term) const {
  if (index_.count({backend, term})) return true;
  return norm_index_.count({normalize_key(backend), normalize_key(term)}) > 0;
}

const TaxonomyEntry& Taxonomy::lookup(const std::string& backend, const std::string& term) const {
  auto it = index_.find({backend, term});
  if (it != index_.end()) return entries_[it->second];
  auto nit = norm_index_.find({normalize_key(backend), normalize_key(term)});
  if (nit != norm_index_.end()) return entries_[nit->second];
  throw_error(ErrorCode::kNotFound,
              "no taxonomy entry for backend '" + backend + "', term '" + term + "'");
}

const GroupInfo& Taxonomy::group_of(const std::string& backend, const std::string& term) const {
  return group(lookup(backend, term).group);
}

std::vector<std::string> Taxonomy::backends() const {
  std::vector<std::string> out;
  for (const TaxonomyEntry& e : entries_) {
    if (std::find(out.begin(), out.end(), e.backend) == out.end()) out.push_back(e.backend);
  }
  return out;
}

std::vector<const TaxonomyEntry*> Taxonomy::entries_for(const std::string& backend) const {
  std::vector<const TaxonomyEntry*> out;
  for (const TaxonomyEntry& e : entries_) {
    if (e.backend == backend) out.push_back(&e);
  }
  return out;
}

std::vector<std::string> validate_registry(
    const Taxonomy& taxonomy,
    const std::vector<std::pair<std::string, std::string>>& shipped_operators) {
  std::vector<std::string> violations;

  // Unique (backend, term) rows, both literally and under normalization
  // (normalized collisions would make alias lookup ambiguous).
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::pair<std::string, std::string>, std::string> seen_norm;
  for (const TaxonomyEntry& e : taxonomy.entries()) {
    if (!seen.insert({e.backend, e.term}).second) {
      violations.push_back("duplicate registry row for (" + e.backend + ", " + e.term + ")");
      continue;
    }
    auto norm = std::make_pair(normalize_key(e.backend), normalize_key(e.term));
    auto [it, inserted] = seen_norm.emplace(norm, e.term);
    if (!inserted && it->second != e.term) {
      violations.push_back("registry rows (" + e.backend + ", " + it->second + ") and (" +
                           e.backend + ", " + e.term + ") collide under normalized lookup");
    }
  }

  // Every shipped operator is annotated.
  for (const auto& [backend, term] : shipped_operators) {
    if (!taxonomy.contains(backend, term)) {
      violations.push_back("operator (" + backend + ", " + term + ") has no registry row");
    }
  }

  // Rows reference known groups; temporal-group rows carry a known subtype.
  for (const TaxonomyEntry& e : taxonomy.entries()) {
    bool group_exists = false;
    for (const GroupInfo& g : Taxonomy::groups()) {
      if (g.id == e.group) {
        group_exists = true;
        break;
      }
    }
    if (!group_exists) {
      violations.push_back("registry row (" + e.backend + ", " + e.term +
                           ") names unknown group '" + e.group + "'");
      continue;
    }
    if (e.group == "G12") {
      if (e.tv_subtype.empty()) {
        violations.push_back("registry row (" + e.backend + ", " + e.term +
                             ") is in G12 but lacks a tv subtype");
      } else if (!Taxonomy::is_tv_subtype(e.tv_subtype)) {
        violations.push_back("registry row (" + e.backend + ", " + e.term +
                             ") names unknown tv subtype '" + e.tv_subtype + "'");
      }
    }
  }
  return violations;
}

}  // namespace imdeg
