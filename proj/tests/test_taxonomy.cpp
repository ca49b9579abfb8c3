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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "imdeg/degradations.hpp"
#include "imdeg/error.hpp"

namespace {

using imdeg::Cause;
using imdeg::Effect;
using imdeg::Taxonomy;

TEST_CASE("cause and effect codes round trip") {
  CHECK(std::string(imdeg::cause_code(Cause::kEnvironment)) == "E");
  CHECK(std::string(imdeg::cause_code(Cause::kSensor)) == "S");
  CHECK(std::string(imdeg::cause_code(Cause::kRendering)) == "R");
  CHECK(std::string(imdeg::cause_code(Cause::kTransfer)) == "T");
  for (const char* code : {"E", "S", "R", "T"}) {
    auto parsed = imdeg::parse_cause_code(code);
    REQUIRE(parsed.has_value());
    CHECK(std::string(imdeg::cause_code(*parsed)) == code);
  }
  CHECK(!imdeg::parse_cause_code("X").has_value());

  for (const char* code : {"N", "B", "WX", "CP", "CL", "IL", "GD", "RZ", "OC", "TX", "TV"}) {
    auto parsed = imdeg::parse_effect_code(code);
    REQUIRE(parsed.has_value());
    CHECK(std::string(imdeg::effect_code(*parsed)) == code);
  }
  CHECK(!imdeg::parse_effect_code("ZZ").has_value());
}

TEST_CASE("cause sets format as slash-joined tokens") {
  CHECK(imdeg::cause_set_code({Cause::kSensor}) == "S");
  CHECK(imdeg::cause_set_code({Cause::kSensor, Cause::kRendering}) == "S/R");
  CHECK(imdeg::cause_set_code({Cause::kEnvironment, Cause::kRendering}) == "E/R");
}

TEST_CASE("the canonical group table has twelve groups with the right shapes") {
  const auto& groups = Taxonomy::groups();
  REQUIRE(groups.size() == 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(groups[i].id == "G" + std::to_string(i + 1));
  }

  const auto& noise = Taxonomy::group("G1");
  CHECK(noise.primary_effect == Effect::kNoise);
  CHECK(!noise.variable_cause);

  const auto& weather = Taxonomy::group("G8");
  CHECK(weather.primary_effect == Effect::kWeather);
  REQUIRE(weather.primary_causes.size() == 1);
  CHECK(weather.primary_causes[0] == Cause::kEnvironment);

  // The system/transfer group has no single phenomenological effect.
  const auto& system = Taxonomy::group("G11");
  CHECK(!system.primary_effect.has_value());
  CHECK(!system.variable_cause);

  // The temporal group can originate anywhere in the pipeline.
  const auto& temporal = Taxonomy::group("G12");
  CHECK(temporal.variable_cause);
  CHECK(temporal.primary_causes.size() == 4);
  CHECK(temporal.primary_effect == Effect::kTemporal);

  CHECK_THROWS_AS(Taxonomy::group("G13"), imdeg::Error);
}

TEST_CASE("twelve temporal subtypes are registered") {
  const auto& subtypes = Taxonomy::tv_subtypes();
  CHECK(subtypes.size() == 12);
  CHECK(Taxonomy::is_tv_subtype("tv_desync"));
  CHECK(Taxonomy::is_tv_subtype("tv_flicker"));
  CHECK(!Taxonomy::is_tv_subtype("tv_nonsense"));
  std::set<std::string> keys;
  for (const auto& s : subtypes) {
    CHECK(s.key.rfind("tv_", 0) == 0);
    CHECK(!s.name.empty());
    keys.insert(s.key);
  }
  CHECK(keys.size() == subtypes.size());
}

TEST_CASE("normalize_key forgives case and separator differences") {
  CHECK(imdeg::normalize_key("color_block") == imdeg::normalize_key("colorblock"));
  CHECK(imdeg::normalize_key("Color-Block") == imdeg::normalize_key("colorblock"));
  CHECK(imdeg::normalize_key("gaussian noise") == imdeg::normalize_key("gaussian_noise"));
  CHECK(imdeg::normalize_key("a") != imdeg::normalize_key("b"));
}

TEST_CASE("the embedded registry has the expected backends and row counts") {
  const Taxonomy& tax = Taxonomy::embedded();
  auto backends = tax.backends();
  REQUIRE(backends.size() == 3);
  CHECK(std::find(backends.begin(), backends.end(), "hendrycks") != backends.end());
  CHECK(std::find(backends.begin(), backends.end(), "arniqa") != backends.end());
  CHECK(std::find(backends.begin(), backends.end(), "liu") != backends.end());

  CHECK(tax.entries_for("hendrycks").size() == 19);
  CHECK(tax.entries_for("arniqa").size() == 24);
  // liu has 16 executable operators plus one taxonomy-only temporal row.
  CHECK(tax.entries_for("liu").size() == 17);
  CHECK(tax.entries().size() == 60);
}

TEST_CASE("registry annotations match the published mapping on spot checks") {
  const Taxonomy& tax = Taxonomy::embedded();

  const auto& spatter = tax.lookup("hendrycks", "spatter");
  CHECK(spatter.group == "G8");
  CHECK(spatter.causes == std::vector<Cause>{Cause::kEnvironment});
  CHECK(spatter.effect == Effect::kWeather);
  CHECK(spatter.original_category == "Validation");

  const auto& contrast = tax.lookup("hendrycks", "contrast");
  CHECK(contrast.group == "G10");
  CHECK(contrast.effect == Effect::kTexture);

  const auto& jpeg = tax.lookup("arniqa", "jpeg");
  CHECK(jpeg.group == "G4");
  CHECK(jpeg.effect == Effect::kCompression);

  const auto& colorblock = tax.lookup("arniqa", "colorblock");
  CHECK(colorblock.group == "G9");
  CHECK(colorblock.effect == Effect::kOcclusion);

  const auto& whitenoisecc = tax.lookup("arniqa", "whitenoisecc");
  CHECK(imdeg::cause_set_code(whitenoisecc.causes) == "S/R");

  const auto& memex = tax.lookup("liu", "memory_exceptions");
  CHECK(memex.group == "G11");
  CHECK(memex.effect == Effect::kTemporal);
  CHECK(memex.tv_subtype.empty());

  const auto& sync = tax.lookup("liu", "synchronization_exceptions");
  CHECK(sync.group == "G12");
  CHECK(sync.tv_subtype == "tv_desync");

  const auto& lensobs = tax.lookup("liu", "lens_obstruction");
  CHECK(lensobs.group == "G9");
  CHECK(lensobs.causes == std::vector<Cause>{Cause::kSensor});
}

TEST_CASE("lookup falls back to normalized keys and reports unknown ones") {
  const Taxonomy& tax = Taxonomy::embedded();
  CHECK(tax.lookup("arniqa", "color_block").term == "colorblock");
  CHECK(tax.lookup("hendrycks", "Gaussian-Noise").term == "gaussian_noise");
  CHECK(tax.contains("liu", "fog"));
  CHECK(!tax.contains("liu", "nonexistent"));
  try {
    tax.lookup("liu", "nonexistent");
    CHECK(false);
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == imdeg::ErrorCode::kNotFound);
    CHECK(std::string(e.what()).find("nonexistent") != std::string::npos);
  }
}

TEST_CASE("group_of joins a registry row with the canonical group table") {
  const Taxonomy& tax = Taxonomy::embedded();
  CHECK(tax.group_of("hendrycks", "fog").id == "G8");
  CHECK(tax.group_of("hendrycks", "fog").name == Taxonomy::group("G8").name);
}

TEST_CASE("the embedded registry validates cleanly against the shipped operators") {
  imdeg::DegradationEngine engine;
  auto violations = imdeg::validate_registry(Taxonomy::embedded(), engine.operator_keys());
  for (const auto& v : violations) {
    CAPTURE(v);
  }
  CHECK(violations.empty());
}

TEST_CASE("validation flags duplicate rows") {
  Taxonomy tax = Taxonomy::from_csv(
      "a,x,Cat,G1,S,N\n"
      "a,x,Cat,G1,S,N\n");
  auto violations = imdeg::validate_registry(tax, {{"a", "x"}});
  REQUIRE(!violations.empty());
  bool mentions_duplicate = false;
  for (const auto& v : violations) {
    if (v.find("duplicate") != std::string::npos) mentions_duplicate = true;
  }
  CHECK(mentions_duplicate);
}

TEST_CASE("validation flags shipped operators without a registry row") {
  Taxonomy tax = Taxonomy::from_csv("a,x,Cat,G1,S,N\n");
  auto violations = imdeg::validate_registry(tax, {{"a", "x"}, {"a", "y"}});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("(a, y)") != std::string::npos);
}

TEST_CASE("validation flags rows naming an unknown group") {
  Taxonomy tax = Taxonomy::from_csv("a,x,Cat,G99,S,N\n");
  auto violations = imdeg::validate_registry(tax, {{"a", "x"}});
  REQUIRE(!violations.empty());
  CHECK(violations[0].find("G99") != std::string::npos);
}

TEST_CASE("validation flags temporal-group rows without a subtype") {
  Taxonomy tax = Taxonomy::from_csv("a,x,Cat,G12,T,TV\n");
  auto violations = imdeg::validate_registry(tax, {{"a", "x"}});
  REQUIRE(!violations.empty());
  bool mentions_subtype = false;
  for (const auto& v : violations) {
    if (v.find("subtype") != std::string::npos) mentions_subtype = true;
  }
  CHECK(mentions_subtype);
}

TEST_CASE("csv parsing rejects malformed rows") {
  CHECK_THROWS_AS(Taxonomy::from_csv("a,x\n"), imdeg::Error);                 // too few fields
  CHECK_THROWS_AS(Taxonomy::from_csv("a,x,Cat,G1,Q,N\n"), imdeg::Error);      // bad cause
  CHECK_THROWS_AS(Taxonomy::from_csv("a,x,Cat,G1,S,QQ\n"), imdeg::Error);     // bad effect
  try {
    Taxonomy::from_csv("a,x,Cat,G1,Q,N\n");
  } catch (const imdeg::Error& e) {
    CHECK(e.code() == imdeg::ErrorCode::kFormat);
  }
}

TEST_CASE("temporal rows may omit an effect by annotating '--'") {
  // System-damage rows keep the TV effect token in the registry; a row is
  // also allowed to leave the effect blank with '--'.
  Taxonomy tax = Taxonomy::from_csv("a,x,Cat,G11,T,--\n");
  CHECK(!tax.lookup("a", "x").effect.has_value());
}

}  // namespace
