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

#ifndef IMDEG_DEGRADATIONS_HPP_
#define IMDEG_DEGRADATIONS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "imdeg/image.hpp"
#include "imdeg/rng.hpp"
#include "imdeg/schedules.hpp"
#include "imdeg/taxonomy.hpp"

namespace imdeg {

// One concrete degradation to apply: an operator at a severity, with the
// seed that keys its random stream.  Deterministic operators ignore the
// seed entirely.
struct DegradationSpec {
  std::string backend;
  std::string term;
  int severity = 1;        // 1 (weakest) .. 5 (strongest)
  std::uint64_t seed = 0;  // stream key; combined with chain position
};

// Implementation maturity of an operator.
enum class OperatorTier {
  kCore = 1,      // always available, covered by the self-consistency gates
  kExtended = 2,  // heavier or asset/codec-dependent
};

// Guaranteed response shape of an operator's severity axis on natural
// images, used to decide which operators the monotonicity checks cover.
enum class MonotoneDesignation {
  kNone,       // no guarantee (deliberately non-monotone or untestable)
  kNonStrict,  // mean strength must not move the wrong way
  kStrict,     // mean strength must strictly increase level over level
};

struct OperatorDescriptor {
  std::string backend;
  std::string term;
  OperatorTier tier = OperatorTier::kCore;
  bool stochastic = false;
  MonotoneDesignation monotone = MonotoneDesignation::kNone;
  bool available = true;    // false: runs would throw kUnavailableFeature
  std::string availability_note;  // human-readable gate description when not available
};

// Applies taxonomy-annotated degradation operators according to pinned
// parameter schedules.  Construction wires a taxonomy registry + schedule
// set; the default uses the data embedded at build time.
class DegradationEngine {
 public:
  DegradationEngine();  // embedded registry + schedules, assets from IMDEG_ASSETS
  DegradationEngine(Taxonomy taxonomy, ScheduleSet schedules, std::string assets_dir);

  // Applies one degradation (chain position 0).  The output has the input's
  // shape and is clamped to [0, 1].  Identical inputs give bitwise identical
  // outputs.  Throws: kNotFound (unknown operator), kArgument (severity out
  // of range), kUnavailableFeature (gated operator), kShape (empty input).
  Image apply(const Image& img, const DegradationSpec& spec) const;

  // Applies a chain left to right.  Each element's random stream is keyed by
  // (spec.seed, chain position), so a chain of two identical stochastic
  // specs draws different noise at each position.
  Image apply_chain(const Image& img, const std::vector<DegradationSpec>& chain) const;

  // Descriptors for one backend's operators in registry order, or for all
  // backends.  Gated operators are listed (with available = false) so counts
  // reflect the full published operator set.
  std::vector<OperatorDescriptor> list_operators(const std::string& backend) const;
  std::vector<OperatorDescriptor> list_all_operators() const;

  // Descriptor lookup with normalized key fallback; throws kNotFound.
  const OperatorDescriptor& descriptor(const std::string& backend, const std::string& term) const;

  // (backend, term) keys of every executable operator, for registry
  // validation.
  std::vector<std::pair<std::string, std::string>> operator_keys() const;

  const Taxonomy& taxonomy() const { return taxonomy_; }
  const ScheduleSet& schedules() const { return schedules_; }
  const std::string& assets_dir() const { return assets_dir_; }

 private:
  // Index into the static registration table (and into descriptors_, which
  // is aligned with it); throws kNotFound.
  std::size_t find_index(const std::string& backend, const std::string& term) const;

  Taxonomy taxonomy_;
  ScheduleSet schedules_;
  std::string assets_dir_;
  std::vector<OperatorDescriptor> descriptors_;
};

}  // namespace imdeg

#endif  // IMDEG_DEGRADATIONS_HPP_
