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

#ifndef IMDEG_BENCHGEN_HPP_
#define IMDEG_BENCHGEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "imdeg/degradations.hpp"

namespace imdeg {

// Default global seed when the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 12648430;

// Benchmark composition protocols.
enum class Protocol {
  kRoundRobin,       // each image gets one (operator, level), cycling through all
  kCartesian,        // every image x every operator x every level
  kChainFactorial,   // fixed operator chain, full factorial over slot severities
  kRandomChains,     // per image, a random chain across distinct groups
};

const char* protocol_name(Protocol protocol);
Protocol parse_protocol(const std::string& text);  // throws kArgument

using OperatorKey = std::pair<std::string, std::string>;  // (backend, term)

// One unit of work: degrade one source image with one (possibly multi-step)
// chain.  Seeds are already derived, so the assignment is self-contained.
struct PlanAssignment {
  std::string image_id;
  std::vector<DegradationSpec> chain;
};

struct GenerationPlan {
  Protocol protocol = Protocol::kRoundRobin;
  std::uint64_t seed = kDefaultSeed;
  std::vector<PlanAssignment> assignments;
};

// Derives the stream seed of one chain element from the run's global seed
// and the element's full coordinates.  Pure function of its inputs: the same
// coordinates always replay the same draws, regardless of scheduling.
std::uint64_t assignment_seed(std::uint64_t global_seed, const std::string& image_id,
                              const std::string& backend, const std::string& term,
                              int severity, std::size_t chain_pos);

// One (operator, level) per image: image i takes combination (i mod D*5),
// enumerating each operator's five levels before moving to the next
// operator.  Combination counts across the run differ by at most one.
GenerationPlan plan_round_robin(const std::vector<std::string>& image_ids,
                                const std::vector<OperatorKey>& operators, std::uint64_t seed);

// Every image at every operator and level: |images| * |operators| * 5
// assignments.
GenerationPlan plan_cartesian(const std::vector<std::string>& image_ids,
                              const std::vector<OperatorKey>& operators, std::uint64_t seed);

// A fixed ordered chain applied to every image at every severity
// combination: |images| * 5^len assignments.  Slot severities enumerate in
// odometer order, last slot fastest.
GenerationPlan plan_chain_factorial(const std::vector<std::string>& image_ids,
                                    const std::vector<OperatorKey>& chain_template,
                                    std::uint64_t seed);

// One random chain per image: `chain_length` distinct canonical groups drawn
// without replacement, one uniformly chosen runnable operator inside each,
// at a uniform level.  Requires chain_length <= number of groups that have
// runnable operators (kArgument otherwise).
GenerationPlan plan_random_chains(const DegradationEngine& engine,
                                  const std::vector<std::string>& image_ids, int chain_length,
                                  std::uint64_t seed);

// File stem encoding an assignment's full recipe:
// "<image_id>_<backend>_<term>_s<level>" for single steps, with a "_c<pos>"
// suffix on every step of longer chains.
std::string output_stem(const PlanAssignment& assignment);

struct ExecOptions {
  std::string input_dir;   // source images (png/jpeg), ids are file stems
  std::string output_dir;  // created if missing; receives images + manifest.jsonl
  int jobs = 0;            // 0 = hardware concurrency
  bool measure = false;    // record psnr / 1-ssim strengths per output
  std::string format = "png";  // "png" or "jpeg"
  int jpeg_quality = 95;
};

struct ExecSummary {
  std::size_t total = 0;
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::string manifest_path;
};

// Runs a plan: degrades, writes outputs, and writes a manifest
// (manifest.jsonl) whose records are sorted by output path and carry no
// machine state, so two runs of the same plan produce byte-identical
// manifests at any worker count.  A failing assignment becomes a "failed"
// manifest record instead of aborting the run.
ExecSummary execute_plan(const DegradationEngine& engine, const GenerationPlan& plan,
                         const ExecOptions& options);

// Source images of a generation run: (id, path), sorted by id.  Ids are file
// stems; duplicate stems with different extensions are kFormat.
std::vector<std::pair<std::string, std::string>> list_input_images(const std::string& dir);

}  // namespace imdeg

#endif  // IMDEG_BENCHGEN_HPP_
